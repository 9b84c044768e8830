#include "shimura/qexpansion.hpp"

#include <charconv>
#include <regex>
#include <sstream>

namespace shimura {

Ring ring_of(const Coeff& c) { return static_cast<Ring>(c.index()); }

bool is_zero(const Coeff& c) {
    return std::visit(
        [](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Symbolic>)
                return v.c[0] == 0 && v.c[1] == 0 && v.c[2] == 0;
            else
                return v == 0;
        },
        c);
}

Coeff add(const Coeff& a, const Coeff& b) {
    if (a.index() != b.index()) throw RingMismatch("coefficients from different rings");
    switch (ring_of(a)) {
        case Ring::rational: return Coeff(mpq_class(std::get<mpq_class>(a) + std::get<mpq_class>(b)));
        case Ring::real: return Coeff(std::get<double>(a) + std::get<double>(b));
        case Ring::symbolic: return Coeff(std::get<Symbolic>(a) + std::get<Symbolic>(b));
    }
    return a;
}

Coeff scale(const Coeff& a, const mpq_class& s) {
    switch (ring_of(a)) {
        case Ring::rational: return Coeff(mpq_class(std::get<mpq_class>(a) * s));
        case Ring::real: return Coeff(std::get<double>(a) * s.get_d());
        case Ring::symbolic: return Coeff(std::get<Symbolic>(a) * s.get_d());
    }
    return a;
}

std::string format_double(double x) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

std::string format_coeff(const Coeff& c) {
    switch (ring_of(c)) {
        case Ring::rational: return to_string(std::get<mpq_class>(c));
        case Ring::real: return format_double(std::get<double>(c));
        case Ring::symbolic: {
            const auto& s = std::get<Symbolic>(c).c;
            return format_double(s[0]) + " + " + format_double(s[1]) + "*omega2 + " + format_double(s[2]) + "*degomega";
        }
    }
    return {};
}

namespace {

double parse_double(const std::string& s) {
    double v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw DomainError("bad number: " + s);
    return v;
}

}  // namespace

Coeff parse_coeff(Ring ring, const std::string& s) {
    switch (ring) {
        case Ring::rational: return Coeff(parse_rational(s));
        case Ring::real: return Coeff(parse_double(s));
        case Ring::symbolic: {
            static const std::regex re(R"(^\s*(\S+)\s*\+\s*(\S+)\*omega2\s*\+\s*(\S+)\*degomega\s*$)");
            std::smatch m;
            if (!std::regex_match(s, m, re)) throw DomainError("bad symbolic coefficient: " + s);
            return Coeff(Symbolic{{parse_double(m[1]), parse_double(m[2]), parse_double(m[3])}});
        }
    }
    return {};
}

QExpansion::QExpansion(Ring ring, i64 lo, i64 hi) : ring_(ring), lo_(lo), hi_(hi) {
    if (lo > hi) throw DomainError("empty window");
}

Coeff QExpansion::zero() const {
    switch (ring_) {
        case Ring::rational: return Coeff(mpq_class(0));
        case Ring::real: return Coeff(0.0);
        case Ring::symbolic: return Coeff(Symbolic{});
    }
    return {};
}

void QExpansion::set(i64 n, const Coeff& c) {
    if (!in_window(n)) throw WindowExceeded("exponent " + std::to_string(n) + " outside the window");
    if (ring_of(c) != ring_) throw RingMismatch("coefficient ring differs from the expansion");
    if (is_zero(c))
        terms_.erase(n);
    else
        terms_[n] = c;
}

Coeff QExpansion::get(i64 n) const {
    if (!in_window(n)) throw WindowExceeded("exponent " + std::to_string(n) + " outside the window");
    auto it = terms_.find(n);
    return it == terms_.end() ? zero() : it->second;
}

QExpansion QExpansion::operator+(const QExpansion& o) const {
    if (o.ring_ != ring_) throw RingMismatch("expansions from different rings");
    QExpansion r(ring_, std::min(lo_, o.lo_), std::max(hi_, o.hi_));
    r.terms_ = terms_;
    for (const auto& [n, c] : o.terms_) r.set(n, add(r.get(n), c));
    return r;
}

QExpansion QExpansion::scaled(const mpq_class& s) const {
    QExpansion r(ring_, lo_, hi_);
    for (const auto& [n, c] : terms_) r.set(n, scale(c, s));
    return r;
}

bool QExpansion::operator==(const QExpansion& o) const {
    return ring_ == o.ring_ && lo_ == o.lo_ && hi_ == o.hi_ && terms_ == o.terms_;
}

std::string QExpansion::to_tsv() const {
    std::ostringstream s;
    for (const auto& [n, c] : terms_) s << n << '\t' << format_coeff(c) << '\n';
    return s.str();
}

QExpansion QExpansion::from_tsv(Ring ring, i64 lo, i64 hi, const std::string& text) {
    QExpansion q(ring, lo, hi);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw DomainError("missing tab in record: " + line);
        q.set(std::stoll(line.substr(0, tab)), parse_coeff(ring, line.substr(tab + 1)));
    }
    return q;
}

}  // namespace shimura

#include "shimura/arith.hpp"

#include <algorithm>
#include <cstdlib>

namespace shimura {

i64 gcd64(i64 a, i64 b) {
    a = std::llabs(a);
    b = std::llabs(b);
    while (b) {
        i64 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

i64 mod_pos(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

std::vector<std::pair<i64, int>> factor(i64 n) {
    std::vector<std::pair<i64, int>> out;
    n = std::llabs(n);
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_squarefree(i64 n) {
    if (n == 0) return false;
    for (auto& [p, e] : factor(n))
        if (e > 1) return false;
    return true;
}

std::vector<i64> divisors(i64 n) {
    std::vector<i64> ds{1};
    for (auto& [p, e] : factor(n)) {
        size_t cur = ds.size();
        i64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < cur; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::vector<i64> prime_divisors(i64 n) {
    std::vector<i64> ps;
    for (auto& [p, e] : factor(n)) ps.push_back(p);
    return ps;
}

int kronecker(i64 a, i64 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int res = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) res = -res;
    }
    while (n % 2 == 0) {
        n /= 2;
        if (a % 2 == 0) return 0;
        i64 r = mod_pos(a, 8);
        if (r == 3 || r == 5) res = -res;
    }
    a = mod_pos(a, n);
    while (a) {
        while (a % 2 == 0) {
            a /= 2;
            i64 r = n % 8;
            if (r == 3 || r == 5) res = -res;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) res = -res;
        a %= n;
    }
    return n == 1 ? res : 0;
}

int valuation(const mpz_class& x, i64 p) {
    if (x == 0) throw DomainError("valuation of zero");
    mpz_class y = x;
    int v = 0;
    while (mpz_divisible_ui_p(y.get_mpz_t(), static_cast<unsigned long>(p))) {
        y /= p;
        ++v;
    }
    return v;
}

int valuation(const mpq_class& x, i64 p) {
    return valuation(mpz_class(x.get_num()), p) - valuation(mpz_class(x.get_den()), p);
}

static int legendre_mpz(const mpz_class& u, i64 p) {
    mpz_class r = u % p;
    if (r < 0) r += p;
    return kronecker(r.get_si(), p);
}

int hilbert_symbol(const mpz_class& a, const mpz_class& b, i64 p) {
    if (a == 0 || b == 0) throw DomainError("hilbert symbol of zero");
    if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
    int al = valuation(a, p), be = valuation(b, p);
    mpz_class u = a, v = b;
    for (int k = 0; k < al; ++k) u /= p;
    for (int k = 0; k < be; ++k) v /= p;
    if (p == 2) {
        auto eps = [](const mpz_class& x) {
            mpz_class r = x % 4;
            if (r < 0) r += 4;
            return r == 3 ? 1 : 0;
        };
        auto omega = [](const mpz_class& x) {
            mpz_class r = x % 8;
            if (r < 0) r += 8;
            return (r == 3 || r == 5) ? 1 : 0;
        };
        int e = eps(u) * eps(v) + al * omega(v) + be * omega(u);
        return (e % 2) ? -1 : 1;
    }
    int s = ((al * be) % 2 && (p % 4 == 3)) ? -1 : 1;
    if (be % 2) s *= legendre_mpz(u, p);
    if (al % 2) s *= legendre_mpz(v, p);
    return s;
}

bool is_integer(const mpq_class& q) { return q.get_den() == 1; }

std::string to_string(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class parse_rational(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw DomainError("bad rational: " + s);
    q.canonicalize();
    return q;
}

}  // namespace shimura

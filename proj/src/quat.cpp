#include "shimura/quat.hpp"

#include <algorithm>
#include <sstream>

namespace shimura {

Quat Quat::operator+(const Quat& o) const { return Quat(c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2], c[3] + o.c[3]); }
Quat Quat::operator-(const Quat& o) const { return Quat(c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2], c[3] - o.c[3]); }
Quat Quat::operator-() const { return Quat(-c[0], -c[1], -c[2], -c[3]); }
Quat Quat::operator*(const mpq_class& s) const { return Quat(c[0] * s, c[1] * s, c[2] * s, c[3] * s); }

std::string Quat::str() const {
    std::ostringstream os;
    os << "[" << to_string(c[0]) << "," << to_string(c[1]) << "," << to_string(c[2]) << "," << to_string(c[3]) << "]";
    return os.str();
}

static mpz_class square_class(const mpq_class& q) {
    // squarefree integer in the square class of q
    mpz_class n = q.get_num() * q.get_den();
    mpz_class out = n < 0 ? -1 : 1;
    n = abs(n);
    for (auto& [p, e] : factor(n.get_si()))
        if (e % 2) out *= p;
    return out;
}

QuatAlgebra::QuatAlgebra(mpq_class a_, mpq_class b_) : a(std::move(a_)), b(std::move(b_)) {
    if (a == 0 || b == 0) throw DomainError("algebra constants must be nonzero");
    mpz_class sa = square_class(a), sb = square_class(b);
    std::vector<i64> primes{2};
    for (i64 p : prime_divisors(mpz_class(sa * sb).get_si()))
        if (p != 2) primes.push_back(p);
    for (i64 p : primes)
        if (hilbert_symbol(sa, sb, p) == -1) ramified_primes.push_back(p);
    std::sort(ramified_primes.begin(), ramified_primes.end());
    for (i64 p : ramified_primes) d_b *= p;
}

QuatAlgebra make_algebra(const mpq_class& a, const mpq_class& b) {
    QuatAlgebra A(a, b);
    if (!(a > 0 || b > 0)) throw DomainError("algebra must be indefinite");
    if (A.ramified_primes.size() % 2) throw DomainError("odd ramification set");
    if (!A.ramified_primes.empty() && A.ramified_primes.front() == 2) throw DomainError("algebra ramified at 2");
    return A;
}

Quat QuatAlgebra::mul(const Quat& x, const Quat& y) const {
    const auto& p = x.c;
    const auto& q = y.c;
    mpq_class ab = a * b;
    return Quat(p[0] * q[0] + a * p[1] * q[1] + b * p[2] * q[2] - ab * p[3] * q[3],
                p[0] * q[1] + p[1] * q[0] - b * p[2] * q[3] + b * p[3] * q[2],
                p[0] * q[2] + p[2] * q[0] + a * p[1] * q[3] - a * p[3] * q[1],
                p[0] * q[3] + p[3] * q[0] + p[1] * q[2] - p[2] * q[1]);
}

mpq_class QuatAlgebra::nrd(const Quat& x) const {
    const auto& p = x.c;
    return p[0] * p[0] - a * p[1] * p[1] - b * p[2] * p[2] + a * b * p[3] * p[3];
}

mpq_class QuatAlgebra::nrd_bilinear(const Quat& x, const Quat& y) const {
    const auto& p = x.c;
    const auto& q = y.c;
    return p[0] * q[0] - a * p[1] * q[1] - b * p[2] * q[2] + a * b * p[3] * q[3];
}

Quat QuatAlgebra::inv(const Quat& x) const {
    mpq_class n = nrd(x);
    if (n == 0) throw DivisionByZero("element has zero reduced norm");
    return conj(x) * (1 / n);
}

Quat OrderLattice::from_coords(const std::vector<i64>& v) const {
    Quat x;
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t k = 0; k < 4; ++k) x.c[k] += basis[i][k] * v[i];
    return x;
}

OrderLattice lattice_from_generators(const std::vector<Quat>& gens) {
    QMat rows;
    for (auto& g : gens) rows.push_back(g.vec());
    OrderLattice L;
    L.basis = hnf(rows);
    return L;
}

bool membership(const Quat& x, const OrderLattice& L) {
    auto c = L.coords(x);
    if (!c) return false;
    for (auto& v : *c)
        if (!is_integer(v)) return false;
    return true;
}

bool p_adic_membership(const Quat& x, const OrderLattice& L, i64 p) {
    auto c = L.coords(x);
    if (!c) return false;
    for (auto& v : *c)
        if (mpz_divisible_ui_p(v.get_den_mpz_t(), static_cast<unsigned long>(p))) return false;
    return true;
}

static bool integral_traces(const QuatAlgebra& A, const OrderLattice& L) {
    for (size_t i = 0; i < L.basis.size(); ++i) {
        Quat ei = L.elem(i);
        if (!is_integer(A.nrd(ei))) return false;
        for (size_t j = 0; j < L.basis.size(); ++j)
            if (!is_integer(A.trd(A.mul(ei, L.elem(j))))) return false;
    }
    return true;
}

bool check_order(const QuatAlgebra& A, OrderLattice& L) {
    L.is_order = false;
    if (L.basis.size() != 4 || !membership(Quat::scalar(1), L) || !integral_traces(A, L)) return false;
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j)
            if (!membership(A.mul(L.elem(i), L.elem(j)), L)) return false;
    L.is_order = true;
    return true;
}

OrderLattice ring_closure(const QuatAlgebra& A, const std::vector<Quat>& gens) {
    std::vector<Quat> g = gens;
    g.push_back(Quat::scalar(1));
    OrderLattice L = lattice_from_generators(g);
    for (int iter = 0; iter < 64; ++iter) {
        if (!integral_traces(A, L)) throw NotAnOrder("closure has non-integral elements");
        size_t n = L.basis.size();
        std::vector<Quat> more;
        for (size_t i = 0; i < n; ++i) more.push_back(L.elem(i));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) more.push_back(A.mul(L.elem(i), L.elem(j)));
        OrderLattice next = lattice_from_generators(more);
        if (next.basis == L.basis) {
            if (n != 4) throw NotAnOrder("generators do not span a full-rank lattice");
            L.is_order = true;
            return L;
        }
        L = next;
    }
    throw NotAnOrder("closure did not stabilize");
}

mpz_class reduced_discriminant(const QuatAlgebra& A, const OrderLattice& L) {
    if (!L.is_order) throw NotAnOrder("lattice is not an order");
    QMat t(4, QVec(4));
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) t[i][j] = A.trd(A.mul(L.elem(i), L.elem(j)));
    mpq_class d = abs(det(t));
    if (!is_integer(d)) throw NotAnOrder("non-integral discriminant");
    mpz_class r = sqrt(d.get_num());
    if (r * r != d.get_num()) throw NotAnOrder("discriminant is not a square");
    return r;
}

OrderLattice seed_order(const QuatAlgebra& A) {
    mpq_class da = A.a.get_den(), db = A.b.get_den();
    Quat i(0, da, 0, 0), j(0, 0, db, 0);
    return ring_closure(A, {i, j});
}

OrderLattice maximal_order(const QuatAlgebra& A) {
    OrderLattice L = seed_order(A);
    for (;;) {
        mpz_class disc = reduced_discriminant(A, L);
        if (disc == A.d_b) return L;
        mpz_class excess = disc / A.d_b;
        bool grown = false;
        for (i64 p : prime_divisors(excess.get_si())) {
            for (i64 code = 1; code < p * p * p * p && !grown; ++code) {
                Quat x;
                i64 r = code;
                for (size_t k = 0; k < 4; ++k) {
                    x = x + L.elem(k) * mpq_class(r % p, p);
                    r /= p;
                }
                if (!is_integer(A.trd(x)) || !is_integer(A.nrd(x))) continue;
                std::vector<Quat> gens{x};
                for (size_t k = 0; k < 4; ++k) gens.push_back(L.elem(k));
                try {
                    L = ring_closure(A, gens);
                    grown = true;
                } catch (const NotAnOrder&) {
                }
            }
            if (grown) break;
        }
        if (!grown) throw NotAnOrder("saturation stalled");
    }
}

QMat nrd_gram(const QuatAlgebra& A, const OrderLattice& L) {
    size_t n = L.basis.size();
    QMat g(n, QVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) g[i][j] = A.nrd_bilinear(L.elem(i), L.elem(j));
    return g;
}

OrderLattice trace_zero_sublattice(const OrderLattice& L) {
    mpz_class den = common_denominator(L.basis);
    ZMat rows;
    for (auto& r : L.basis) rows.push_back({mpz_class(r[0] * den)});
    ZMat ker = integer_kernel(rows);
    QMat gens;
    for (auto& k : ker) {
        QVec v(4, 0);
        for (size_t i = 0; i < L.basis.size(); ++i)
            for (size_t c = 0; c < 4; ++c) v[c] += L.basis[i][c] * mpq_class(k[i]);
        gens.push_back(v);
    }
    OrderLattice T;
    T.basis = hnf(gens);
    return T;
}

}  // namespace shimura

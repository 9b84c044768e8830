#include "shimura/quadfield.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <cmath>
#include <numbers>

#include "shimura/linalg.hpp"

namespace shimura {

QuadField::QuadField(i64 d) : delta(d), disc(4 * d) {
    if (d >= 0) throw DomainError("delta must be negative");
    if (d % 2 != 0) throw DomainError("delta must be even");
    if (!is_squarefree(d)) throw DomainError("delta must be squarefree");
    class_number = static_cast<int>(reduced_forms(disc).size());
}

bool QuadField::contains(const IdealRep& I, const mpq_class& x, const mpq_class& y) const {
    mpq_class n2 = y / I.scale;
    if (!is_integer(n2)) return false;
    mpq_class n1 = (x / I.scale - n2 * I.b) / I.a;
    return is_integer(n1);
}

std::vector<std::array<i64, 3>> reduced_forms(i64 disc) {
    std::vector<std::array<i64, 3>> out;
    i64 ad = -disc;
    for (i64 a = 1; 3 * a * a <= ad; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            i64 num = b * b - disc;
            if (num % (4 * a)) continue;
            i64 c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            if (gcd64(gcd64(a, b), c) != 1) continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

std::vector<IdealRep> class_group_reps(const QuadField& K) {
    std::vector<IdealRep> reps;
    for (auto& f : reduced_forms(K.disc)) {
        IdealRep I;
        I.a = f[0];
        I.b = mod_pos(-f[1] / 2, f[0]);
        reps.push_back(I);
    }
    return reps;
}

IdealRep ideal_multiply(const QuadField& K, const IdealRep& x, const IdealRep& y) {
    // generators as (sqrt-delta coefficient, rational part)
    auto gens = [](const IdealRep& I) {
        return std::array<std::pair<mpz_class, mpz_class>, 2>{
            std::pair<mpz_class, mpz_class>{0, I.a}, std::pair<mpz_class, mpz_class>{1, I.b}};
    };
    ZMat rows;
    for (auto& [q1, p1] : gens(x))
        for (auto& [q2, p2] : gens(y)) rows.push_back({p1 * q2 + p2 * q1, p1 * p2 + q1 * q2 * K.delta});
    ZMat h = hnf(rows);
    if (h.size() != 2) throw DomainError("degenerate ideal product");
    mpz_class c = h[0][0], bp = h[0][1], A = h[1][1];
    if (A % c != 0 || bp % c != 0) throw DomainError("product is not an ideal lattice");
    IdealRep r;
    r.a = mpz_class(A / c).get_si();
    r.b = mod_pos(mpz_class(bp / c).get_si(), r.a);
    r.scale = x.scale * y.scale * mpq_class(c);
    return r;
}

bool ideal_equal(const IdealRep& x, const IdealRep& y) {
    return x.a == y.a && mod_pos(x.b, x.a) == mod_pos(y.b, y.a) && x.scale == y.scale;
}

static bool stable(i64 a, i64 b, i64 d, i64 delta) {
    // lattice span{(a,0),(b,d)} in coordinates (rational, sqrt-delta); test sqrt-delta * generators
    auto in = [&](i64 x, i64 y) {
        if (y % d) return false;
        return (x - (y / d) * b) % a == 0;
    };
    return in(0, a) && in(d * delta, b);
}

i64 rho(const QuadField& K, i64 n) {
    if (n < 1) return 0;
    std::vector<std::pair<i64, i64>> shapes;
    for (i64 a : divisors(n)) shapes.emplace_back(a, n / a);
    i64 count = 0;
#pragma omp parallel for reduction(+ : count) schedule(dynamic)
    for (size_t s = 0; s < shapes.size(); ++s) {
        auto [a, d] = shapes[s];
        for (i64 b = 0; b < a; ++b)
            if (stable(a, b, d, K.delta)) ++count;
    }
    return count;
}

i64 rho_serial(const QuadField& K, i64 n) {
    if (n < 1) return 0;
    i64 count = 0;
    for (i64 a : divisors(n)) {
        i64 d = n / a;
        for (i64 b = 0; b < a; ++b)
            if (stable(a, b, d, K.delta)) ++count;
    }
    return count;
}

int chi_k(const QuadField& K, i64 a) { return kronecker(K.disc, a); }

i64 rho_divisor_sum(const QuadField& K, i64 n) {
    i64 s = 0;
    for (i64 a : divisors(n)) s += chi_k(K, a);
    return s;
}

static void fill_gauss(CharData& C) {
    const i64 M = C.modulus;
    C.gauss_table.assign(M, 0);
    for (i64 a = 0; a < M; ++a) {
        long double re = 0, im = 0;
        for (i64 h = 0; h < M; ++h) {
            int c = C.chi_prime_table[h];
            if (!c) continue;
            long double ang = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>((a * h) % M) / M;
            re += c * std::cos(ang);
            im += c * std::sin(ang);
        }
        C.gauss_table[a] = cplx(static_cast<double>(re), static_cast<double>(im));
    }
}

CharData make_char_data(const QuadField& K, i64 d_b) {
    CharData C;
    C.modulus = 4 * d_b * std::llabs(K.delta);
    C.chi_k_table.resize(C.modulus);
    C.chi_prime_table.resize(C.modulus);
    for (i64 h = 0; h < C.modulus; ++h) {
        C.chi_k_table[h] = chi_k(K, h);
        C.chi_prime_table[h] = gcd64(h, C.modulus) > 1 ? 0 : C.chi_k_table[h];
    }
    fill_gauss(C);
    return C;
}

CharData make_char_data(std::vector<int> table) {
    CharData C;
    C.modulus = static_cast<i64>(table.size());
    C.chi_k_table = table;
    C.chi_prime_table = std::move(table);
    fill_gauss(C);
    return C;
}

int chi_prime(const CharData& C, i64 a) { return C.chi_prime_table[mod_pos(a, C.modulus)]; }

cplx gauss_sum(const CharData& C, i64 a) { return C.gauss_table[mod_pos(a, C.modulus)]; }

double stieltjes1(double a) {
    // Euler-Maclaurin for sum log(k+a)/(k+a) regularized by log^2/2
    using ld = long double;
    const int n = 40;
    ld s = 0;
    for (int k = 0; k < n; ++k) {
        ld x = k + static_cast<ld>(a);
        s += std::log(x) / x;
    }
    ld x = n + static_cast<ld>(a);
    ld lx = std::log(x);
    s += lx / (2 * x) - lx * lx / 2;
    // derivative f^(m)(x) = (-1)^m m! (log x - H_m) / x^(m+1), f = log x / x
    ld harmonic = 0, fact = 1;
    for (int m = 1; m <= 15; ++m) {
        harmonic += 1.0L / m;
        fact *= m;
        if (m % 2 == 1) {
            int j = (m + 1) / 2;
            ld b2j = boost::math::bernoulli_b2n<ld>(j);
            ld fact2j = fact * (m + 1);
            ld deriv = -fact * (lx - harmonic) / std::pow(x, m + 1);
            s -= b2j / fact2j * deriv;
        }
    }
    return static_cast<double>(s);
}

LValues l_values(const CharData& C, double tol) {
    const i64 M = C.modulus;
    cplx total = 0;
    for (auto& g : C.gauss_table) total += g;
    if (std::abs(total) > 1e-9 * M) throw AccuracyError("gauss sums do not cancel the pole");
    LValues out;
    const double logM = std::log(static_cast<double>(M));
    for (i64 h = 1; h < M; ++h) {
        cplx g = C.gauss_table[h];
        if (std::abs(g) == 0) continue;
        double a = static_cast<double>(h) / M;
        double psi = boost::math::digamma(a);
        out.l1 += -g * psi;
        out.l1prime += g * (-stieltjes1(a) + logM * psi);
    }
    out.l1 /= static_cast<double>(M);
    out.l1prime /= static_cast<double>(M);

    // Mellin-Abel oracle: sum chi(m) e^{-mx} = P(e^{-x}) / (1 - e^{-Mx})
    auto F = [&](double x) {
        cplx p = 0;
        double q = std::exp(-x), qh = 1;
        for (i64 h = 1; h <= M; ++h) {
            qh *= q;
            p += C.gauss_table[h % M] * qh;
        }
        return p / -std::expm1(-static_cast<double>(M) * x);
    };
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double euler = std::numbers::egamma;
    boost::math::quadrature::tanh_sinh<double> ts;
    auto integrate = [&](auto g) {
        auto re = [&](double x) { return std::real(g(x)); };
        auto im = [&](double x) { return std::imag(g(x)); };
        const double inf = std::numeric_limits<double>::infinity();
        cplx head(ts.integrate(re, 0.0, 1.0, 1e-13), ts.integrate(im, 0.0, 1.0, 1e-13));
        cplx tail(GK::integrate(re, 1.0, inf, 15, 1e-13), GK::integrate(im, 1.0, inf, 15, 1e-13));
        return head + tail;
    };
    out.l1_oracle = integrate([&](double x) { return F(x); });
    out.l1prime_oracle = integrate([&](double x) { return (std::log(x) + euler) * F(x); });
    double scale = 1 + std::abs(out.l1) + std::abs(out.l1prime);
    if (std::abs(out.l1 - out.l1_oracle) > tol * scale || std::abs(out.l1prime - out.l1prime_oracle) > tol * scale)
        throw AccuracyError("L-value methods disagree");
    return out;
}

}  // namespace shimura

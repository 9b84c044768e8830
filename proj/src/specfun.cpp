#include "shimura/specfun.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <numbers>

#include "shimura/arith.hpp"

namespace shimura {

using std::numbers::pi;

double beta1(double r) {
    if (!(r > 0)) throw DomainError("beta1 needs r > 0");
    return boost::math::expint(1, r);
}

double bessel_exponent(BesselKind k) {
    switch (k) {
        case BesselKind::minus_three_halves: return -1.5;
        case BesselKind::minus_one_half: return -0.5;
        case BesselKind::plus_one_half: return 0.5;
    }
    return 0;
}

double bessel_closed(BesselKind k, double a, double b) {
    double s = std::sqrt(a * b);
    double e = std::exp(-pi * s);
    switch (k) {
        case BesselKind::minus_three_halves: return std::sqrt(2 / b) * e;
        case BesselKind::minus_one_half: return std::sqrt(2 / a) * e;
        case BesselKind::plus_one_half: return std::sqrt(2.0) * (1 + pi * s) / (pi * std::pow(a, 1.5)) * e;
    }
    return 0;
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol, double* err) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    double e = 0, l1 = 0;
    double v = GK::integrate(f, a, b, 20, tol, &e, &l1);
    if (err) *err = e;
    if (!(e <= tol * std::max(1.0, std::abs(v)) * 10 + 1e-300)) throw QuadratureFailure("quadrature error estimate too large");
    return v;
}

double bessel_quad(BesselKind k, double a, double b) {
    // v = v* e^u, v* = sqrt(b/a); integrand becomes v*^{k+1} e^{(k+1)u} e^{-pi sqrt(ab) cosh u}
    double kk = bessel_exponent(k);
    double vs = std::sqrt(b / a), s = std::sqrt(a * b);
    auto f = [&](double u) { return std::exp((kk + 1) * u - pi * s * (std::cosh(u) - 1)); };
    const double inf = std::numeric_limits<double>::infinity();
    double v = integrate(f, -inf, 0, 1e-13) + integrate(f, 0, inf, 1e-13);
    return std::pow(vs, kk + 1) * v * std::exp(-pi * s);
}

double box_count(const Eigen::MatrixXd& gram, double r) {
    Eigen::MatrixXd inv = gram.inverse();
    double c = 1;
    for (int i = 0; i < gram.rows(); ++i) c *= 2 * std::floor(std::sqrt(std::max(0.0, r * inv(i, i)))) + 1;
    return c;
}

double shell_tail(const Eigen::MatrixXd& gram, double cutoff, const std::function<double(double)>& env) {
    double total = 0, r = std::max(cutoff, 1e-3);
    for (int k = 0; k < 200; ++k) {
        double term = box_count(gram, 2 * r) * env(r);
        total += term;
        if (term < 1e-300 || (k > 4 && term < 1e-18 * total)) break;
        r *= 2;
    }
    return total;
}

double linexp_envelope(double a, double b, double c, double x0) {
    double peak = 1 / c - (a > 0 ? b / a : 0);
    double x = std::max(x0, peak);
    return (a * x + b) * std::exp(-c * x);
}

}  // namespace shimura

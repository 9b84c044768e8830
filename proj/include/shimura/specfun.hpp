#pragma once
#include <Eigen/Dense>
#include <functional>
#include <stdexcept>

namespace shimura {

struct QuadratureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// beta_1(r) = int_1^inf e^{-ur} du/u = E_1(r)
double beta1(double r);

enum class BesselKind { minus_three_halves, minus_one_half, plus_one_half };
double bessel_exponent(BesselKind k);
// int_0^inf v^kind exp(-(pi/2)(a v + b/v)) dv
double bessel_closed(BesselKind k, double a, double b);
double bessel_quad(BesselKind k, double a, double b);

// adaptive Gauss-Kronrod on [a, b] (b may be +inf); throws when the error estimate exceeds tol
double integrate(const std::function<double(double)>& f, double a, double b, double tol, double* err = nullptr);

// number of lattice points of {x : x^T G x <= r} bounded by the enclosing box
double box_count(const Eigen::MatrixXd& gram, double r);
// certified bound on sum_{x : M(x) > cutoff} env(M(x)) for env decreasing on [cutoff, inf)
double shell_tail(const Eigen::MatrixXd& gram, double cutoff, const std::function<double(double)>& env);

// sup over x >= x0 of (a g + b) e^{-c g} with g = x, a, b >= 0, c > 0
double linexp_envelope(double a, double b, double c, double x0);

}  // namespace shimura

#pragma once
#include <complex>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "shimura/instance.hpp"
#include "shimura/qexpansion.hpp"

namespace shimura {

// lattice Z + NtZ + (Nt/4)Z with form (2/Nt)[[0,0,-2],[0,1,0],[-2,0,0]], weight kappa/2 = lambda + 1/2
struct NSParams {
    i64 N = 1;
    i64 t = 1;
    int lambda = 1;
    int kappa() const { return 2 * lambda + 1; }
    i64 level() const { return 4 * N * t; }
};

struct TailNotCertified : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// chi(a) (-1/a)^lambda (t/a) with chi trivial, zero off the units mod 4Nt
int chi_t(i64 a, const NSParams& p);

// A(l) = sum_{m | l} chi(m) m^{lambda-1} c(t l^2 / m^2) for 1 <= l <= max_ell
QExpansion shimura_lift_coeffs(const QExpansion& c, i64 t, int lambda, const std::function<int(i64)>& chi,
                               i64 max_ell);

// probabilists' Hermite polynomial He_mu
double hermite(int mu, double x);
cplx theta_mu(cplx tau, double alpha, int mu, double tol = 1e-13);

struct KernelValue {
    cplx value;
    double tail = 0;
    std::size_t terms = 0;
};

KernelValue ns_kernel_direct(cplx tau, cplx w, const NSParams& p, double tol, const EnumOptions& opt = {});
KernelValue ns_kernel_direct_serial(cplx tau, cplx w, const NSParams& p, double tol);
KernelValue ns_kernel_sharp(cplx tau, cplx w, const NSParams& p, double tol, const EnumOptions& opt = {});
KernelValue ns_kernel_poincare(cplx tau, cplx w, const NSParams& p, double tol);

struct Calibration {
    cplx constant;
    double stability = 0;      // max |ratio / constant - 1|
    double max_rel_error = 0;  // after calibration
    std::vector<double> rel_errors;
    std::vector<cplx> direct, poincare;
};
Calibration calibrate_kernel(const NSParams& p, const std::vector<std::pair<cplx, cplx>>& points, double tol);

TruncatedSum theta_o_coeff(const Instance& I, i64 n, double v, cplx z, double tol);
TruncatedSum theta_u_coeff(const Instance& I, i64 ell, double eta, cplx z, double tol);

struct IdentityReport {
    double lhs = 0, rhs = 0, diff = 0, budget = 0;
    std::size_t lhs_terms = 0, rhs_terms = 0;
    bool pass = false;
};
// |lhs - rhs| <= tol + budget, sums truncated with tails summing to at most sum_tol
IdentityReport analytic_identity_check(const Instance& I, i64 ell, double eta, cplx z, double tol, double sum_tol);

struct PoissonReport {
    cplx lhs, rhs;
    double residual = 0;
};
PoissonReport poisson_twisted_check(const CharData& C, i64 d_b, i64 t, double v, double eta);

struct ConstantTermReport {
    double eta = 0;
    Symbolic quadrature;         // from the integral definition
    Symbolic closed_form;        // closed form as printed
    Symbolic closed_corrected;   // closed form with the sign of the L'(1) term reversed
    Symbolic from_definition;    // constant term class paired with the Hodge class
    double quad_error = 0;
    double diff_closed = 0, diff_corrected = 0, diff_definition = 0;
    bool pass = false;
};
ConstantTermReport constant_term_check(const Instance& I, const LValues& L, double eta, double tol);

}  // namespace shimura

#include <cmath>

#include "doctest.h"
#include "shimura/instance.hpp"
#include "shimura/thetalift.hpp"

using namespace shimura;

namespace {

const Instance& worked() {
    static const Instance I = build_instance(InstanceConfig{});
    return I;
}

// sum over n of e^{pi i n^2 tau}
cplx jacobi_theta(cplx tau) { return theta_mu(tau / 2.0, 0, 0); }

}  // namespace

TEST_CASE("Hermite polynomials") {
    for (double x : {-1.5, 0.0, 0.7, 2.0}) {
        CHECK(hermite(0, x) == 1);
        CHECK(hermite(1, x) == doctest::Approx(x));
        CHECK(hermite(2, x) == doctest::Approx(x * x - 1));
        CHECK(hermite(3, x) == doctest::Approx(x * x * x - 3 * x));
        CHECK(hermite(4, x) == doctest::Approx(x * x * x * x - 6 * x * x + 3));
    }
}

TEST_CASE("theta series obeys the inversion formula") {
    for (cplx tau : {cplx(0, 1), cplx(0.3, 0.8), cplx(-0.2, 1.5)}) {
        cplx lhs = jacobi_theta(-1.0 / tau);
        cplx rhs = std::sqrt(-cplx(0, 1) * tau) * jacobi_theta(tau);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("character of the kernel") {
    NSParams p{35, 2, 1};
    CHECK(chi_t(5, p) == 0);
    CHECK(chi_t(2, p) == 0);
    CHECK(chi_t(1, p) == 1);
    // (-1/3)(2/3) = (-1)(-1)
    CHECK(chi_t(3, p) == 1);
    // (-1/11)(2/11) = (-1)(-1)
    CHECK(chi_t(11, p) == 1);
    // (-1/13)(2/13) = (1)(-1)
    CHECK(chi_t(13, p) == -1);
}

TEST_CASE("lift of the constant sequence is the divisor function") {
    QExpansion c(Ring::rational, 0, 400);
    for (i64 n = 1; n <= 400; ++n) c.set(n, mpq_class(1));
    QExpansion A = shimura_lift_coeffs(c, 1, 1, [](i64) { return 1; }, 20);
    for (i64 l = 1; l <= 20; ++l) CHECK(std::get<mpq_class>(A.get(l)) == mpq_class(i64(divisors(l).size())));
    CHECK_THROWS_AS(shimura_lift_coeffs(c, 1, 1, [](i64) { return 1; }, 21), WindowExceeded);
}

TEST_CASE("direct kernel is thread-count independent") {
    NSParams p{1, 1, 1};
    cplx tau(0.1, 0.9), w(-0.2, 1.1);
    KernelValue a = ns_kernel_direct(tau, w, p, 1e-12), b = ns_kernel_direct_serial(tau, w, p, 1e-12);
    CHECK(std::abs(a.value - b.value) <= 1e-14 * (1 + std::abs(a.value)));
    CHECK(a.tail <= 1e-12);
    EnumOptions opt;
    opt.max_cutoff = 1;
    CHECK_THROWS_AS(ns_kernel_direct(tau, w, p, 1e-12, opt), TailNotCertified);
}

TEST_CASE("kernel calibration constant is one") {
    NSParams p{1, 2, 1};
    Calibration cal = calibrate_kernel(p, {{cplx(0.1, 0.9), cplx(-0.2, 1.1)}, {cplx(-0.4, 1.3), cplx(0.3, 0.7)}}, 1e-12);
    CHECK(std::abs(cal.constant - 1.0) < 1e-8);
    CHECK(cal.stability < 1e-8);
    CHECK(cal.max_rel_error < 1e-8);
}

TEST_CASE("twisted Poisson summation") {
    const Instance& I = worked();
    for (double v : {0.5, 2.0}) CHECK(poisson_twisted_check(I.chars, 35, 2, v, 1.0).residual < 1e-8);
}

TEST_CASE("coefficient identity at one point") {
    const Instance& I = worked();
    IdentityReport r = analytic_identity_check(I, 1, 1.0, cplx(0.1, 0.8), 1e-6, 1e-10);
    CHECK(r.pass);
    CHECK(r.diff <= 1e-6 + r.budget);
    IdentityReport s = analytic_identity_check(I, -2, 0.5, cplx(-0.3, 1.2), 1e-6, 1e-10);
    CHECK(s.pass);
}

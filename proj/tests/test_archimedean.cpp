#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <random>

#include "doctest.h"
#include "shimura/instance.hpp"
#include "shimura/specfun.hpp"

using namespace shimura;

namespace {

const double pi = 3.141592653589793;

const Instance& worked() {
    static const Instance I = build_instance(InstanceConfig{});
    return I;
}

}  // namespace

TEST_CASE("splitting is an algebra map with det = nrd") {
    const Instance& I = worked();
    CHECK(I.split.max_relation_error(-2, 35) < 1e-12);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int n = 0; n < 50; ++n) {
        Quat x(d(rng), d(rng), d(rng), d(rng)), y(d(rng), d(rng), d(rng), d(rng));
        Mat2 sx = I.split(x), sy = I.split(y);
        CHECK(sx.determinant() == doctest::Approx(I.A.nrd(x).get_d()));
        CHECK((sx * sy - I.split(I.A.mul(x, y))).norm() < 1e-9);
    }
}

TEST_CASE("complex structure fixed point") {
    cplx z(0.3, 1.7);
    cplx w = fixed_point(j_z(z));
    CHECK(std::abs(w - z) < 1e-12);
    Mat2 J = j_z(z);
    CHECK((J * J + Mat2::Identity()).norm() < 1e-12);
}

TEST_CASE("orthogonal majorant dominates the quadratic form") {
    const Instance& I = worked();
    cplx z(0.2, 0.9);
    Eigen::MatrixXd g = orthogonal_majorant(I.ortho, z);
    CHECK(certify_positive_definite(g));
    for (size_t r = 0; r < I.ortho.img.size(); ++r) CHECK(r_o(I.ortho.img[r], z) >= -1e-12);
}

TEST_CASE("exponential integral against boost") {
    for (double x : {1e-3, 0.1, 0.5, 1.0, 2.5, 10.0, 40.0})
        CHECK(beta1(x) == doctest::Approx(boost::math::expint(1, x)).epsilon(1e-13));
}

TEST_CASE("Bessel integral with exponent -1/2 in closed form") {
    for (double a : {0.3, 1.0, 4.0})
        for (double b : {0.2, 1.0, 3.0}) {
            double expect = std::sqrt(2 / a) * std::exp(-pi * std::sqrt(a * b));
            CHECK(bessel_closed(BesselKind::minus_one_half, a, b) == doctest::Approx(expect).epsilon(1e-12));
            for (auto k : {BesselKind::minus_three_halves, BesselKind::minus_one_half, BesselKind::plus_one_half})
                CHECK(bessel_closed(k, a, b) == doctest::Approx(bessel_quad(k, a, b)).epsilon(1e-8));
        }
}

TEST_CASE("adaptive quadrature on an infinite interval") {
    double err = 0;
    CHECK(integrate([](double x) { return std::exp(-x); }, 0, INFINITY, 1e-12, &err) == doctest::Approx(1.0));
    CHECK(err < 1e-10);
    CHECK(integrate([](double x) { return std::exp(-x * x); }, 0, INFINITY, 1e-12) ==
          doctest::Approx(std::sqrt(pi) / 2));
}

TEST_CASE("orthogonal archimedean integral matches its quadrature") {
    for (i64 ell : {-2, -1, 1, 2})
        for (double eta : {0.5, 1.0, 2.0}) CHECK(i_o(ell, eta, -2) == doctest::Approx(i_o_quad(ell, eta, -2)).epsilon(1e-7));
}

TEST_CASE("truncated sum over Z^2 of a Gaussian") {
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(2, 2);
    auto term = [](const IVec&, double m) { return std::exp(-pi * m); };
    auto env = [](double m) { return std::exp(-pi * m); };
    TruncatedSum s = majorant_sum(g, term, env, 1e-13, 1.0);
    // theta_3(e^{-pi}) = pi^{1/4} / Gamma(3/4)
    double t3 = std::pow(pi, 0.25) / boost::math::tgamma(0.75);
    CHECK(s.value == doctest::Approx(t3 * t3).epsilon(1e-12));
    CHECK(s.tail <= 1e-13);
    EnumOptions opt;
    opt.max_cutoff = 2;
    CHECK_THROWS_AS(majorant_sum(g, term, env, 1e-13, 1.0, opt), BudgetExceeded);
}

TEST_CASE("majorant identity on the unitary side") {
    const Instance& I = worked();
    cplx z(0.1, 1.2);
    for (const auto& img : I.ortho.img) {
        double r = majorant_identity(I.split, img, 1.0, I.herm, z);
        CHECK(std::abs(r) < 1e-9);
    }
}

#include "doctest.h"
#include "shimura/instance.hpp"

using namespace shimura;

namespace {

const Instance& worked() {
    static const Instance I = build_instance(InstanceConfig{});
    return I;
}

}  // namespace

TEST_CASE("reference embedding and theta") {
    const Instance& I = worked();
    CHECK(I.A.mul(I.phi.g, I.phi.g) == Quat::scalar(-2));
    CHECK(membership(I.phi.g, I.O));
    CHECK(is_optimal(I.A, I.O, I.phi));
    CHECK(I.A.mul(I.theta, I.theta) == Quat::scalar(-35));
    CHECK(I.A.trd(I.theta) == 0);
    CHECK(I.A.trd(I.A.mul(I.theta, I.phi.g)) > 0);
    CHECK(membership(I.theta, I.O));
}

TEST_CASE("trace-zero search returns sorted elements of the requested norm") {
    const Instance& I = worked();
    auto xs = trace_zero_search(I.A, I.O, mpq_class(8), 20);
    REQUIRE_FALSE(xs.empty());
    for (const auto& x : xs) {
        CHECK(I.A.trd(x) == 0);
        CHECK(I.A.nrd(x) == 8);
        CHECK(membership(x, I.O));
    }
    CHECK(trace_zero_search(I.A, I.O, mpq_class(8), 0).empty());
}

TEST_CASE("conductor of scaled elements") {
    const Instance& I = worked();
    Quat g = I.phi.g;
    CHECK(conductor(I.A, I.O, g, 1) == 1);
    CHECK(conductor(I.A, I.O, g * mpq_class(6), 6) == 1);
    CHECK(conductor(I.A, I.O, g * mpq_class(2), 6) == 3);
    CHECK(conductor(I.A, I.O, g, 4) == 4);
    CHECK_THROWS_AS(conductor(I.A, I.O, g * mpq_class(1, 2), 1), DomainError);
}

TEST_CASE("orbit map and adjoint preserve the norm") {
    const Instance& I = worked();
    auto hits = find_norm_element(I.A, I.O, mpq_class(5), 10);
    REQUIRE(hits);
    CHECK(I.A.nrd(*hits) == 5);
    Quat xi = orbit_map(I.A, *hits, 3, I.phi);
    CHECK(I.A.trd(xi) == 0);
    CHECK(I.A.nrd(xi) == 18);
    Embedding psi = adjoint(I.A, *hits, I.phi);
    CHECK(I.A.mul(psi.g, psi.g) == Quat::scalar(-2));
    CHECK(psi.conjugate().g == -psi.g);
}

TEST_CASE("norm one units") {
    const Instance& I = worked();
    auto us = norm_one_units(I.A, I.O, 3);
    CHECK(us.size() >= 2);
    for (const auto& u : us) CHECK(I.A.nrd(u) == 1);
}

TEST_CASE("family members are embeddings and the Frobenius type of the reference is trivial") {
    const Instance& I = worked();
    CHECK(I.family.size() == 8);
    for (const auto& f : I.family) {
        CHECK(I.A.mul(f.phi.g, f.phi.g) == Quat::scalar(-2));
        CHECK(I.A.nrd(f.mu) == f.nu);
        CHECK(35 % f.nu == 0);
    }
    CHECK(frobenius_type(I.A, I.O, I.phi.g, 1, I.phi, I.theta) == 1);
    CHECK(frobenius_type(I.A, I.O, -I.phi.g, 1, I.phi, I.theta) == 35);
}

TEST_CASE("fiber of the reference embedding is empty unless |delta| divides m") {
    const Instance& I = worked();
    i64 n = fiber_enumerate(I.A, I.K, I.phi.g, 1, I.phi, I.reps, I.O);
    CHECK(n == 0);
    i64 n2 = fiber_enumerate(I.A, I.K, I.phi.g * mpq_class(2), 2, I.phi, I.reps, I.O);
    CHECK(n2 == I.K.unit_count * rho(I.K, 1));
}

TEST_CASE("assumption checks") {
    InstanceConfig c;
    c.delta = -3;
    CHECK_THROWS_AS(validate(c), AssumptionViolation);
    c = InstanceConfig{};
    c.algebra_b = 1;
    CHECK_THROWS_AS(validate(c), AssumptionViolation);
    CHECK_NOTHROW(validate(InstanceConfig{}));
}

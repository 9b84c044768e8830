#include <random>

#include "doctest.h"
#include "shimura/quat.hpp"

using namespace shimura;

namespace {

Quat random_quat(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
    auto r = [&]() -> mpq_class { return mpq_class(num(rng)) / den(rng); };
    return Quat(r(), r(), r(), r());
}

}  // namespace

TEST_CASE("multiplication table") {
    QuatAlgebra A(-2, 35);
    Quat one(1, 0, 0, 0), i(0, 1, 0, 0), j(0, 0, 1, 0), k(0, 0, 0, 1);
    CHECK(A.mul(i, i) == Quat::scalar(-2));
    CHECK(A.mul(j, j) == Quat::scalar(35));
    CHECK(A.mul(i, j) == k);
    CHECK(A.mul(j, i) == -k);
    CHECK(A.mul(k, k) == Quat::scalar(70));
    CHECK(A.mul(one, k) == k);
}

TEST_CASE("reduced norm is multiplicative and matches x conj(x)") {
    QuatAlgebra A(-2, 35);
    std::mt19937_64 rng(7);
    for (int n = 0; n < 200; ++n) {
        Quat x = random_quat(rng), y = random_quat(rng);
        CHECK(A.nrd(A.mul(x, y)) == A.nrd(x) * A.nrd(y));
        CHECK(A.mul(x, A.conj(x)) == Quat::scalar(A.nrd(x)));
        CHECK(A.trd(x) == (x + A.conj(x)).c[0]);
        CHECK(A.nrd_bilinear(x, x) == A.nrd(x));
        if (A.nrd(x) != 0) CHECK(A.mul(x, A.inv(x)) == Quat::scalar(1));
    }
}

TEST_CASE("inverse of a zero divisor throws") {
    QuatAlgebra A(1, 1);
    CHECK_THROWS_AS(A.inv(Quat(1, 1, 0, 0)), DivisionByZero);
}

TEST_CASE("ramification of small algebras") {
    CHECK(QuatAlgebra(-2, 35).ramified_primes == std::vector<i64>{5, 7});
    CHECK(QuatAlgebra(-2, 35).d_b == 35);
    CHECK(QuatAlgebra(-1, -1).d_b == 2);
    CHECK(QuatAlgebra(1, 1).d_b == 1);
    CHECK(QuatAlgebra(-1, 3).d_b == 6);
    CHECK(QuatAlgebra(-1, 7).d_b == 14);
    CHECK(QuatAlgebra(-3, 5).d_b == 15);
}

TEST_CASE("maximal order has reduced discriminant D_B") {
    for (auto [a, b] : std::vector<std::pair<int, int>>{{-2, 35}, {-1, 3}, {-1, 7}, {-3, 5}, {-1, -1}, {3, -1}}) {
        QuatAlgebra A(a, b);
        OrderLattice O = maximal_order(A);
        CHECK(O.is_order);
        CHECK(reduced_discriminant(A, O) == A.d_b);
        OrderLattice S = seed_order(A);
        CHECK(check_order(A, S));
        for (size_t r = 0; r < 4; ++r) CHECK(membership(S.elem(r), O));
    }
}

TEST_CASE("membership and p-adic membership") {
    QuatAlgebra A(-2, 35);
    OrderLattice O = maximal_order(A);
    CHECK(membership(Quat(1, 0, 0, 0), O));
    CHECK_FALSE(membership(Quat(mpq_class(1, 3), 0, 0, 0), O));
    CHECK(p_adic_membership(Quat(mpq_class(1, 3), 0, 0, 0), O, 5));
    CHECK_FALSE(p_adic_membership(Quat(mpq_class(1, 3), 0, 0, 0), O, 3));
    for (size_t r = 0; r < 4; ++r)
        for (size_t s = 0; s < 4; ++s) CHECK(membership(A.mul(O.elem(r), O.elem(s)), O));
}

TEST_CASE("nrd gram is integral with determinant D_B^2 / 16 on a maximal order") {
    QuatAlgebra A(-2, 35);
    OrderLattice O = maximal_order(A);
    QMat g = nrd_gram(A, O);
    CHECK(det(g) == mpq_class(35 * 35, 16));
    for (size_t r = 0; r < 4; ++r) CHECK(is_integer(g[r][r]));
    OrderLattice T = trace_zero_sublattice(O);
    CHECK(T.basis.size() == 3);
    for (auto& row : T.basis) CHECK(row[0] == 0);
}

TEST_CASE("ring closure rejects non-integral generators") {
    QuatAlgebra A(-2, 35);
    CHECK_THROWS_AS(ring_closure(A, {Quat(1, 0, 0, 0), Quat(0, mpq_class(1, 2), 0, 0)}), NotAnOrder);
}

TEST_CASE("Hermite normal form and exact linear algebra") {
    QMat m = parse_matrix("2 4 6\n1 1/2 0\n3 9/2 6\n");
    QMat h = hnf(m);
    CHECK(h.size() == 2);
    QMat sq = parse_matrix("2 1\n1 1\n");
    CHECK(det(sq) == 1);
    QMat inv = inverse(sq);
    CHECK(inv == parse_matrix("1 -1\n-1 2\n"));
    CHECK(parse_matrix(format_matrix(m)) == m);
    auto c = solve_left(sq, {3, 2});
    REQUIRE(c);
    CHECK(*c == QVec{1, 1});
    CHECK_FALSE(solve_left(parse_matrix("1 2\n2 4\n"), {1, 0}));
    ZMat k = integer_kernel({{1, 2}, {2, 4}});
    REQUIRE(k.size() == 1);
    CHECK(k[0][0] + 2 * k[0][1] == 0);
}

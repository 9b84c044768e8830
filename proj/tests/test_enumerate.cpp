#include <random>

#include "doctest.h"
#include "shimura/enumerate.hpp"

using namespace shimura;

TEST_CASE("points in a disk") {
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(2, 2);
    CHECK(fincke_pohst(g, 2.0).size() == 9);
    CHECK(fincke_pohst(g, 0.5).size() == 1);
    CHECK(box_scan(g, 2.0).size() == 9);
    // x^2 + y^2 <= 25 has 81 solutions
    CHECK(fincke_pohst(g, 25.0).size() == 81);
}

TEST_CASE("parallel, serial and box enumeration coincide") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> ent(-2, 2);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + trial % 3;
        Eigen::MatrixXd b(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) b(r, c) = ent(rng);
        Eigen::MatrixXd g = b.transpose() * b + Eigen::MatrixXd::Identity(n, n);
        double bound = 4.5 + trial % 5;
        auto fp = fincke_pohst(g, bound);
        CHECK(fp == fincke_pohst_serial(g, bound));
        CHECK(fp == box_scan(g, bound));
        QMat q(n, QVec(n));
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) q[r][c] = mpq_class(static_cast<long>(g(r, c)));
        CHECK(fincke_pohst_exact(q, mpq_class(9)) == box_scan_exact(q, mpq_class(9)));
    }
}

TEST_CASE("exact enumeration includes the boundary") {
    QMat q{{1, 0}, {0, 1}};
    auto pts = fincke_pohst_exact(q, mpq_class(1));
    CHECK(pts.size() == 5);
    for (auto& x : pts) CHECK(quad_form(q, x) <= 1);
}

TEST_CASE("definiteness certificate") {
    Eigen::MatrixXd g(2, 2);
    g << 2, 1, 1, 2;
    CHECK(certify_positive_definite(g));
    g << 1, 2, 2, 1;
    CHECK_FALSE(certify_positive_definite(g));
    QMat q{{0, 1}, {1, 0}};
    CHECK_FALSE(certify_positive_definite(q));
}

TEST_CASE("budget is enforced") {
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(3, 3);
    EnumOptions opt;
    opt.budget = 10;
    CHECK_THROWS_AS(fincke_pohst(g, 100.0, opt), BudgetExceeded);
}

TEST_CASE("filtered enumeration under a majorant") {
    MajorantForm M{Eigen::MatrixXd::Identity(2, 2), "identity"};
    auto pts = enumerate_under_majorant(M, 5.0, [](const IVec& x) { return (x[0] + x[1]) % 2 == 0; });
    for (auto& x : pts) CHECK((x[0] + x[1]) % 2 == 0);
    // x^2 + y^2 <= 5 with x + y even: (0,0), (+-1,+-1), (+-2,0), (0,+-2)
    CHECK(pts.size() == 9);
}

#include "doctest.h"
#include "shimura/config.hpp"
#include "shimura/qexpansion.hpp"
#include "shimura/report.hpp"

using namespace shimura;

TEST_CASE("config parsing") {
    InstanceConfig c = parse_config("[field]\ndelta = -2\n[algebra]\na = -2\nb = 35\n[limits]\nbudget = 5e6\n[run]\nseed = 9\n");
    CHECK(c.delta == -2);
    CHECK(c.algebra_b == 35);
    CHECK(c.budget == 5e6);
    CHECK(c.seed == 9);
    CHECK(c.tol_identity == 1e-6);
    CHECK_FALSE(c.order_basis);
}

TEST_CASE("config with an explicit order basis") {
    InstanceConfig c = parse_config("[algebra]\norder_basis = 1 0 0 0; 0 1 0 0; 0 0 1 0; 0 0 0 1\n");
    REQUIRE(c.order_basis);
    CHECK(c.order_basis->size() == 4);
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse_config("[field]\ndelta = minus two\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[field]\nunknown = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[colour]\nred = 1\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("report rendering is deterministic and independent of wall time") {
    Report a;
    a.suite = "demo";
    a.fingerprint = "x";
    a.add(Record("c").add("n", i64(3)).add("v", 0.1).add("q", mpq_class(1, 3)).verdict(1e-17, 1e-9, true));
    a.add(Record("c").add("z", std::complex<double>(-0.0, 1.5)).verdict(2, 1, false));
    Report b = a;
    b.wall_seconds = 123;
    CHECK(a.render() == b.render());
    CHECK_FALSE(a.pass());
    CHECK(a.failures() == 1);
    std::string text = a.render();
    CHECK(text.find("records=2 failures=1 pass=false") != std::string::npos);
    CHECK(text.find("q=1/3") != std::string::npos);
    CHECK(text.find("v=0.1 ") != std::string::npos);
    CHECK(text.find("z=-0") == std::string::npos);
    CHECK(text.find("budget=1e-09 pass=true") != std::string::npos);
}

TEST_CASE("shortest round-trip doubles") {
    for (double x : {0.1, 1.0 / 3, 1e-300, 123456.789, -2.5e-7}) CHECK(std::stod(format_double(x)) == x);
    CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("q-expansion TSV round trip") {
    QExpansion q(Ring::rational, -2, 10);
    q.set(-1, mpq_class(1, 2));
    q.set(3, mpq_class(-7));
    QExpansion r = QExpansion::from_tsv(Ring::rational, -2, 10, q.to_tsv());
    CHECK(q == r);
    CHECK(q.to_tsv() == "-1\t1/2\n3\t-7\n");
    CHECK_THROWS_AS(q.set(11, mpq_class(1)), WindowExceeded);

    QExpansion s(Ring::symbolic, 0, 3);
    s.set(0, Symbolic{{0.5, -2, 1.25}});
    CHECK(QExpansion::from_tsv(Ring::symbolic, 0, 3, s.to_tsv()) == s);

    QExpansion t(Ring::real, 0, 3);
    t.set(1, 0.25);
    CHECK_THROWS_AS(t + q, RingMismatch);
    QExpansion u = t + t;
    CHECK(std::get<double>(u.get(1)) == 0.5);
}

#include "shimura/suites.hpp"

#include <algorithm>
#include <map>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "shimura/thetalift.hpp"

namespace shimura {

namespace {

using std::numbers::pi;

std::mt19937_64 make_rng(const Instance& I, std::uint64_t salt) { return std::mt19937_64(I.config.seed * 1000003 + salt); }

double uniform(std::mt19937_64& g, double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); }
i64 uniform_int(std::mt19937_64& g, i64 a, i64 b) { return std::uniform_int_distribution<i64>(a, b)(g); }

Report start(const Instance& I, const std::string& suite) {
    Report r;
    r.suite = suite;
    r.fingerprint = I.fingerprint();
    return r;
}

std::string coeff_text(const Symbolic& s) { return format_coeff(Coeff(s)); }

struct Element {
    Quat y;
    mpq_class nrd;
    double majorant;
    IVec x;
};

// elements of O of small |nrd| and small majorant at the reference point, (y,y) = delta nrd(y) of the given sign
std::vector<Element> small_elements(const Instance& I, int sign, int count) {
    UnitaryLattice U = unitary_lattice(I.A, I.O, mpq_class(1), I.split);
    cplx z0 = fixed_point(-I.herm.G);
    Eigen::MatrixXd G = unitary_majorant(U, I.herm, z0);
    std::vector<Element> out;
    for (double B = 8; out.size() < size_t(count) && B < 1e4; B *= 2) {
        out.clear();
        for (const auto& x : fincke_pohst(G, B, I.enum_options())) {
            mpq_class n = quad_form(U.nrd, x);
            if (n == 0 || sgn(n * I.K.delta) != sign) continue;
            Eigen::VectorXd v(4);
            for (int i = 0; i < 4; ++i) v[i] = double(x[i]);
            out.push_back({U.L.from_coords(x), n, v.dot(G * v), x});
        }
        std::sort(out.begin(), out.end(), [](const Element& a, const Element& b) {
            if (abs(a.nrd) != abs(b.nrd)) return abs(a.nrd) < abs(b.nrd);
            if (a.majorant != b.majorant) return a.majorant < b.majorant;
            return a.x < b.x;
        });
    }
    if (out.size() > size_t(count)) out.resize(size_t(count));
    return out;
}

}  // namespace

Report cmd_validate(const InstanceConfig& cfg) {
    validate(cfg);
    Instance I = build_instance(cfg);
    Report r = start(I, "validate");
    std::string ram;
    for (i64 p : I.A.ramified_primes) ram += (ram.empty() ? "" : ",") + std::to_string(p);
    r.add(Record("assumptions").add("delta", I.K.delta).add("ramified", ram).add("d_b", I.A.d_b)).verdict(0, 0, true);
    for (i64 p : I.A.ramified_primes) {
        int c = chi_k(I.K, p);
        r.add(Record("inert").add("p", p).add("chi_k", c)).verdict(0, 0, c == -1);
    }
    mpz_class disc = reduced_discriminant(I.A, I.O);
    r.add(Record("maximal_order").add("reduced_discriminant", mpq_class(disc)).add("d_b", I.A.d_b))
        .verdict(0, 0, disc == I.A.d_b);
    bool sq = I.A.mul(I.phi.g, I.phi.g) == Quat::scalar(I.K.delta);
    r.add(Record("embedding").add("g", I.phi.g.str()).add("optimal", is_optimal(I.A, I.O, I.phi)))
        .verdict(0, 0, sq && is_optimal(I.A, I.O, I.phi));
    mpq_class tr = I.A.trd(I.A.mul(I.theta, I.phi.g));
    bool th = I.A.mul(I.theta, I.theta) == Quat::scalar(-I.A.d_b) && membership(I.theta, I.O);
    r.add(Record("theta").add("theta", I.theta.str()).add("trd_theta_g", tr)).verdict(0, 0, th && tr > 0);
    double err = I.split.max_relation_error(I.A.a.get_d(), I.A.b.get_d());
    r.add(Record("splitting").add("z0", fixed_point(-I.herm.G))).verdict(err, 0, err <= 1e-12);
    r.add(Record("class_group").add("h", I.K.class_number).add("reps", I.reps.size()))
        .verdict(0, 0, I.K.class_number == int(I.reps.size()));
    i64 s1 = 0;
    cplx s2 = 0;
    for (i64 h = 0; h < I.chars.modulus; ++h) {
        s1 += chi_prime(I.chars, h);
        s2 += gauss_sum(I.chars, h);
    }
    r.add(Record("character_sums").add("modulus", I.chars.modulus).add("sum_chi", s1).add("sum_gauss", s2))
        .verdict(std::abs(s2), 0, s1 == 0 && std::abs(s2) <= double(I.chars.modulus) * std::ldexp(1.0, -40));
    r.add(Record("family").add("members", I.family.size())).verdict(0, 0, I.family.size() == 2 * divisors(I.A.d_b).size());
    return r;
}

Report cmd_rho_lemma(const Instance& I, i64 max_m, i64 max_n) {
    Report r = start(I, "rho_lemma");
    for (i64 n = 1; n <= max_n; ++n) {
        i64 a = rho(I.K, n), b = rho_divisor_sum(I.K, n);
        r.add(Record("rho").add("n", n).add("hnf_count", a).add("divisor_sum", b)).verdict(double(std::abs(a - b)), 0, a == b);
    }
    for (i64 m = 1; m <= max_m; ++m) {
        i64 lhs = 0, rhs = 0;
        int nonzero = 0;
        for (i64 nu : divisors(I.A.d_b)) {
            if (m % nu != 0) continue;
            i64 v = rho(I.K, m / nu);
            lhs += v;
            nonzero += v != 0;
        }
        for (i64 a : divisors(m)) rhs += chi_prime(I.chars, a);
        r.add(Record("rho_lemma").add("m", m).add("lhs", lhs).add("rhs", rhs).add("nonzero_nu", nonzero))
            .verdict(double(std::abs(lhs - rhs)), 0, lhs == rhs && nonzero <= 1);
    }
    return r;
}

Report cmd_fiber(const Instance& I, const std::vector<i64>& m_list, int per_m) {
    Report r = start(I, "fiber");
    const i64 ad = std::abs(I.K.delta);
    std::vector<std::pair<i64, Embedding>> phis{{1, I.phi}};
    for (const auto& f : I.family)
        if (!f.conjugate && f.nu > 1) phis.emplace_back(f.nu, f.phi);
    std::map<i64, std::vector<Quat>> found;
    auto search = [&](i64 k) -> const std::vector<Quat>& {
        auto it = found.find(k);
        if (it == found.end()) {
            auto xs = trace_zero_search(I.A, I.O, mpq_class(ad * k * k), 40);
            std::vector<Quat> primitive, rest;
            for (const auto& x : xs) (conductor(I.A, I.O, x, k) == k ? primitive : rest).push_back(x);
            primitive.insert(primitive.end(), rest.begin(), rest.end());
            it = found.emplace(k, std::move(primitive)).first;
        }
        return it->second;
    };
    for (i64 m : m_list) {
        // (m/k) xi_k with nrd(xi_k) = |delta| k^2, largest k first
        std::vector<Quat> xis;
        auto divs = divisors(m);
        for (auto k = divs.rbegin(); k != divs.rend() && xis.size() < size_t(per_m); ++k)
            for (const auto& x : search(*k)) {
                Quat xi = x * mpq_class(m / *k);
                if (std::find(xis.begin(), xis.end(), xi) != xis.end()) continue;
                xis.push_back(xi);
                break;
            }
        for (const auto& xi : xis) {
            i64 c = conductor(I.A, I.O, xi, m);
            if (gcd64(c, I.A.d_b) != 1) continue;
            for (const auto& [label, phi] : phis) {
                i64 nu = frobenius_type(I.A, I.O, xi, m, phi, I.theta);
                i64 q = c * nu * ad;
                i64 expected = m % q == 0 ? I.K.unit_count * rho(I.K, m / q) : 0;
                i64 count = fiber_enumerate(I.A, I.K, xi, m, phi, I.reps, I.O);
                r.add(Record("fiber")
                          .add("m", m)
                          .add("xi", xi.str())
                          .add("embedding", label)
                          .add("conductor", c)
                          .add("frobenius_type", nu)
                          .add("count", count)
                          .add("expected", expected))
                    .verdict(double(std::abs(count - expected)), 0, count == expected);
            }
        }
    }
    return r;
}

Report cmd_majorant(const Instance& I, int samples) {
    Report r = start(I, "majorant");
    auto rng = make_rng(I, 3);
    for (int k = 0; k < samples; ++k) {
        Quat y;
        do {
            IVec x(4);
            for (auto& c : x) c = uniform_int(rng, -2, 2);
            y = I.O.from_coords(x);
        } while (I.A.nrd(y) == 0);
        double t = double(uniform_int(rng, 1, 4));
        cplx z(uniform(rng, -1, 1), uniform(rng, 0.3, 2));
        double res = majorant_identity(I.split, I.split(y), t, I.herm, z);
        r.add(Record("majorant_identity").add("y", y.str()).add("t", t).add("z", z)).verdict(res, 0, res <= 1e-9);
    }
    return r;
}

Report cmd_bessel(const Instance& I) {
    Report r = start(I, "bessel");
    const std::pair<BesselKind, const char*> kinds[] = {{BesselKind::minus_three_halves, "-3/2"},
                                                        {BesselKind::minus_one_half, "-1/2"},
                                                        {BesselKind::plus_one_half, "+1/2"}};
    for (const auto& [kind, name] : kinds)
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 10; ++j) {
                double a = 0.1 * std::pow(100.0, i / 9.0), b = 0.1 * std::pow(100.0, j / 9.0);
                double c = bessel_closed(kind, a, b), q = bessel_quad(kind, a, b);
                double rel = std::abs(c - q) / std::abs(q);
                r.add(Record("bessel").add("kind", name).add("a", a).add("b", b).add("closed", c).add("quadrature", q))
                    .verdict(rel, 0, rel <= 1e-8);
            }
    return r;
}

Report cmd_kernel(const Instance& I, int points) {
    Report r = start(I, "kernel");
    auto rng = make_rng(I, 5);
    const double tol = I.config.tol_identity;
    for (NSParams p : {NSParams{1, 1, 1}, NSParams{I.A.d_b, std::abs(I.K.delta), 1}}) {
        std::vector<std::pair<cplx, cplx>> pts;
        for (int k = 0; k < points; ++k)
            pts.emplace_back(cplx(uniform(rng, -0.5, 0.5), uniform(rng, 0.6, 1.5)),
                             cplx(uniform(rng, -0.5, 0.5), uniform(rng, 0.6, 1.5)));
        Calibration cal = calibrate_kernel(p, pts, 1e-12);
        for (size_t k = 0; k < pts.size(); ++k)
            r.add(Record("kernel")
                      .add("N", p.N)
                      .add("t", p.t)
                      .add("tau", pts[k].first)
                      .add("w", pts[k].second)
                      .add("direct", cal.direct[k])
                      .add("poincare", cal.poincare[k]))
                .verdict(cal.rel_errors[k], 0, cal.rel_errors[k] <= tol);
        r.add(Record("calibration").add("N", p.N).add("t", p.t).add("constant", cal.constant).add("points", pts.size()))
            .verdict(cal.stability, 0, cal.stability <= tol);
    }
    return r;
}

Report cmd_analytic(const Instance& I, const std::vector<i64>& ells, const std::vector<double>& etas, int z_count) {
    Report r = start(I, "analytic");
    auto rng = make_rng(I, 7);
    std::vector<cplx> zs;
    for (int k = 0; k < z_count; ++k) zs.emplace_back(uniform(rng, -0.5, 0.5), uniform(rng, 0.4, 1.5));
    for (i64 ell : ells)
        for (double eta : etas)
            for (cplx z : zs) {
                IdentityReport a = analytic_identity_check(I, ell, eta, z, I.config.tol_identity, I.config.tol_sum);
                r.add(Record("analytic_identity")
                          .add("ell", ell)
                          .add("eta", eta)
                          .add("z", z)
                          .add("lhs", a.lhs)
                          .add("rhs", a.rhs)
                          .add("lhs_terms", a.lhs_terms)
                          .add("rhs_terms", a.rhs_terms))
                    .verdict(a.diff, a.budget, a.pass);
            }
    return r;
}

Report cmd_poisson(const Instance& I) {
    Report r = start(I, "poisson");
    const i64 t = std::abs(I.K.delta);
    for (double v : {0.25, 0.5, 1.0, 2.0, 3.0})
        for (double eta : {0.5, 1.0, 2.0}) {
            PoissonReport p = poisson_twisted_check(I.chars, I.A.d_b, t, v, eta);
            r.add(Record("poisson").add("v", v).add("eta", eta).add("lhs", p.lhs).add("rhs", p.rhs))
                .verdict(p.residual, 0, p.residual <= 1e-8);
        }
    return r;
}

Report cmd_constant(const Instance& I) {
    Report r = start(I, "constant");
    const double tol = I.config.tol_identity;
    LValues L = l_values(I.chars);
    double lres = std::max(std::abs(L.l1 - L.l1_oracle), std::abs(L.l1prime - L.l1prime_oracle));
    r.add(Record("l_values").add("l1", L.l1).add("l1prime", L.l1prime).add("l1_oracle", L.l1_oracle)
              .add("l1prime_oracle", L.l1prime_oracle))
        .verdict(lres, 0, lres <= 1e-8);
    std::vector<ConstantTermReport> reps;
    for (double eta : {0.5, 1.0, 2.0}) {
        ConstantTermReport c = constant_term_check(I, L, eta, tol);
        reps.push_back(c);
        double d1 = std::abs(c.quadrature.c[1] - c.closed_form.c[1]);
        double d2 = std::abs(c.quadrature.c[2] - c.closed_form.c[2]);
        double d0 = std::abs(c.quadrature.c[0] - c.closed_form.c[0]);
        r.add(Record("constant_one").add("eta", eta).add("quadrature", c.quadrature.c[0]).add("closed", c.closed_form.c[0]))
            .verdict(d0, c.quad_error, d0 <= tol);
        r.add(Record("constant_omega2").add("eta", eta).add("quadrature", c.quadrature.c[1]).add("closed", c.closed_form.c[1]))
            .verdict(d1, c.quad_error, d1 <= tol);
        r.add(Record("constant_degomega").add("eta", eta).add("quadrature", c.quadrature.c[2]).add("closed", c.closed_form.c[2]))
            .verdict(d2, c.quad_error, d2 <= tol);
        r.add(Record("constant_definition")
                  .add("eta", eta)
                  .add("closed", coeff_text(c.closed_form))
                  .add("definition", coeff_text(c.from_definition)))
            .verdict(c.diff_definition, 0, c.diff_definition <= tol);
        r.add(Record("constant_sign_corrected")
                  .add("eta", eta)
                  .add("quadrature", coeff_text(c.quadrature))
                  .add("corrected", coeff_text(c.closed_corrected)))
            .verdict(c.diff_corrected, c.quad_error, c.diff_corrected <= tol);
    }
    const double slope = 2 * (cplx(0, 1) / (2 * pi) * L.l1).real();
    for (size_t k = 0; k + 1 < reps.size(); ++k) {
        double s = (reps[k + 1].quadrature.c[2] - reps[k].quadrature.c[2]) / std::log(reps[k + 1].eta / reps[k].eta);
        r.add(Record("constant_eta_slope").add("eta1", reps[k].eta).add("eta2", reps[k + 1].eta).add("slope", s)
                  .add("expected", slope))
            .verdict(std::abs(s - slope), 0, std::abs(s - slope) <= tol);
    }
    return r;
}

Report cmd_disk(const Instance& I, int per_sign) {
    Report r = start(I, "disk");
    DiskFrame F = disk_frame(I.herm, fixed_point(-I.herm.G));
    const double tol = I.config.tol_identity;
    for (int sign : {1, -1})
        for (const auto& e : small_elements(I, sign, per_sign)) {
            auto [x1, x2] = F.coords(I.split(e.y));
            i64 yy = mpq_class(e.nrd * I.K.delta).get_num().get_si();
            for (double eta : {0.5, 1.0, 2.0})
                for (bool plus : {true, false}) {
                    i64 ell = (plus ? yy : -yy) / std::abs(I.K.delta);
                    DiskIntegral d = i_phi(x1, x2, 1.0, eta, ell, I.K.delta, plus, I.config.tol_quad);
                    double half = 0.5 * i_o(ell, eta, I.K.delta);
                    double rel = std::abs(d.value - half) / std::abs(half);
                    r.add(Record("disk_integral")
                              .add("y", e.y.str())
                              .add("slice", plus ? "plus" : "minus")
                              .add("ell", ell)
                              .add("eta", eta)
                              .add("i_phi", d.value)
                              .add("half_i_o", half))
                        .verdict(rel, d.error / std::abs(half), rel <= tol);
                }
        }
    return r;
}

Report cmd_ddc(const Instance& I, int per_sign) {
    Report r = start(I, "ddc");
    DiskFrame F = disk_frame(I.herm, fixed_point(-I.herm.G));
    for (int sign : {1, -1})
        for (const auto& e : small_elements(I, sign, per_sign)) {
            auto [x1, x2] = F.coords(I.split(e.y));
            DdcResult d = ddc_check(x1, x2, 1e-3, 40);
            r.add(Record("ddc")
                      .add("b", e.y.str())
                      .add("sign", sign)
                      .add("points", d.points)
                      .add("near_singular", d.near_singular_bound))
                .verdict(d.max_residual, 1e-4, d.max_residual <= 1e-4 && d.near_singular_bound <= 1e-3);
        }
    return r;
}

Report cmd_enumerate(const Instance& I, int count) {
    Report r = start(I, "enumerate");
    auto rng = make_rng(I, 11);
    for (int k = 0; k < count; ++k) {
        int n = int(uniform_int(rng, 2, 4));
        std::vector<std::vector<i64>> B(n, std::vector<i64>(n));
        for (auto& row : B)
            for (auto& b : row) b = uniform_int(rng, -3, 3);
        QMat G(n, QVec(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                i64 s = i == j ? 1 : 0;
                for (int l = 0; l < n; ++l) s += B[l][i] * B[l][j];
                G[i][j] = s;
            }
        mpq_class bound(uniform_int(rng, 1, 40), uniform_int(rng, 1, 3));
        auto fp = fincke_pohst_exact(G, bound, I.enum_options());
        auto box = box_scan_exact(G, bound);
        auto fpd = fincke_pohst(to_eigen(G), bound.get_d(), I.enum_options());
        auto boxd = box_scan(to_eigen(G), bound.get_d());
        bool same = fp == box && fpd == boxd;
        r.add(Record("enumeration").add("dim", n).add("bound", bound).add("points", fp.size()).add("box_points", box.size()))
            .verdict(same ? 0.0 : 1.0, 0, same);
    }
    return r;
}

Report cmd_rescale(const Instance& I, int samples) {
    Report r = start(I, "rescale");
    auto rng = make_rng(I, 13);
    const i64 ad = std::abs(I.K.delta);
    for (const auto& f : I.family) {
        if (f.conjugate) continue;
        const i64 d = f.nu;
        for (i64 k : {1, 2}) {
            const i64 m = ad * d * k;
            if (gcd64(m, I.A.d_b) != d) continue;
            for (int sign : {1, -1}) {
                cplx z(uniform(rng, -0.5, 0.5), uniform(rng, 0.5, 1.5));
                std::size_t mapped = 0, failures = 0;
                std::set<std::vector<mpq_class>> images;
                for (size_t c = 0; c < I.reps.size(); ++c) {
                    const UnitaryLattice& U = f.lattices[c];
                    const mpq_class Na = I.reps[c].norm();
                    mpq_class target = mpq_class(sign * m / d) / (Na * I.K.delta);
                    OrderLattice L = scaled_lattice(I.A, I.K, I.phi, I.reps[c], I.O);
                    Eigen::MatrixXd G = unitary_majorant(U, f.herm, z);
                    double B = 4.0 * double(m / d) + 8;
                    for (const auto& x : fincke_pohst(G, B, I.enum_options())) {
                        if (quad_form(U.nrd, x) != target) continue;
                        Quat y = I.A.mul(f.mu, U.L.from_coords(x));
                        bool ok = membership(y, L) && I.A.nrd(y) * I.K.delta * Na == sign * m;
                        ++mapped;
                        failures += !ok;
                        auto v = y.vec();
                        images.insert(std::vector<mpq_class>(v.begin(), v.end()));
                    }
                }
                bool pass = failures == 0 && mapped > 0 && images.size() == mapped;
                r.add(Record("rescale_inclusion")
                          .add("nu", d)
                          .add("m", sign * m)
                          .add("z", z)
                          .add("mapped", mapped)
                          .add("distinct", images.size()))
                    .verdict(double(failures), 0, pass);
            }
        }
        double worst = 0;
        for (int s = 0; s < samples; ++s) {
            IVec x(4);
            for (auto& c : x) c = uniform_int(rng, -3, 3);
            Quat b = I.O.from_coords(x);
            cplx z(uniform(rng, -1, 1), uniform(rng, 0.3, 2));
            double lhs = f.herm.r_phi(I.split(b), z);
            double rhs = I.herm.r_phi(I.split(I.A.mul(f.mu, b)), z) / double(d);
            worst = std::max(worst, std::abs(lhs - rhs) / (1 + std::abs(rhs)));
        }
        r.add(Record("rescale_majorant").add("nu", d).add("mu", f.mu.str()).add("samples", samples))
            .verdict(worst, 0, worst <= 1e-10);
    }
    return r;
}

}  // namespace shimura

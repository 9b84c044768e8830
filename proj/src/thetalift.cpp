#include "shimura/thetalift.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace shimura {

using std::numbers::pi;

namespace {

const cplx I1(0, 1);

cplx e(double x) { return std::polar(1.0, 2 * pi * x); }

double binom(int n, int k) { return boost::math::binomial_coefficient<double>(unsigned(n), unsigned(k)); }

// a d - b c = 1
std::pair<i64, i64> complete_row(i64 c, i64 d) {
    i64 r0 = d, r1 = c, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        i64 q = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
        std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
    }
    // s0 d + t0 c = r0 = +-1
    if (r0 < 0) {
        s0 = -s0;
        t0 = -t0;
    }
    return {s0, -t0};
}

cplx eps(i64 d) { return mod_pos(d, 4) == 1 ? cplx(1) : I1; }

// eps_d (c/d) sqrt(c tau + d)
cplx j_half(i64 c, i64 d, cplx tau) { return eps(d) * double(kronecker(c, d)) * std::sqrt(double(c) * tau + double(d)); }

// upper bound for sum_l |He_mu(b l)| e^{-2 pi y l^2}, b = 2 sqrt(2 pi y), scaled as in theta_mu
double theta_abs_bound(int mu, double y) {
    double b = 2 * std::sqrt(2 * pi * y), a = 2 * pi * y;
    double s = std::pow(double(mu), mu);
    for (int k = 0; k <= mu; ++k)
        s += 2 * binom(mu, k) * std::pow(b, k) * std::pow(b + mu, mu - k) * std::tgamma((k + 1) / 2.0) /
             (2 * std::pow(a, (k + 1) / 2.0));
    return std::pow(2 * std::sqrt(2 * pi), -mu) * std::pow(y, -mu / 2.0) * s;
}

struct DirectSetup {
    Eigen::MatrixXd gram;
    Eigen::Matrix3d SD;
    double pref;
    double env_scale;
};

DirectSetup direct_setup(cplx tau, cplx w, const NSParams& p) {
    double v = tau.imag(), xi = w.real(), eta = w.imag();
    double Nt = double(p.N * p.t);
    Eigen::Matrix3d S, D, W;
    S << 1 / (4 * eta), -xi / eta, 4 * xi * xi / eta, 0, 1, -8 * xi, 0, 0, 4 * eta;
    D = Eigen::Vector3d(1, Nt, Nt / 4).asDiagonal();
    W = (2 / Nt) * Eigen::Vector3d(2, 1, 2).asDiagonal().toDenseMatrix();
    DirectSetup s;
    s.SD = S * D;
    s.gram = v * s.SD.transpose() * W * s.SD;
    s.pref = std::pow(4 * eta, -p.lambda) * std::sqrt(v);
    s.env_scale = 3 * Nt / (2 * v);
    return s;
}

template <class Enum>
KernelValue direct_sum(cplx tau, cplx w, const NSParams& p, double tol, const EnumOptions& opt, Enum&& enumerate) {
    DirectSetup s = direct_setup(tau, w, p);
    double u = tau.real();
    auto env = [&](double M) { return s.pref * std::pow(s.env_scale * M, p.lambda / 2.0) * std::exp(-pi * M); };
    double B = std::max(1.0, p.lambda / (2 * pi));
    double tail = shell_tail(s.gram, B, env);
    for (int k = 0; tail > tol; ++k) {
        if (k > 60) throw TailNotCertified("direct kernel tail bound does not reach the tolerance");
        B *= 2;
        tail = shell_tail(s.gram, B, env);
    }
    if (opt.max_cutoff > 0 && B > opt.max_cutoff)
        throw TailNotCertified("required cutoff " + std::to_string(B) + " exceeds the configured limit");
    auto pts = enumerate(s.gram, B);
    std::vector<cplx> vals;
    vals.reserve(pts.size());
    i64 Nt = p.N * p.t;
    for (const auto& x : pts) {
        i64 a = x[0], b = x[1], c = x[2];
        int ch = chi_t(a, p);
        if (ch == 0) continue;
        const Eigen::Vector3d xv{double(a), double(b), double(c)};
        Eigen::Vector3d xp = s.SD * xv;
        double M = xv.dot(s.gram * xv);
        i64 q = Nt * b * b - a * c;
        cplx P = std::pow(cplx(xp[0] - xp[2], -xp[1]), p.lambda);
        vals.push_back(double(ch) * e(u * double(q)) * P * std::exp(-pi * M));
    }
    std::sort(vals.begin(), vals.end(), [](cplx x, cplx y) { return std::abs(x) < std::abs(y); });
    KernelValue out;
    for (cplx t : vals) out.value += t;
    out.value *= s.pref;
    out.tail = tail;
    out.terms = vals.size();
    return out;
}

}  // namespace

int chi_t(i64 a, const NSParams& p) {
    if (gcd64(a, p.level()) != 1) return 0;
    int s = kronecker(-1, a);
    int r = (p.lambda % 2 == 0) ? 1 : s;
    return r * kronecker(p.t, a);
}

QExpansion shimura_lift_coeffs(const QExpansion& c, i64 t, int lambda, const std::function<int(i64)>& chi,
                               i64 max_ell) {
    if (t * max_ell * max_ell > c.hi() || t < c.lo())
        throw WindowExceeded("lift needs input exponents up to " + std::to_string(t * max_ell * max_ell));
    QExpansion out(c.ring(), 1, std::max<i64>(1, max_ell));
    for (i64 l = 1; l <= max_ell; ++l) {
        Coeff acc = out.zero();
        for (i64 m : divisors(l)) {
            int x = chi(m);
            if (x == 0) continue;
            mpz_class pw;
            mpz_pow_ui(pw.get_mpz_t(), mpz_class(m).get_mpz_t(), unsigned(std::abs(lambda - 1)));
            mpq_class f = lambda >= 1 ? mpq_class(pw) : mpq_class(1, pw);
            acc = add(acc, scale(c.get(t * (l / m) * (l / m)), f * x));
        }
        out.set(l, acc);
    }
    return out;
}

double hermite(int mu, double x) {
    if (mu == 0) return 1;
    double h0 = 1, h1 = x;
    for (int k = 1; k < mu; ++k) {
        double h2 = x * h1 - k * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

cplx theta_mu(cplx tau, double alpha, int mu, double tol) {
    double u = tau.real(), v = tau.imag();
    double b = 2 * std::sqrt(2 * pi * v);
    cplx s = hermite(mu, 0);
    for (i64 l = 1;; ++l) {
        double g = std::exp(-2 * pi * v * double(l * l));
        double bound = 2 * std::pow(b * double(l) + mu, mu) * g;
        double x = b * double(l);
        s += g * (hermite(mu, x) * e(u * double(l * l) + 2 * alpha * double(l)) +
                  hermite(mu, -x) * e(u * double(l * l) - 2 * alpha * double(l)));
        // bounds of later terms shrink at least geometrically once past the peak
        if (double(l) * b > mu + 1 && bound < tol * 1e-3 && std::exp(-2 * pi * v * (2 * l + 1)) < 0.5) break;
    }
    return std::pow(2 * std::sqrt(2 * pi), -mu) * std::pow(v, -mu / 2.0) * s;
}

KernelValue ns_kernel_direct(cplx tau, cplx w, const NSParams& p, double tol, const EnumOptions& opt) {
    return direct_sum(tau, w, p, tol, opt, [&](const Eigen::MatrixXd& g, double B) { return fincke_pohst(g, B, opt); });
}

KernelValue ns_kernel_direct_serial(cplx tau, cplx w, const NSParams& p, double tol) {
    return direct_sum(tau, w, p, tol, EnumOptions{}, [&](const Eigen::MatrixXd& g, double B) { return fincke_pohst_serial(g, B); });
}

KernelValue ns_kernel_sharp(cplx tau, cplx w, const NSParams& p, double tol, const EnumOptions& opt) {
    double Nt = double(p.N * p.t);
    cplx pref = std::pow(2.0, -2 * p.lambda - 0.5) * std::pow(Nt, -1.5 * p.lambda - 0.25) *
                std::pow(-I1 * tau, -p.kappa() / 2.0) * std::pow(std::conj(w), -2 * p.lambda);
    cplx tau2 = -1.0 / (4 * Nt * tau), w2 = -1.0 / (2 * Nt * w);
    KernelValue k = ns_kernel_direct(tau2, w2, p, tol / std::abs(pref), opt);
    k.value *= pref;
    k.tail *= std::abs(pref);
    return k;
}

KernelValue ns_kernel_poincare(cplx tau, cplx w, const NSParams& p, double tol) {
    const double v = tau.imag(), xi = w.real(), eta = w.imag();
    const int lam = p.lambda, kap = p.kappa();
    const i64 L = p.level();
    const double C = (lam % 2 ? -1.0 : 1.0) * std::pow(2.0, -4 * lam) * std::pow(double(p.N * p.t), lam / 2.0 + 0.25);
    const double theta_tol = 1e-15;

    // bound on |term| for given |m| and s = |c tau + d|^2
    auto term_bound = [&](double m, double s) {
        double y = v / s, tot = 0;
        for (int mu = 0; mu <= lam; ++mu)
            tot += binom(lam, mu) * std::pow(4.0, mu) * std::pow(eta, 1 - mu) * std::pow(m, lam - mu) *
                   std::pow(s / v, lam - mu) * std::pow(s, -kap / 4.0) * theta_abs_bound(mu, y);
        return std::abs(C) * tot * std::exp(-pi * eta * eta * m * m * s / (4 * v));
    };
    auto coset_count = [&](double S) {
        double cm = std::floor(std::sqrt(S) / (double(L) * v));
        return cm * (2 * std::sqrt(S) + 1);
    };
    const double s_min = std::pow(double(L) * v, 2);
    auto tail_bound = [&](double X) {
        double Smax = 4 * v * X / (pi * eta * eta);
        double tail = 0;
        // identity coset, |m| beyond the enumerated range
        for (double m = std::floor(std::sqrt(Smax)) + 1;; m += 1) {
            double t = 2 * term_bound(m, 1);
            tail += t;
            if (t < 1e-300 || t < 1e-20 * tail) break;
        }
        for (double m = 1;; m += 1) {
            double S0 = std::max(Smax / (m * m), s_min), part = 0;
            for (int k = 0; k < 400; ++k) {
                double lo = S0 * std::pow(2.0, k);
                double t = coset_count(2 * lo) * term_bound(m, lo);
                part += t;
                if (t < 1e-300 || (k > 3 && t < 1e-20 * part)) break;
            }
            tail += 2 * part;
            if (part < 1e-300 || (S0 == s_min && part < 1e-20 * tail)) break;
        }
        return tail;
    };
    double X = 20, tail = tail_bound(X);
    while (tail > tol / 2) {
        X += 5;
        if (X > 2000) throw TailNotCertified("Poincare expansion tail bound does not reach the tolerance");
        tail = tail_bound(X);
    }
    const double Smax = 4 * v * X / (pi * eta * eta);

    struct Coset {
        i64 c, d;
        cplx gtau;
        cplx factor;  // chi_t(d)^{-1} j_{kappa/2}(gamma, tau)^{-1}
    };
    std::vector<Coset> cosets{{0, 1, tau, 1.0}};
    for (i64 c = L; std::pow(double(c) * v, 2) <= Smax; c += L) {
        double r = std::sqrt(Smax - std::pow(double(c) * v, 2));
        double ctr = -double(c) * tau.real();
        for (i64 d = i64(std::ceil(ctr - r)); d <= i64(std::floor(ctr + r)); ++d) {
            if (gcd64(c, d) != 1) continue;
            auto [a, b] = complete_row(c, d);
            cplx gt = (double(a) * tau + double(b)) / (double(c) * tau + double(d));
            int ch = chi_t(d, p);
            cosets.push_back({c, d, gt, 1.0 / (double(ch) * std::pow(j_half(c, d, tau), kap))});
        }
    }
    std::vector<cplx> vals;
    std::size_t theta_calls = 0;
    for (const auto& g : cosets) {
        double s = std::norm(double(g.c) * tau + double(g.d));
        double Im = g.gtau.imag();
        i64 mmax = i64(std::floor(std::sqrt(Smax / s)));
        for (i64 m = -mmax; m <= mmax; ++m) {
            if (m == 0) continue;
            int cm = chi_t(m, p);
            if (cm == 0) continue;
            double ex = std::exp(-pi * eta * eta * double(m * m) / (4 * Im));
            cplx acc = 0;
            for (int mu = 0; mu <= lam; ++mu) {
                acc += binom(lam, mu) * std::pow(4.0, mu) * std::pow(eta, 1 - mu) * double(cm) *
                       std::pow(double(m), lam - mu) * std::pow(Im, mu - lam) *
                       theta_mu(g.gtau, -xi * double(m) / 2, mu, theta_tol);
                ++theta_calls;
            }
            vals.push_back(C * g.factor * ex * acc);
        }
    }
    std::sort(vals.begin(), vals.end(), [](cplx x, cplx y) { return std::abs(x) < std::abs(y); });
    KernelValue out;
    for (cplx t : vals) out.value += t;
    out.tail = tail + double(theta_calls) * theta_tol * std::abs(C) * 64;
    out.terms = vals.size();
    return out;
}

Calibration calibrate_kernel(const NSParams& p, const std::vector<std::pair<cplx, cplx>>& points, double tol) {
    Calibration cal;
    auto& direct = cal.direct;
    auto& poinc = cal.poincare;
    for (const auto& [tau, w] : points) {
        direct.push_back(ns_kernel_sharp(tau, w, p, tol).value);
        poinc.push_back(ns_kernel_poincare(tau, w, p, tol).value);
    }
    cal.constant = direct.front() / poinc.front();
    for (size_t k = 0; k < points.size(); ++k) {
        cplx ratio = direct[k] / poinc[k];
        cal.stability = std::max(cal.stability, std::abs(ratio / cal.constant - 1.0));
        double rel = std::abs(direct[k] / cal.constant - poinc[k]) / std::abs(poinc[k]);
        cal.rel_errors.push_back(rel);
        cal.max_rel_error = std::max(cal.max_rel_error, rel);
    }
    return cal;
}

TruncatedSum theta_o_coeff(const Instance& I, i64 n, double v, cplx z, double tol) {
    return psi_o(I.ortho, mpq_class(n), v, z, tol, I.enum_options());
}

TruncatedSum theta_u_coeff(const Instance& I, i64 ell, double eta, cplx z, double tol) {
    const i64 m = std::abs(I.K.delta) * ell;
    const double norm = 1.0 / (2.0 * I.K.class_number * I.K.unit_count);
    const double q = std::exp(-2 * pi * double(m) * eta);
    TruncatedSum total;
    double per = tol / (norm * q * double(I.family.size()));
    for (const auto& f : I.family) {
        cplx zf = f.conjugate ? std::conj(z) : z;
        TruncatedSum s = psi_u(f.lattices, f.herm, m, eta, zf, per, I.enum_options());
        total.value += s.value;
        total.tail += s.tail;
        total.terms += s.terms;
        total.cutoff = std::max(total.cutoff, s.cutoff);
    }
    total.value *= norm * q;
    total.tail *= norm * q;
    return total;
}

IdentityReport analytic_identity_check(const Instance& I, i64 ell, double eta, cplx z, double tol, double sum_tol) {
    if (ell == 0) throw DomainError("ell must be nonzero");
    const double ad = double(std::abs(I.K.delta));
    const double r2d = std::sqrt(2 * ad);
    IdentityReport rep;
    Eigen::MatrixXd G = orthogonal_majorant(I.ortho, z);
    auto divs = divisors(std::abs(ell));
    for (i64 m : divs) {
        int cm = chi_prime(I.chars, m);
        if (cm == 0) continue;
        i64 q = std::abs(ell) / m;
        mpq_class n(std::abs(I.K.delta) * q * q);
        double nd = n.get_d(), md = double(m), shift = 2 * ad * double(ell) / md;
        auto term = [&](const IVec& x, double M) {
            if (quad_form(I.ortho.nrd, x) != n) return 0.0;
            double rs = std::sqrt(M + nd);
            return 0.5 * (pi * eta * md * (r2d * rs + shift) - 1) * std::exp(-r2d * pi * md * eta * rs);
        };
        double a = 0.5 * pi * eta * md * r2d, b = 0.5 * (pi * eta * md * std::abs(shift) + 1), c = r2d * pi * md * eta;
        auto env = [&](double M) { return linexp_envelope(a, b, c, std::sqrt(M + nd)); };
        TruncatedSum s = majorant_sum(G, term, env, sum_tol / (2.0 * double(divs.size())), 2 * nd + 1, I.enum_options());
        rep.lhs += cm * s.value;
        rep.budget += s.tail;
        rep.lhs_terms += s.terms;
    }
    TruncatedSum r = theta_u_coeff(I, ell, eta, z, sum_tol / 2);
    rep.rhs = r.value;
    rep.budget += r.tail;
    rep.rhs_terms = r.terms;
    rep.diff = std::abs(rep.lhs - rep.rhs);
    rep.pass = rep.diff <= tol + rep.budget;
    return rep;
}

PoissonReport poisson_twisted_check(const CharData& C, i64 d_b, i64 t, double v, double eta) {
    PoissonReport r;
    const double D = double(d_b), T = double(t);
    // odd character: the m and -m terms coincide
    double a = pi * eta * eta * v * v / 4;
    std::vector<double> lt;
    for (i64 m = 1; a * double(m * m) < 750; ++m)
        if (int x = chi_prime(C, m)) lt.push_back(2.0 * x * double(m) * std::exp(-a * double(m * m)));
    std::sort(lt.begin(), lt.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
    for (double x : lt) r.lhs += x;
    double b = pi / (4 * D * D * T * T * eta * eta * v * v);
    cplx s = 0;
    for (i64 m = 1; b * double(m * m) < 750; ++m) {
        cplx g = gauss_sum(C, m) - gauss_sum(C, -m);
        s += g * double(m) * std::exp(-b * double(m * m));
    }
    r.rhs = -I1 / (2 * D * D * T * T) / std::pow(eta * v, 3) * s;
    r.residual = std::abs(r.lhs - r.rhs);
    return r;
}

ConstantTermReport constant_term_check(const Instance& I, const LValues& L, double eta, double tol) {
    ConstantTermReport rep;
    rep.eta = eta;
    const double D = double(I.A.d_b), t = double(std::abs(I.K.delta));
    const CharData& C = I.chars;
    auto S = [&](double v) {
        double a = pi * eta * eta / (4 * v), s = 0;
        for (i64 m = 1; a * double(m * m) < 750; ++m)
            if (int x = chi_prime(C, m)) s += 2.0 * x * double(m) * std::exp(-a * double(m * m));
        return s;
    };
    // v = e^w; a^o(|delta| v) = -omega2 - degomega (log |delta| v + log D_B)
    auto base = [&](double w) {
        double v = std::exp(w);
        return 0.125 * std::sqrt(v) * (eta / v) * S(v);
    };
    double M = double(C.modulus);
    double wlo = std::log(pi * eta * eta / (4 * 750.0));
    double whi = std::log(M * M * eta * eta * 60 / (4 * pi));
    double e1 = 0, e2 = 0;
    double c_omega = -integrate(base, wlo, whi, 1e-11, &e1);
    double c_deg = -integrate([&](double w) { return base(w) * (std::log(t) + w + std::log(D)); }, wlo, whi, 1e-11, &e2);
    rep.quadrature = Symbolic{{0, c_omega, c_deg}};
    rep.quad_error = e1 + e2;

    const double gamma = std::numbers::egamma;
    const cplx k = I1 / (2 * pi);
    const double logs = std::log(4 * D * D * D * t * t * t * eta * eta) - gamma - std::log(pi);
    auto real_of = [](cplx z) { return z.real(); };
    rep.closed_form = Symbolic{{0, real_of(k * L.l1), real_of(k * (L.l1 * logs - 2.0 * L.l1prime))}};
    rep.closed_corrected = Symbolic{{0, real_of(k * L.l1), real_of(k * (L.l1 * logs + 2.0 * L.l1prime))}};
    cplx A = std::log(4 * D * D * D * t * t * t / pi) - gamma - 2.0 * L.l1prime / L.l1;
    rep.from_definition = Symbolic{{0, real_of(k * L.l1), real_of(k * L.l1 * (2 * std::log(eta) + A))}};

    auto dist = [](const Symbolic& a, const Symbolic& b) {
        double d = 0;
        for (int i = 0; i < 3; ++i) d = std::max(d, std::abs(a.c[i] - b.c[i]));
        return d;
    };
    rep.diff_closed = dist(rep.quadrature, rep.closed_form);
    rep.diff_corrected = dist(rep.quadrature, rep.closed_corrected);
    rep.diff_definition = dist(rep.closed_form, rep.from_definition);
    rep.pass = rep.diff_closed <= tol && rep.diff_definition <= tol;
    return rep;
}

}  // namespace shimura

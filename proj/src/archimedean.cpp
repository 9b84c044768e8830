#include "shimura/archimedean.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/quadrature/trapezoidal.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace shimura {

using std::numbers::pi;

namespace {

double to_d(const mpq_class& q) { return q.get_d(); }

Mat2 diag_flip(const Mat2& m) {
    Mat2 d = m;
    d(0, 1) = -d(0, 1);
    d(1, 0) = -d(1, 0);
    return d;
}

}  // namespace

Mat2 Splitting::operator()(const Eigen::Vector4d& x) const {
    return x[0] * Mat2::Identity() + x[1] * i + x[2] * j + x[3] * (i * j);
}

Mat2 Splitting::operator()(const Quat& x) const {
    return (*this)(Eigen::Vector4d(to_d(x.c[0]), to_d(x.c[1]), to_d(x.c[2]), to_d(x.c[3])));
}

double Splitting::max_relation_error(double a, double b) const {
    double e = (i * i - a * Mat2::Identity()).cwiseAbs().maxCoeff();
    e = std::max(e, (j * j - b * Mat2::Identity()).cwiseAbs().maxCoeff());
    e = std::max(e, (i * j + j * i).cwiseAbs().maxCoeff());
    return e;
}

Splitting make_splitting(const QuatAlgebra& A, const Embedding& ref) {
    double a = to_d(A.a), b = to_d(A.b);
    Splitting S;
    if (a > 0) {
        S.i << std::sqrt(a), 0, 0, -std::sqrt(a);
        S.j << 0, 1, b, 0;
    } else {
        S.j << std::sqrt(b), 0, 0, -std::sqrt(b);
        S.i << 0, 1, a, 0;
    }
    Mat2 g = S(ref.g);
    double d = std::sqrt(std::abs(g.determinant()));
    Mat2 minus_G = -g / d;
    if (minus_G(1, 0) < 0) {
        S.i = diag_flip(S.i);
        S.j = diag_flip(S.j);
    }
    return S;
}

Mat2 adj(const Mat2& m) {
    Mat2 r;
    r << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return r;
}

double nrd_pair(const Mat2& u, const Mat2& v) { return 0.5 * (u * adj(v)).trace(); }

Mat2 j_z(cplx z) {
    double x = z.real(), y = z.imag();
    Mat2 m;
    m << x, -(x * x + y * y), 1, -x;
    return m / y;
}

QMat j_z_rational(const mpq_class& x, const mpq_class& y) {
    return {{x / y, -(x * x + y * y) / y}, {1 / y, -x / y}};
}

cplx fixed_point(const Mat2& J) { return cplx(J(0, 0), 1.0) / J(1, 0); }

double r_o(const Mat2& v, cplx z) {
    double p = nrd_pair(v, j_z(z));
    return 2 * p * p - 2 * v.determinant();
}

double r_o(const Splitting& S, const Quat& v, cplx z) { return r_o(S(v), z); }

std::pair<mpq_class, mpq_class> herm_form(const QuatAlgebra& A, const Quat& x, const Quat& y, const Embedding& phi,
                                          i64 delta) {
    Quat xy = A.mul(x, A.conj(y));
    mpq_class re = mpq_class(delta) * A.trd(xy) / 2;
    mpq_class im = A.trd(A.mul(phi.g, xy)) / 2;
    return {re, im};
}

cplx HermSpace::form(const Mat2& x, const Mat2& y) const {
    Mat2 xy = x * adj(y);
    return cplx(delta / 2 * xy.trace(), std::sqrt(std::abs(delta)) / 2 * (g * xy).trace());
}

Mat2 HermSpace::zeta(cplx z) const {
    Mat2 J = j_z(z);
    Eigen::Matrix4d L;
    for (int k = 0; k < 4; ++k) {
        Mat2 e = Mat2::Zero();
        e(k / 2, k % 2) = 1;
        Mat2 im = e * J + G * e;
        for (int r = 0; r < 4; ++r) L(r, k) = im(r / 2, r % 2);
    }
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(L, Eigen::ComputeFullV);
    Eigen::Vector4d v = svd.matrixV().col(3);
    Mat2 m;
    m << v[0], v[1], v[2], v[3];
    return m;
}

double HermSpace::r_phi(const Mat2& b, cplx z) const {
    Mat2 v = zeta(z);
    double vv = form(v, v).real();
    if (!(vv < 0)) throw DomainError("zeta(z) is not a negative line");
    return -2 * std::norm(form(b, v)) / vv;
}

HermSpace herm_space(const Splitting& S, const Embedding& phi, i64 delta) {
    HermSpace H;
    H.g = S(phi.g);
    H.G = H.g / std::sqrt(double(std::abs(delta)));
    H.delta = double(delta);
    return H;
}

double r_phi(const Splitting& S, const Quat& b, cplx z, const Embedding& phi, i64 delta) {
    return herm_space(S, phi, delta).r_phi(S(b), z);
}

std::pair<cplx, cplx> DiskFrame::coords(const Mat2& b) const { return {H.form(e, b), -H.form(f, b)}; }

cplx DiskFrame::disk_point(cplx z) const {
    Mat2 v = H.zeta(z);
    return H.form(v, e) / (-H.form(v, f));
}

DiskFrame disk_frame(const HermSpace& H, cplx z0) {
    DiskFrame F{H, Mat2::Zero(), Mat2::Zero()};
    Mat2 v = H.zeta(z0);
    F.f = v / std::sqrt(-H.form(v, v).real());
    Mat2 a = Mat2::Identity(), bi, bj;
    bi << 0, 1, 0, 0;
    bj << 0, 0, 1, 0;
    double best = -1;
    for (const Mat2& x : {a, bi, bj, Mat2(a - bi)}) {
        Mat2 c = x + H.scale(H.form(x, F.f), F.f);
        double n = H.form(c, c).real();
        if (n > best) {
            best = n;
            F.e = c / std::sqrt(n);
        }
    }
    return F;
}

double r_phi_disk(cplx xi1, cplx xi2, cplx Z) { return 2 * std::norm(Z * xi1 - xi2) / (1 - std::norm(Z)); }

double majorant_identity(const Splitting&, const Mat2& y, double t, const HermSpace& H, cplx z) {
    Mat2 x = t * y.inverse() * H.g * y;
    double lhs = r_o(x, z) + 2 * x.determinant();
    double ny = y.determinant();
    double m = H.r_phi(y, z) + H.delta * ny;
    double rhs = 2 * t * t / (std::abs(H.delta) * ny * ny) * m * m;
    return std::abs(lhs - rhs);
}

double i_o(i64 ell, double eta, i64 delta) {
    double c = 2 * pi * std::abs(double(ell * delta)) * eta;
    double v = 2 * std::exp(-c) / c;
    if (ell < 0) v -= 4 * std::exp(c) * beta1(2 * c);
    return v;
}

double i_o_quad(i64 ell, double eta, i64 delta) {
    double c = 2 * pi * std::abs(double(ell * delta)) * eta;
    double sg = ell > 0 ? 1 : -1;
    // s = 1 + u, with e^{-c} scaled out
    auto f = [&](double u) {
        double s = 1 + u;
        return 2 * (1 + sg / s) * std::exp(-c * u) * s / (s + 1);
    };
    return std::exp(-c) * integrate(f, 0, std::numeric_limits<double>::infinity(), 1e-13);
}

DiskIntegral i_phi(cplx xi1, cplx xi2, double norm_a, double eta, i64 ell, i64 delta, bool omega_plus, double tol) {
    double yy = std::norm(xi1) - std::norm(xi2);
    cplx zc = std::norm(xi1) > std::norm(xi2) ? xi2 / xi1 : std::conj(xi1 / xi2);
    double scale = 2 * pi * norm_a * eta;
    auto arg = [&](double u, double th) {
        double r = std::sqrt(u / (1 + u));
        cplx w = std::polar(r, th);
        cplx Z = (w + zc) / (1.0 + std::conj(zc) * w);
        double R = r_phi_disk(xi1, xi2, Z);
        return scale * (omega_plus ? R : R + 2 * yy);
    };
    boost::math::quadrature::tanh_sinh<double> ts;
    boost::math::quadrature::exp_sinh<double> es;
    double err_inner = 0;
    auto radial = [&](double u) {
        if (!(u < 1e12)) return 0.0;
        double e = 0;
        double v = boost::math::quadrature::trapezoidal(
            [&](double th) { return beta1(arg(u, th)); }, 0.0, 2 * pi, tol * 1e-2, 12, &e);
        if (v != 0) err_inner = std::max(err_inner, e / std::abs(v));
        return v;
    };
    bool singular = (yy > 0) == omega_plus;
    const double u0 = singular ? 1e-14 : 0.0;
    double e1 = 0, e2 = 0;
    double v1 = ts.integrate(radial, u0, 1.0, tol * 1e-2, &e1);
    double v2 = es.integrate(radial, 1.0, std::numeric_limits<double>::infinity(), tol * 1e-2, &e2);
    // int_0^{u0} of the angular integral, bounded using beta_1(r) <= 1 - log r near 0
    double head = singular ? 2 * pi * u0 * (2 + std::abs(std::log(std::max(arg(u0, 0.0), 1e-300)))) : 0.0;
    double pref = std::exp(-2 * pi * double(ell) * std::abs(double(delta)) * eta) / pi;
    DiskIntegral out;
    out.value = pref * (v1 + v2);
    out.error = pref * (e1 + e2 + err_inner * (std::abs(v1) + std::abs(v2)) + head);
    if (!(out.error <= tol * std::max(1.0, std::abs(out.value)) * 10))
        throw QuadratureFailure("disk quadrature error estimate too large");
    return out;
}

DdcResult ddc_check(cplx xi1, cplx xi2, double step, double grid, double exclusion) {
    double bb = std::norm(xi1) - std::norm(xi2);
    bool pos = bb > 0;
    cplx z0 = pos ? xi2 / xi1 : std::conj(xi1 / xi2);
    auto arg = [&](cplx Z) {
        double R = r_phi_disk(xi1, xi2, Z);
        return pos ? R : R + 2 * bb;
    };
    auto gr = [&](cplx Z) { return beta1(2 * pi * arg(Z)); };
    auto smooth = [&](cplx Z) { return gr(Z) + std::log(std::norm(Z - z0)); };
    auto density = [&](cplx Z) {
        double R = r_phi_disk(xi1, xi2, Z);
        double d = pos ? 0.5 * (2 * pi * (R + 2 * bb) - 1) * std::exp(-2 * pi * R)
                       : 0.5 * (2 * pi * R - 1) * std::exp(-2 * pi * (R + 2 * bb));
        double w = 1 - std::norm(Z);
        return d / (w * w);
    };
    const double extent = 0.85;
    int n = std::max(2, int(grid));
    double maxrhs = 0, maxres = 0;
    int count = 0;
    std::vector<std::pair<double, double>> vals;
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b) {
            cplx Z(-extent + 2 * extent * a / n, -extent + 2 * extent * b / n);
            if (std::abs(Z) > extent || std::abs(Z - z0) < exclusion) continue;
            // five-point stencil at h and 2h, Richardson-combined
            auto five = [&](double h) {
                return (gr(Z + h) + gr(Z - h) + gr(Z + cplx(0, h)) + gr(Z - cplx(0, h)) - 4 * gr(Z)) / (h * h);
            };
            double l1 = five(step), l2 = five(2 * step);
            double lap = l1 + (l1 - l2) / 3;
            double rhs = density(Z);
            vals.push_back({lap / 8, rhs});
            maxrhs = std::max(maxrhs, std::abs(rhs));
            ++count;
        }
    for (auto& [l, r] : vals) maxres = std::max(maxres, std::abs(l - r));
    DdcResult out;
    out.points = count;
    out.max_residual = maxrhs > 0 ? maxres / maxrhs : maxres;
    double bound = 0;
    for (double th : {0.3, 1.9, 4.1}) {
        double prev = 0;
        for (int k = 2; k <= 6; ++k) {
            double r = std::pow(10.0, -k);
            double g = smooth(z0 + std::polar(r, th));
            if (k == 6) bound = std::max(bound, std::abs(g - prev));
            prev = g;
        }
    }
    out.near_singular_bound = bound;
    return out;
}

TruncatedSum majorant_sum(const Eigen::MatrixXd& gram, const std::function<double(const IVec&, double)>& term,
                          const std::function<double(double)>& env, double tol, double start,
                          const EnumOptions& opt) {
    if (!certify_positive_definite(gram)) throw DomainError("majorant is not positive definite");
    double B = std::max(start, 1.0);
    double tail = shell_tail(gram, B, env);
    for (int k = 0; tail > tol; ++k) {
        if (k > 60) throw BudgetExceeded("tail bound does not reach the tolerance");
        B *= 2;
        tail = shell_tail(gram, B, env);
    }
    if (opt.max_cutoff > 0 && B > opt.max_cutoff)
        throw BudgetExceeded("required cutoff " + std::to_string(B) + " exceeds the configured limit");
    auto pts = fincke_pohst(gram, B, opt);
    std::vector<double> vals;
    vals.reserve(pts.size());
    for (const auto& x : pts) {
        Eigen::VectorXd v(x.size());
        for (size_t i = 0; i < x.size(); ++i) v[i] = double(x[i]);
        double t = term(x, v.dot(gram * v));
        if (t != 0) vals.push_back(t);
    }
    std::sort(vals.begin(), vals.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    TruncatedSum s;
    for (double t : vals) s.value += t;
    s.tail = tail;
    s.cutoff = B;
    s.terms = vals.size();
    return s;
}

OrthogonalLattice orthogonal_lattice(const QuatAlgebra& A, const OrderLattice& O, const Splitting& S) {
    OrthogonalLattice L;
    L.T = trace_zero_sublattice(O);
    L.nrd = nrd_gram(A, L.T);
    for (size_t i = 0; i < L.T.basis.size(); ++i) L.img.push_back(S(L.T.elem(i)));
    return L;
}

Eigen::MatrixXd orthogonal_majorant(const OrthogonalLattice& L, cplx z) {
    Mat2 J = j_z(z);
    int n = int(L.img.size());
    Eigen::VectorXd l(n);
    for (int i = 0; i < n; ++i) l[i] = nrd_pair(L.img[i], J);
    return 2 * l * l.transpose() - to_eigen(L.nrd);
}

TruncatedSum gr_o(const OrthogonalLattice& L, const mpq_class& n, double v, cplx z, double tol,
                  const EnumOptions& opt) {
    Eigen::MatrixXd G = orthogonal_majorant(L, z);
    double nd = to_d(n);
    auto term = [&](const IVec& x, double M) {
        if (quad_form(L.nrd, x) != n) return 0.0;
        double arg = 2 * pi * v * (M - nd);
        if (!(arg > 1e-12)) throw OnCycle("z lies on the cycle");
        return beta1(arg);
    };
    auto env = [&](double M) { return std::exp(-2 * pi * v * (M - nd)); };
    double start = std::max(2 * std::abs(nd), nd + 1 / (2 * pi * v));
    return majorant_sum(G, term, env, tol, start, opt);
}

TruncatedSum psi_o(const OrthogonalLattice& L, const mpq_class& n, double v, cplx z, double tol,
                   const EnumOptions& opt) {
    Eigen::MatrixXd G = orthogonal_majorant(L, z);
    double nd = to_d(n);
    auto term = [&](const IVec& x, double M) {
        if (quad_form(L.nrd, x) != n) return 0.0;
        double R = M - nd;
        return (4 * pi * v * (R + 2 * nd) - 1) * std::exp(-2 * pi * v * R);
    };
    auto env = [&](double M) {
        return linexp_envelope(4 * pi * v, 4 * pi * v * std::abs(nd) + 1, 2 * pi * v, M) * std::exp(2 * pi * v * nd);
    };
    return majorant_sum(G, term, env, tol, 2 * std::abs(nd) + 1, opt);
}

UnitaryLattice unitary_lattice(const QuatAlgebra& A, const OrderLattice& L, const mpq_class& norm_a,
                               const Splitting& S) {
    UnitaryLattice U;
    U.L = L;
    U.nrd = nrd_gram(A, L);
    U.norm_a = norm_a;
    for (size_t i = 0; i < L.basis.size(); ++i) U.img.push_back(S(L.elem(i)));
    return U;
}

Eigen::MatrixXd unitary_majorant(const UnitaryLattice& L, const HermSpace& H, cplx z) {
    Mat2 v = H.zeta(z);
    double vv = H.form(v, v).real();
    int n = int(L.img.size());
    std::vector<cplx> lam(n);
    for (int i = 0; i < n; ++i) lam[i] = H.form(L.img[i], v);
    Eigen::MatrixXd G(n, n);
    Eigen::MatrixXd N = to_eigen(L.nrd);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = -2 / vv * (lam[i] * std::conj(lam[j])).real() + H.delta * N(i, j);
    return G;
}

namespace {

// s = delta nrd(y) for y in the omega_plus / omega_minus slice of phi(a)^{-1} O
template <class F>
TruncatedSum unitary_sum(const std::vector<UnitaryLattice>& lats, const HermSpace& H, i64 m, double eta, cplx z,
                         double tol, const EnumOptions& opt, F&& per_term, bool green) {
    TruncatedSum total;
    double per_tol = tol / double(std::max<size_t>(1, lats.size()));
    for (const auto& U : lats) {
        double N = to_d(U.norm_a);
        mpq_class target = mpq_class(m) / U.norm_a;
        mpq_class nrd_plus = target / mpq_class(long(H.delta)), nrd_minus = -nrd_plus;
        double sabs = std::abs(to_d(target));
        double c = 2 * pi * N * eta;
        Eigen::MatrixXd G = unitary_majorant(U, H, z);
        auto term = [&](const IVec& x, double M) {
            mpq_class q = quad_form(U.nrd, x);
            if (q == nrd_plus) return per_term(true, c, M, to_d(target));
            if (q == nrd_minus) return per_term(false, c, M, -to_d(target));
            return 0.0;
        };
        std::function<double(double)> env;
        if (green)
            env = [=](double M) { return std::exp(-c * (M - sabs)); };
        else
            env = [=](double M) { return 0.5 * linexp_envelope(c, c * sabs + 1, c, M) * std::exp(c * sabs); };
        double start = 2 * sabs + (green ? 1 / c : 1.0);
        TruncatedSum s = majorant_sum(G, term, env, per_tol, start, opt);
        total.value += s.value;
        total.tail += s.tail;
        total.cutoff = std::max(total.cutoff, s.cutoff);
        total.terms += s.terms;
    }
    return total;
}

}  // namespace

TruncatedSum gr_u(const std::vector<UnitaryLattice>& lats, const HermSpace& H, i64 m, double eta, cplx z,
                  int unit_count, double tol, const EnumOptions& opt) {
    auto per_term = [](bool plus, double c, double M, double s) {
        // plus: beta_1(c R) with R = M - s; minus: beta_1(c (R + 2s)) = beta_1(c (M + s))
        double arg = plus ? c * (M - s) : c * (M + s);
        if (!(arg > 1e-12)) throw OnCycle("z lies on the cycle");
        return beta1(arg);
    };
    TruncatedSum s = unitary_sum(lats, H, m, eta, z, tol * unit_count, opt, per_term, true);
    s.value /= unit_count;
    s.tail /= unit_count;
    return s;
}

TruncatedSum psi_u(const std::vector<UnitaryLattice>& lats, const HermSpace& H, i64 m, double eta, cplx z,
                   double tol, const EnumOptions& opt) {
    auto per_term = [](bool plus, double c, double M, double s) {
        double R = M - s;
        if (plus) return 0.5 * (c * (R + 2 * s) - 1) * std::exp(-c * R);
        return 0.5 * (c * R - 1) * std::exp(-c * (R + 2 * s));
    };
    return unitary_sum(lats, H, m, eta, z, tol, opt, per_term, false);
}

}  // namespace shimura

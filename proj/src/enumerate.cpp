#include "shimura/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace shimura {

Eigen::MatrixXd to_eigen(const QMat& m) {
    Eigen::MatrixXd e(m.size(), m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m.size(); ++j) e(i, j) = m[i][j].get_d();
    return e;
}

mpq_class quad_form(const QMat& g, const IVec& x) {
    mpq_class s = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (!x[i]) continue;
        mpq_class row = 0;
        for (size_t j = 0; j < x.size(); ++j)
            if (x[j]) row += g[i][j] * x[j];
        s += row * x[i];
    }
    return s;
}

bool certify_positive_definite(const QMat& g0) {
    QMat g = g0;
    size_t n = g.size();
    for (size_t k = 0; k < n; ++k) {
        if (g[k][k] <= 0) return false;
        for (size_t i = k + 1; i < n; ++i) {
            mpq_class f = g[i][k] / g[k][k];
            for (size_t j = k; j < n; ++j) g[i][j] -= f * g[k][j];
        }
    }
    return true;
}

bool certify_positive_definite(const Eigen::MatrixXd& gram) {
    size_t n = gram.rows();
    QMat g(n, QVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) g[i][j] = mpq_class(0.5 * (gram(i, j) + gram(j, i)));
    return certify_positive_definite(g);
}

double predicted_count(const Eigen::MatrixXd& gram, double bound) {
    int n = static_cast<int>(gram.rows());
    double vol = std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1);
    double det = gram.determinant();
    if (det <= 0) return std::numeric_limits<double>::infinity();
    return vol * std::pow(std::max(bound, 0.0), n / 2.0) / std::sqrt(det) + 1;
}

namespace {

struct Cholesky {
    Eigen::MatrixXd r;  // upper triangular, G = R^T R
    int n;
};

Cholesky cholesky(const Eigen::MatrixXd& g) {
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    if (llt.info() != Eigen::Success) throw DomainError("majorant gram is not positive definite");
    return {llt.matrixU(), static_cast<int>(g.rows())};
}

// enumerate coordinates below level `top` given fixed x[top..n-1]
void descend(const Cholesky& ch, IVec& x, int level, double remaining, std::vector<IVec>& out) {
    if (level < 0) {
        out.push_back(x);
        return;
    }
    const auto& r = ch.r;
    double s = 0;
    for (int j = level + 1; j < ch.n; ++j) s += r(level, j) * x[j];
    double rii = r(level, level);
    double center = -s / rii;
    double half = std::sqrt(std::max(remaining, 0.0)) / rii;
    i64 lo = static_cast<i64>(std::ceil(center - half));
    i64 hi = static_cast<i64>(std::floor(center + half));
    for (i64 v = lo; v <= hi; ++v) {
        double t = rii * v + s;
        double rest = remaining - t * t;
        if (rest < 0) continue;
        x[level] = v;
        descend(ch, x, level - 1, rest, out);
    }
    x[level] = 0;
}

std::pair<i64, i64> top_range(const Cholesky& ch, double bound) {
    double rii = ch.r(ch.n - 1, ch.n - 1);
    double half = std::sqrt(bound) / rii;
    return {static_cast<i64>(std::ceil(-half)), static_cast<i64>(std::floor(half))};
}

void check_budget(const Eigen::MatrixXd& gram, double bound, const EnumOptions& opt) {
    if (predicted_count(gram, bound) > opt.budget) throw BudgetExceeded("predicted point count exceeds budget");
}

}  // namespace

std::vector<IVec> fincke_pohst(const Eigen::MatrixXd& gram, double bound, const EnumOptions& opt) {
    if (bound < 0) return {};
    double b = bound * (1 + opt.margin) + opt.margin * 1e-3;
    check_budget(gram, b, opt);
    Cholesky ch = cholesky(gram);
    auto [lo, hi] = top_range(ch, b);
    i64 width = hi - lo + 1;
    std::vector<std::vector<IVec>> shards(std::max<i64>(width, 0));
#pragma omp parallel for schedule(dynamic)
    for (i64 k = 0; k < width; ++k) {
        IVec x(ch.n, 0);
        i64 v = lo + k;
        double t = ch.r(ch.n - 1, ch.n - 1) * v;
        double rest = b - t * t;
        if (rest < 0) continue;
        x[ch.n - 1] = v;
        descend(ch, x, ch.n - 2, rest, shards[k]);
    }
    std::vector<IVec> out;
    for (auto& s : shards) out.insert(out.end(), s.begin(), s.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<IVec> fincke_pohst_serial(const Eigen::MatrixXd& gram, double bound, const EnumOptions& opt) {
    if (bound < 0) return {};
    double b = bound * (1 + opt.margin) + opt.margin * 1e-3;
    check_budget(gram, b, opt);
    Cholesky ch = cholesky(gram);
    std::vector<IVec> out;
    IVec x(ch.n, 0);
    descend(ch, x, ch.n - 1, b, out);
    std::sort(out.begin(), out.end());
    return out;
}

static std::vector<i64> box_bounds(const Eigen::MatrixXd& gram, double bound) {
    Eigen::MatrixXd inv = gram.inverse();
    std::vector<i64> h(gram.rows());
    for (int i = 0; i < gram.rows(); ++i)
        h[i] = static_cast<i64>(std::floor(std::sqrt(std::max(0.0, bound * inv(i, i)) * (1 + 1e-9)) + 1e-9));
    return h;
}

template <class Accept>
static std::vector<IVec> scan(const std::vector<i64>& h, Accept accept) {
    size_t n = h.size();
    std::vector<IVec> out;
    IVec x(n);
    for (size_t i = 0; i < n; ++i) x[i] = -h[i];
    for (;;) {
        if (accept(x)) out.push_back(x);
        size_t i = n;
        while (i-- > 0) {
            if (x[i] < h[i]) {
                ++x[i];
                for (size_t k = i + 1; k < n; ++k) x[k] = -h[k];
                break;
            }
            if (i == 0) return out;
        }
        if (n == 0) return out;
    }
}

std::vector<IVec> box_scan(const Eigen::MatrixXd& gram, double bound) {
    if (bound < 0) return {};
    auto h = box_bounds(gram, bound);
    return scan(h, [&](const IVec& x) {
        Eigen::VectorXd v(x.size());
        for (size_t i = 0; i < x.size(); ++i) v[i] = static_cast<double>(x[i]);
        return v.dot(gram * v) <= bound;
    });
}

std::vector<IVec> fincke_pohst_exact(const QMat& gram, const mpq_class& bound, const EnumOptions& opt) {
    auto cand = fincke_pohst(to_eigen(gram), bound.get_d(), opt);
    std::vector<IVec> out;
    for (auto& x : cand)
        if (quad_form(gram, x) <= bound) out.push_back(x);
    return out;
}

std::vector<IVec> box_scan_exact(const QMat& gram, const mpq_class& bound) {
    if (bound < 0) return {};
    auto h = box_bounds(to_eigen(gram), bound.get_d() * (1 + 1e-9) + 1e-9);
    return scan(h, [&](const IVec& x) { return quad_form(gram, x) <= bound; });
}

std::vector<IVec> enumerate_under_majorant(const MajorantForm& M, double bound, const PointFilter& filter,
                                           const EnumOptions& opt) {
    if (!certify_positive_definite(M.gram)) throw DomainError("majorant is not positive definite");
    size_t n = M.gram.rows();
    QMat g(n, QVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) g[i][j] = mpq_class(0.5 * (M.gram(i, j) + M.gram(j, i)));
    mpq_class qb(bound);
    std::vector<IVec> out;
    for (auto& x : fincke_pohst(M.gram, bound, opt))
        if (quad_form(g, x) <= qb && (!filter || filter(x))) out.push_back(x);
    return out;
}

}  // namespace shimura

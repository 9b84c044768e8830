#pragma once
#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shimura/arith.hpp"
#include "shimura/linalg.hpp"

namespace shimura {

using IVec = std::vector<i64>;

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EnumOptions {
    double margin = 1e-6;
    double budget = 1e7;
    double max_cutoff = 0;  // largest majorant bound a truncated sum may use, 0 for no limit
};

struct MajorantForm {
    Eigen::MatrixXd gram;
    std::string provenance;
};

// exact LDL^T pivots of the (binary-exact) gram; all positive iff definite
bool certify_positive_definite(const Eigen::MatrixXd& gram);
bool certify_positive_definite(const QMat& gram);

double predicted_count(const Eigen::MatrixXd& gram, double bound);

// all x in Z^n with x^T G x <= bound (bound inflated by the margin), sorted lexicographically
std::vector<IVec> fincke_pohst(const Eigen::MatrixXd& gram, double bound, const EnumOptions& opt = {});
std::vector<IVec> fincke_pohst_serial(const Eigen::MatrixXd& gram, double bound, const EnumOptions& opt = {});
// brute-force reference over the bounding box
std::vector<IVec> box_scan(const Eigen::MatrixXd& gram, double bound);
// exact variants: candidates re-checked in rational arithmetic, no margin in the result
std::vector<IVec> fincke_pohst_exact(const QMat& gram, const mpq_class& bound, const EnumOptions& opt = {});
std::vector<IVec> box_scan_exact(const QMat& gram, const mpq_class& bound);

using PointFilter = std::function<bool(const IVec&)>;
// lattice points of M(x) <= bound passing the filter; every candidate re-checked exactly
std::vector<IVec> enumerate_under_majorant(const MajorantForm& M, double bound, const PointFilter& filter,
                                           const EnumOptions& opt = {});

Eigen::MatrixXd to_eigen(const QMat& m);
mpq_class quad_form(const QMat& g, const IVec& x);

}  // namespace shimura

#pragma once
#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "shimura/embeddings.hpp"
#include "shimura/enumerate.hpp"
#include "shimura/quat.hpp"
#include "shimura/specfun.hpp"

namespace shimura {

using Mat2 = Eigen::Matrix2d;
using cplx = std::complex<double>;

struct Splitting {
    Mat2 i, j;
    Mat2 operator()(const Quat& x) const;
    Mat2 operator()(const Eigen::Vector4d& x) const;
    double max_relation_error(double a, double b) const;
};

// i -> diag(sqrt a, -sqrt a), j -> [[0,1],[b,0]] for a > 0 (roles swapped otherwise),
// conjugated by diag(1,-1) when needed so that -phi(I_k) = J_{z0} with z0 in the upper half-plane
Splitting make_splitting(const QuatAlgebra& A, const Embedding& ref);

Mat2 adj(const Mat2& m);
// nrd bilinear form on M_2(R): <u,v> = tr(u adj v)/2
double nrd_pair(const Mat2& u, const Mat2& v);
Mat2 j_z(cplx z);
QMat j_z_rational(const mpq_class& x, const mpq_class& y);
cplx fixed_point(const Mat2& complex_structure);

// -2 nrd of the projection of v onto J_z^perp, v trace zero
double r_o(const Mat2& v, cplx z);
double r_o(const Splitting& S, const Quat& v, cplx z);

// (x,y)_phi as (rational part, coefficient of sqrt(delta))
std::pair<mpq_class, mpq_class> herm_form(const QuatAlgebra& A, const Quat& x, const Quat& y, const Embedding& phi,
                                          i64 delta);

// real model of the hermitian space attached to an embedding
struct HermSpace {
    Mat2 g;   // image of phi(sqrt(delta))
    Mat2 G;   // image of phi(I_k) = g / sqrt|delta|
    double delta;
    cplx form(const Mat2& x, const Mat2& y) const;
    Mat2 scale(cplx alpha, const Mat2& x) const { return alpha.real() * x + alpha.imag() * (G * x); }
    // spanning vector of zeta(z) = {v : v J_z = -G v}
    Mat2 zeta(cplx z) const;
    double r_phi(const Mat2& b, cplx z) const;
};
HermSpace herm_space(const Splitting& S, const Embedding& phi, i64 delta);
double r_phi(const Splitting& S, const Quat& b, cplx z, const Embedding& phi, i64 delta);

// orthonormal k_R-basis e, f with (e,e) = 1, (f,f) = -1 and the disk parameter of a line
struct DiskFrame {
    HermSpace H;
    Mat2 e, f;
    std::pair<cplx, cplx> coords(const Mat2& b) const;  // (xi1, xi2) = ((e,b), -(f,b))
    cplx disk_point(cplx z) const;                      // Z with zeta(z) = span(Z e + f)
};
DiskFrame disk_frame(const HermSpace& H, cplx z0);
double r_phi_disk(cplx xi1, cplx xi2, cplx Z);

double majorant_identity(const Splitting& S, const Mat2& y, double t, const HermSpace& H, cplx z);

// I^o(l, eta) closed form and the s-integral
double i_o(i64 ell, double eta, i64 delta);
double i_o_quad(i64 ell, double eta, i64 delta);

struct DiskIntegral {
    double value;
    double error;
};
// e^{-2 pi l |delta| eta} (2/pi) int_{U^1} beta_1(2 pi N eta arg(Z)) r dr dtheta / (1 - r^2)^2
// with arg = R_phi for omega_plus and R_phi + 2 (y,y) otherwise
DiskIntegral i_phi(cplx xi1, cplx xi2, double norm_a, double eta, i64 ell, i64 delta, bool omega_plus,
                   double tol = 1e-7);

struct DdcResult {
    double max_residual;
    double near_singular_bound;
    int points;
};
struct OnCycle : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TruncatedSum {
    double value = 0;
    double tail = 0;    // certified bound on the discarded terms
    double cutoff = 0;  // majorant bound of the enumerated region
    std::size_t terms = 0;
};

// sum of term(x) over lattice points, truncated at the smallest doubling of start whose shell tail
// bound (env decreasing in the majorant value) is at most tol; term returns 0 for filtered points
TruncatedSum majorant_sum(const Eigen::MatrixXd& gram, const std::function<double(const IVec&, double)>& term,
                          const std::function<double(double)>& env, double tol, double start,
                          const EnumOptions& opt = {});

// trace-zero part of O with its image under the splitting
struct OrthogonalLattice {
    OrderLattice T;
    QMat nrd;
    std::vector<Mat2> img;
};
OrthogonalLattice orthogonal_lattice(const QuatAlgebra& A, const OrderLattice& O, const Splitting& S);
// gram of R^o + Nrd at z
Eigen::MatrixXd orthogonal_majorant(const OrthogonalLattice& L, cplx z);

TruncatedSum gr_o(const OrthogonalLattice& L, const mpq_class& n, double v, cplx z, double tol,
                  const EnumOptions& opt = {});
TruncatedSum psi_o(const OrthogonalLattice& L, const mpq_class& n, double v, cplx z, double tol,
                   const EnumOptions& opt = {});

// phi(a)^{-1} O with its image under the splitting
struct UnitaryLattice {
    OrderLattice L;
    QMat nrd;
    std::vector<Mat2> img;
    mpq_class norm_a;
};
UnitaryLattice unitary_lattice(const QuatAlgebra& A, const OrderLattice& L, const mpq_class& norm_a,
                               const Splitting& S);
// gram of R_phi + (b,b)_phi at z
Eigen::MatrixXd unitary_majorant(const UnitaryLattice& L, const HermSpace& H, cplx z);

// (1/|o_k^x|) sum over classes of the Gr^+ and Gr^- sums
TruncatedSum gr_u(const std::vector<UnitaryLattice>& lats, const HermSpace& H, i64 m, double eta, cplx z,
                  int unit_count, double tol, const EnumOptions& opt = {});
TruncatedSum psi_u(const std::vector<UnitaryLattice>& lats, const HermSpace& H, i64 m, double eta, cplx z,
                   double tol, const EnumOptions& opt = {});

// finite-difference dd^c of Gr^+ (positive b) or Gr^- (negative b) against the density, in disk coordinates
DdcResult ddc_check(cplx xi1, cplx xi2, double step, double grid, double exclusion = 0.1);

}  // namespace shimura

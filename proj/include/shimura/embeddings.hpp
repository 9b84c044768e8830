#pragma once
#include <optional>
#include <vector>

#include "shimura/quadfield.hpp"
#include "shimura/quat.hpp"

namespace shimura {

// phi(x + y sqrt(delta)) = x + y g
struct Embedding {
    Quat g;
    Quat operator()(const QuatAlgebra&, const mpq_class& x, const mpq_class& y) const {
        return Quat(x, 0, 0, 0) + g * y;
    }
    Embedding conjugate() const { return Embedding{-g}; }
};

struct NoneFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InconsistentLocalData : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptySolutionSpace : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// trace-zero elements of O with nrd = n and trace-zero coordinate height <= radius,
// sorted by height then lexicographically
std::vector<Quat> trace_zero_search(const QuatAlgebra& A, const OrderLattice& O, const mpq_class& n, i64 radius);
std::vector<Embedding> find_embeddings(const QuatAlgebra& A, const OrderLattice& O, i64 delta, i64 radius);
bool is_optimal(const QuatAlgebra& A, const OrderLattice& O, const Embedding& phi);
Quat find_theta(const QuatAlgebra& A, const OrderLattice& O, const Embedding& phi, i64 radius);
// element of O with reduced norm n, smallest coordinate height
std::optional<Quat> find_norm_element(const QuatAlgebra& A, const OrderLattice& O, const mpq_class& n, i64 radius);
std::vector<Quat> norm_one_units(const QuatAlgebra& A, const OrderLattice& O, i64 radius);

i64 conductor(const QuatAlgebra& A, const OrderLattice& O, const Quat& xi, i64 t);
i64 frobenius_type(const QuatAlgebra& A, const OrderLattice& O, const Quat& xi, i64 t, const Embedding& phi,
                   const Quat& theta);

Quat orbit_map(const QuatAlgebra& A, const Quat& y, const mpq_class& m, const Embedding& phi);
Embedding adjoint(const QuatAlgebra& A, const Quat& u, const Embedding& phi);  // Ad_u o phi

enum class PhiSign { pos, neg, none };
struct SignResult {
    PhiSign sign = PhiSign::none;
    Quat b0;
};
// b with b xi = m g b, smallest height; sign of delta * nrd(b0)
SignResult phi_sign(const QuatAlgebra& A, const Quat& xi, const mpq_class& m, const Embedding& phi, i64 delta);

// phi(a)^{-1} O for the ideal a, in Hermite normal form
OrderLattice scaled_lattice(const QuatAlgebra& A, const QuadField& K, const Embedding& phi, const IdealRep& I,
                            const OrderLattice& O);

// number of b in the union over class reps of phi(a_i)^{-1} O with b xi = m g b and
// delta nrd(b) = +-m / N(a_i), the sign being that of xi
i64 fiber_enumerate(const QuatAlgebra& A, const QuadField& K, const Quat& xi, i64 m, const Embedding& phi,
                    const std::vector<IdealRep>& reps, const OrderLattice& O);

}  // namespace shimura

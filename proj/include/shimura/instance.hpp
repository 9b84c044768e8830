#pragma once
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shimura/archimedean.hpp"
#include "shimura/embeddings.hpp"
#include "shimura/quadfield.hpp"
#include "shimura/quat.hpp"

namespace shimura {

struct AssumptionViolation : std::runtime_error {
    std::string assumption;
    AssumptionViolation(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), assumption(std::move(name)) {}
};

struct InstanceConfig {
    i64 delta = -2;
    mpq_class algebra_a = -2, algebra_b = 35;
    std::optional<QMat> order_basis;
    double tol_sum = 1e-10;
    double tol_quad = 1e-7;
    double tol_identity = 1e-6;
    double cutoff = 0;  // largest majorant bound for truncated sums, 0 for no limit
    double budget = 1e7;
    std::uint64_t seed = 1;
    i64 embedding_radius = 20;
    i64 theta_radius = 40;
};

// Ad_{mu^-1} o phi with nrd(mu) = nu, or its conjugate (evaluated at the conjugate point)
struct FamilyMember {
    Embedding phi;
    i64 nu = 1;
    Quat mu;
    bool conjugate = false;
    HermSpace herm;
    std::vector<UnitaryLattice> lattices;
};

struct Instance {
    InstanceConfig config;
    QuadField K;
    QuatAlgebra A;
    OrderLattice O;
    std::vector<IdealRep> reps;
    Embedding phi;
    Quat theta;
    CharData chars;
    Splitting split;
    HermSpace herm;
    OrthogonalLattice ortho;
    std::vector<FamilyMember> family;

    EnumOptions enum_options() const { return EnumOptions{1e-6, config.budget, config.cutoff}; }
    std::string fingerprint() const;
};

// throws AssumptionViolation naming the first failed assumption
void validate(const InstanceConfig& cfg);
Instance build_instance(const InstanceConfig& cfg);

}  // namespace shimura

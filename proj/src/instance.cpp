#include "shimura/instance.hpp"

#include <sstream>

namespace shimura {

namespace {

QuatAlgebra checked_algebra(const InstanceConfig& cfg) {
    if (cfg.algebra_a == 0 || cfg.algebra_b == 0) throw AssumptionViolation("algebra", "structure constants must be nonzero");
    QuatAlgebra A(cfg.algebra_a, cfg.algebra_b);
    if (!(cfg.algebra_a > 0 || cfg.algebra_b > 0)) throw AssumptionViolation("indefinite", "algebra is definite");
    if (A.d_b <= 1) throw AssumptionViolation("D_B > 1", "algebra is split");
    for (i64 p : A.ramified_primes)
        if (p == 2) throw AssumptionViolation("2 unramified", "algebra ramifies at 2");
    return A;
}

}  // namespace

void validate(const InstanceConfig& cfg) {
    if (cfg.delta >= 0) throw AssumptionViolation("delta negative", "delta = " + std::to_string(cfg.delta));
    if (cfg.delta % 2 != 0) throw AssumptionViolation("delta even", "delta = " + std::to_string(cfg.delta));
    if (!is_squarefree(cfg.delta)) throw AssumptionViolation("delta squarefree", "delta = " + std::to_string(cfg.delta));
    QuadField K(cfg.delta);
    QuatAlgebra A = checked_algebra(cfg);
    for (i64 p : A.ramified_primes)
        if (chi_k(K, p) != -1) throw AssumptionViolation("inert", std::to_string(p) + " divides D_B but is not inert");
    if (cfg.order_basis) {
        OrderLattice O{*cfg.order_basis, false};
        if (O.basis.size() != 4 || !check_order(A, O)) throw AssumptionViolation("order", "basis is not an order");
        if (reduced_discriminant(A, O) != A.d_b) throw AssumptionViolation("order maximal", "reduced discriminant differs from D_B");
    }
}

Instance build_instance(const InstanceConfig& cfg) {
    validate(cfg);
    QuadField K(cfg.delta);
    QuatAlgebra A(cfg.algebra_a, cfg.algebra_b);
    OrderLattice O;
    if (cfg.order_basis) {
        O = OrderLattice{*cfg.order_basis, false};
        check_order(A, O);
    } else {
        O = maximal_order(A);
    }
    auto embs = find_embeddings(A, O, cfg.delta, cfg.embedding_radius);
    Embedding phi = embs.front();
    Splitting S = make_splitting(A, phi);
    Instance I{cfg,
               K,
               A,
               O,
               class_group_reps(K),
               phi,
               find_theta(A, O, phi, cfg.theta_radius),
               make_char_data(K, A.d_b),
               S,
               herm_space(S, phi, cfg.delta),
               orthogonal_lattice(A, O, S),
               {}};
    for (i64 nu : divisors(A.d_b)) {
        auto mu = find_norm_element(A, O, mpq_class(nu), cfg.theta_radius);
        if (!mu) throw NoneFound("no element of reduced norm " + std::to_string(nu));
        Embedding base = adjoint(A, A.inv(*mu), phi);
        for (bool conj : {false, true}) {
            FamilyMember f;
            f.phi = conj ? base.conjugate() : base;
            f.nu = nu;
            f.mu = *mu;
            f.conjugate = conj;
            f.herm = herm_space(S, f.phi, cfg.delta);
            for (const auto& r : I.reps)
                f.lattices.push_back(unitary_lattice(A, scaled_lattice(A, K, f.phi, r, O), r.norm(), S));
            I.family.push_back(std::move(f));
        }
    }
    return I;
}

std::string Instance::fingerprint() const {
    std::ostringstream s;
    s << "delta=" << K.delta << ";a=" << A.a.get_str() << ";b=" << A.b.get_str() << ";D_B=" << A.d_b
      << ";h=" << K.class_number << ";g=" << phi.g.str();
    return s.str();
}

}  // namespace shimura

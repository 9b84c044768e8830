#pragma once
#include <gmpxx.h>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "shimura/arith.hpp"
#include "shimura/linalg.hpp"

namespace shimura {

struct Quat {
    std::array<mpq_class, 4> c{0, 0, 0, 0};
    Quat() = default;
    Quat(mpq_class x0, mpq_class x1, mpq_class x2, mpq_class x3) : c{x0, x1, x2, x3} {}
    static Quat scalar(const mpq_class& s) { return Quat(s, 0, 0, 0); }
    static Quat from(const QVec& v) { return Quat(v[0], v[1], v[2], v[3]); }
    QVec vec() const { return {c[0], c[1], c[2], c[3]}; }
    bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }
    bool operator==(const Quat& o) const { return c == o.c; }
    Quat operator+(const Quat& o) const;
    Quat operator-(const Quat& o) const;
    Quat operator-() const;
    Quat operator*(const mpq_class& s) const;
    std::string str() const;
};

struct DivisionByZero : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuatAlgebra {
    mpq_class a, b;
    std::vector<i64> ramified_primes;
    i64 d_b = 1;

    QuatAlgebra(mpq_class a, mpq_class b);
    Quat mul(const Quat& x, const Quat& y) const;
    Quat conj(const Quat& x) const { return Quat(x.c[0], -x.c[1], -x.c[2], -x.c[3]); }
    mpq_class nrd(const Quat& x) const;
    mpq_class trd(const Quat& x) const { return 2 * x.c[0]; }
    Quat inv(const Quat& x) const;
    // bilinear form attached to nrd: <x,y> = trd(x conj(y)) / 2
    mpq_class nrd_bilinear(const Quat& x, const Quat& y) const;
};

QuatAlgebra make_algebra(const mpq_class& a, const mpq_class& b);

struct NotAnOrder : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OrderLattice {
    QMat basis;  // rows over (1, i, j, k)
    bool is_order = false;

    Quat elem(size_t i) const { return Quat::from(basis[i]); }
    std::optional<QVec> coords(const Quat& x) const { return solve_left(basis, x.vec()); }
    Quat from_coords(const std::vector<i64>& v) const;
};

OrderLattice lattice_from_generators(const std::vector<Quat>& gens);
bool membership(const Quat& x, const OrderLattice& L);
bool p_adic_membership(const Quat& x, const OrderLattice& L, i64 p);
bool check_order(const QuatAlgebra& A, OrderLattice& L);
// ring closure of a lattice under multiplication; throws NotAnOrder if traces/norms become non-integral
OrderLattice ring_closure(const QuatAlgebra& A, const std::vector<Quat>& gens);
mpz_class reduced_discriminant(const QuatAlgebra& A, const OrderLattice& L);
OrderLattice seed_order(const QuatAlgebra& A);
OrderLattice maximal_order(const QuatAlgebra& A);
// gram matrix of nrd in the lattice basis (rational, integral on orders)
QMat nrd_gram(const QuatAlgebra& A, const OrderLattice& L);
// basis of the trace-zero sublattice
OrderLattice trace_zero_sublattice(const OrderLattice& L);

}  // namespace shimura

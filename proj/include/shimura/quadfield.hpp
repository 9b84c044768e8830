#pragma once
#include <gmpxx.h>
#include <array>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "shimura/arith.hpp"

namespace shimura {

using cplx = std::complex<double>;

struct IdealRep {
    i64 a = 1;
    i64 b = 0;
    mpq_class scale = 1;  // scale * (aZ + (b + sqrt(delta))Z)
    mpq_class norm() const { return scale * scale * a; }
};

struct QuadField {
    i64 delta = 0;
    i64 disc = 0;
    int unit_count = 2;
    int class_number = 0;

    explicit QuadField(i64 delta);
    bool contains(const IdealRep& I, const mpq_class& x, const mpq_class& y) const;
};

// reduced forms (a, b, c) of discriminant disc, b^2 - 4ac = disc
std::vector<std::array<i64, 3>> reduced_forms(i64 disc);
std::vector<IdealRep> class_group_reps(const QuadField& K);
IdealRep ideal_multiply(const QuadField& K, const IdealRep& x, const IdealRep& y);
// ideals are equal as lattices
bool ideal_equal(const IdealRep& x, const IdealRep& y);

i64 rho(const QuadField& K, i64 n);
i64 rho_serial(const QuadField& K, i64 n);
i64 rho_divisor_sum(const QuadField& K, i64 n);
int chi_k(const QuadField& K, i64 a);

struct CharData {
    i64 modulus = 0;
    std::vector<int> chi_k_table;
    std::vector<int> chi_prime_table;
    std::vector<cplx> gauss_table;
};

CharData make_char_data(const QuadField& K, i64 d_b);
// character data from an arbitrary table of values mod M (test hook)
CharData make_char_data(std::vector<int> chi_prime_table);
int chi_prime(const CharData& C, i64 a);
cplx gauss_sum(const CharData& C, i64 a);

struct LValues {
    cplx l1;
    cplx l1prime;
    cplx l1_oracle;
    cplx l1prime_oracle;
};

struct AccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

LValues l_values(const CharData& C, double tol = 1e-8);
// generalized Stieltjes constant gamma_1(a), 0 < a <= 1
double stieltjes1(double a);

}  // namespace shimura

#pragma once
#include <gmpxx.h>
#include <optional>
#include <string>
#include <vector>

namespace shimura {

using ZVec = std::vector<mpz_class>;
using QVec = std::vector<mpq_class>;
using ZMat = std::vector<ZVec>;
using QMat = std::vector<QVec>;

// row-style Hermite normal form of the Z-span of the rows; zero rows dropped
ZMat hnf(ZMat rows);
// same for rational rows: clears the common denominator first
QMat hnf(const QMat& rows);

// basis of {x in Z^n : sum_i x_i * rows[i] = 0}
ZMat integer_kernel(const ZMat& rows);
// basis of the rational right kernel {x : A x = 0}, A given as rows
QMat rational_kernel(const QMat& a);

// solve c * B = v for c (B square, invertible); nullopt if singular
std::optional<QVec> solve_left(const QMat& b, const QVec& v);
mpq_class det(QMat a);
QMat inverse(const QMat& a);

mpz_class common_denominator(const QMat& a);
std::string format_matrix(const QMat& a);
QMat parse_matrix(const std::string& text);

}  // namespace shimura

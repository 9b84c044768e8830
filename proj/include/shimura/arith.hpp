#pragma once
#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace shimura {

using i64 = std::int64_t;

i64 gcd64(i64 a, i64 b);
i64 mod_pos(i64 a, i64 m);
bool is_squarefree(i64 n);
std::vector<std::pair<i64, int>> factor(i64 n);
std::vector<i64> divisors(i64 n);
std::vector<i64> prime_divisors(i64 n);

// Kronecker symbol (a/n), extended to all integers n
int kronecker(i64 a, i64 n);

// Hilbert symbol (a,b)_p for nonzero integers; p = 0 means the real place
int hilbert_symbol(const mpz_class& a, const mpz_class& b, i64 p);

int valuation(const mpz_class& x, i64 p);
int valuation(const mpq_class& x, i64 p);

bool is_integer(const mpq_class& q);
std::string to_string(const mpq_class& q);
mpq_class parse_rational(const std::string& s);

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace shimura

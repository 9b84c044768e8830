#pragma once
#include <gmpxx.h>
#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>

#include "shimura/arith.hpp"

namespace shimura {

enum class Ring { rational, real, symbolic };

// c0 + c1 * omega2 + c2 * degomega
struct Symbolic {
    std::array<double, 3> c{0, 0, 0};
    Symbolic operator+(const Symbolic& o) const { return {{c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2]}}; }
    Symbolic operator*(double s) const { return {{c[0] * s, c[1] * s, c[2] * s}}; }
    bool operator==(const Symbolic& o) const { return c == o.c; }
};

using Coeff = std::variant<mpq_class, double, Symbolic>;

struct WindowExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RingMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class QExpansion {
  public:
    QExpansion(Ring ring, i64 lo, i64 hi);

    Ring ring() const { return ring_; }
    i64 lo() const { return lo_; }
    i64 hi() const { return hi_; }
    bool in_window(i64 n) const { return n >= lo_ && n <= hi_; }
    const std::map<i64, Coeff>& terms() const { return terms_; }

    void set(i64 n, const Coeff& c);
    Coeff get(i64 n) const;
    Coeff zero() const;

    QExpansion operator+(const QExpansion& o) const;
    QExpansion scaled(const mpq_class& s) const;
    bool operator==(const QExpansion& o) const;

    // exponent<TAB>coefficient lines
    std::string to_tsv() const;
    static QExpansion from_tsv(Ring ring, i64 lo, i64 hi, const std::string& text);

  private:
    Ring ring_;
    i64 lo_, hi_;
    std::map<i64, Coeff> terms_;
};

Ring ring_of(const Coeff& c);
bool is_zero(const Coeff& c);
Coeff add(const Coeff& a, const Coeff& b);
Coeff scale(const Coeff& a, const mpq_class& s);
std::string format_coeff(const Coeff& c);
Coeff parse_coeff(Ring ring, const std::string& s);
// shortest decimal that reads back to the same double
std::string format_double(double x);

}  // namespace shimura

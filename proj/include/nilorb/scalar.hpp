#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace nilorb {

// Element of Q (characteristic 0) or of a prime field F_p.
//
// Rationals are kept in canonical form: values that are integers fitting in
// 64 bits use the small representation, everything else lives in an mpq.
// A characteristic-0 integer is coerced into F_p when it meets an F_p value,
// so literals such as Scalar(2) can be mixed with field elements.
class Scalar {
 public:
  Scalar() = default;
  Scalar(std::int64_t v);  // NOLINT: integer literals promote implicitly
  Scalar(int v) : Scalar(static_cast<std::int64_t>(v)) {}
  explicit Scalar(const mpq_class& q);

  static Scalar mod(std::int64_t v, std::uint32_t p);
  static Scalar fraction(std::int64_t num, std::int64_t den);

  std::uint32_t characteristic() const { return p_; }
  bool is_zero() const;
  bool is_one() const;
  bool is_integer() const;  // char 0 only: denominator 1
  // Residue in [0, p) for p > 0; the integer value for integral char-0 values.
  std::int64_t to_int() const;
  mpq_class to_mpq() const;  // char 0 only

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;
  Scalar pow(std::uint64_t e) const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // "3", "-5/7"; for F_p the residue in [0, p).
  std::string to_string() const;
  static Scalar parse(const std::string& text, std::uint32_t p);

 private:
  void normalize();
  void align(Scalar& o);

  std::uint32_t p_ = 0;
  std::variant<std::int64_t, mpq_class> v_ = std::int64_t{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

bool is_prime(std::uint64_t n);

// The coefficient field of a Lie algebra: Q when p == 0, F_p otherwise.
class CoeffField {
 public:
  CoeffField() = default;
  explicit CoeffField(std::uint32_t p);

  std::uint32_t characteristic() const { return p_; }
  bool is_perfect() const { return true; }
  Scalar zero() const { return from_int(0); }
  Scalar one() const { return from_int(1); }
  Scalar from_int(std::int64_t v) const;
  std::string name() const;

  friend bool operator==(const CoeffField& a, const CoeffField& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_ = 0;
};

}  // namespace nilorb

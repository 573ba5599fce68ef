#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace nilorb {

struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// F_q, q = p^k, elements indexed 0..q-1 by their base-p digit vectors in a
// fixed polynomial basis.
class FiniteField {
 public:
  static std::shared_ptr<const FiniteField> get(std::uint32_t q);
  std::uint32_t q() const { return q_; }
  std::uint32_t p() const { return p_; }
  std::uint32_t degree() const { return k_; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * q_ + b]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * q_ + b]; }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  std::uint32_t from_int(std::int64_t v) const;
  bool is_square(std::uint32_t a) const;  // a != 0
  std::optional<std::uint32_t> sqrt(std::uint32_t a) const;
  int legendre(std::uint32_t a) const;  // +1 / -1, a != 0
  std::uint32_t least_nonsquare() const { return eps_; }

 private:
  std::uint32_t q_ = 0, p_ = 0, k_ = 0, eps_ = 0;
  std::vector<std::uint32_t> add_, mul_, neg_;
};
using FieldPtr = std::shared_ptr<const FiniteField>;

// t^v (c_0 + c_1 t + ... + c_{N-1} t^{N-1} + O(t^{v+N})) over F_q with c_0 != 0,
// or zero: exactly, or only up to O(t^prec).
class LaurentScalar {
 public:
  LaurentScalar() = default;
  static LaurentScalar exact_zero(FieldPtr f);
  static LaurentScalar zero_to(FieldPtr f, std::int64_t prec);
  // c t^v with relative precision n.
  static LaurentScalar monomial(FieldPtr f, std::uint32_t c, std::int64_t v, std::size_t n);
  // Coefficients starting at t^v; leading zeros are absorbed into v.
  static LaurentScalar series(FieldPtr f, std::int64_t v, std::vector<std::uint32_t> coeffs);

  const FieldPtr& field() const { return f_; }
  bool is_exact_zero() const { return exact_zero_; }
  bool is_zero() const { return exact_zero_ || c_.empty(); }  // zero to known precision
  std::int64_t valuation() const;  // throws on zero
  std::int64_t abs_precision() const;  // v + N; INT64_MAX for exact zero
  std::size_t rel_precision() const { return c_.size(); }
  std::uint32_t leading() const;
  // Coefficient of t^k, for k < abs_precision.
  std::uint32_t coeff(std::int64_t k) const;
  const std::vector<std::uint32_t>& window() const { return c_; }

  LaurentScalar operator+(const LaurentScalar& o) const;
  LaurentScalar operator-(const LaurentScalar& o) const;
  LaurentScalar operator-() const;
  LaurentScalar operator*(const LaurentScalar& o) const;
  LaurentScalar inverse() const;
  LaurentScalar operator/(const LaurentScalar& o) const { return *this * o.inverse(); }
  LaurentScalar scaled(std::uint32_t c) const;
  LaurentScalar shifted(std::int64_t k) const;  // times t^k
  LaurentScalar truncated(std::size_t n) const;  // relative precision at most n
  // Same value to the smaller of the two precisions.
  bool agrees(const LaurentScalar& o) const;
  std::optional<LaurentScalar> sqrt() const;  // q odd

  std::string to_string() const;

 private:
  FieldPtr f_;
  bool exact_zero_ = false;
  std::int64_t v_ = 0;  // valuation, or absolute precision when zero_to
  std::vector<std::uint32_t> c_;
  void normalize();
};

enum class SquareClass { One, Eps, T, EpsT };
std::string to_string(SquareClass c);
SquareClass square_class(const LaurentScalar& x);
LaurentScalar square_class_rep(const FieldPtr& f, SquareClass c, std::size_t n);

// Tame symbol for odd q: +1 iff b is a norm from F(sqrt a).
int hilbert_symbol(const LaurentScalar& a, const LaurentScalar& b);

// x = a + b i + c j + d ij in (eps, t): i^2 = eps, j^2 = t, ji = -ij.
struct Quaternion {
  LaurentScalar a, b, c, d;

  static Quaternion scalar(const LaurentScalar& s);
  static Quaternion basis(const FieldPtr& f, int which, std::size_t n);  // 0:1 1:i 2:j 3:ij
  Quaternion operator*(const Quaternion& o) const;
  Quaternion operator+(const Quaternion& o) const;
  Quaternion operator-(const Quaternion& o) const;
  Quaternion scaled(const LaurentScalar& s) const;
  bool is_zero() const;
  bool agrees(const Quaternion& o) const;
  nlohmann::json to_json() const;
};

Quaternion conj(const Quaternion& x);  // the symplectic involution iota
LaurentScalar nrd(const Quaternion& x);
LaurentScalar trd(const Quaternion& x);
Quaternion skew_part(const Quaternion& x);  // (x - iota x) / 2
bool is_skew(const Quaternion& x);
Quaternion quat_inverse(const Quaternion& x);
// rho(x) y = x y iota(x).
Quaternion rho(const Quaternion& x, const Quaternion& y);

// Square class of y^2 = -Nrd(y) for y skew and nonzero.
SquareClass eta(const Quaternion& y);
// Square class of Nrd(y) itself.
SquareClass nrd_class(const Quaternion& y);

struct SkewPairResult {
  bool same_orbit = false;
  std::optional<Quaternion> witness;  // rho(witness) y2 = y1
  bool budget_exhausted = false;
  std::size_t seeds_tried = 0;
};
// Solves u^2 - a w^2 = s in F; budget bounds the seeds for w.
std::optional<std::pair<LaurentScalar, LaurentScalar>> solve_norm_equation(const LaurentScalar& a,
                                                                           const LaurentScalar& s,
                                                                           std::size_t budget = 10000,
                                                                           std::size_t* tried = nullptr);
SkewPairResult classify_skew_pair(const Quaternion& y1, const Quaternion& y2, std::size_t budget = 10000);
// rho(g) y2 agrees with y1 to relative precision at least n on every component.
bool verify_witness(const Quaternion& g, const Quaternion& y1, const Quaternion& y2, std::size_t n);

struct CensusReport {
  std::uint32_t q = 0;
  std::size_t precision = 0;
  std::vector<SquareClass> eta_image;
  std::size_t orbit_count = 0;
  std::size_t samples = 0, pairs_tested = 0, witnesses_found = 0;
  std::size_t budget_exhausted = 0;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty() && orbit_count == 3 && budget_exhausted == 0; }
  nlohmann::json to_json() const;
};
CensusReport c2_orbit_census(std::uint32_t q, std::size_t precision, std::uint64_t seed = 1, std::size_t samples = 200,
                             std::size_t pairs = 60, int threads = 0);

struct ArtinSchreierResult {
  bool solvable = false;
  bool needs_residue_extension = false;  // the constant term is not in the image on F_p
  std::optional<std::int64_t> obstruction_valuation;  // leading pole of the reduced form
  nlohmann::json to_json() const;
};
// y^p - y = g over F_p((t)).
ArtinSchreierResult artin_schreier_solvable(const LaurentScalar& g);

}  // namespace nilorb

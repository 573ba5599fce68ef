#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nilorb/linalg.hpp"

namespace nilorb {

// Univariate polynomial over Q or F_p; coefficients stored low degree first,
// trailing zeros trimmed.
class Poly {
 public:
  Poly() = default;
  Poly(std::vector<Scalar> coeffs, std::uint32_t p);
  static Poly monomial(std::size_t degree, const Scalar& c, std::uint32_t p);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  std::uint32_t characteristic() const { return p_; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar coeff(std::size_t i) const;
  Scalar leading() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly monic() const;
  Poly derivative() const;
  Matrix eval(const Matrix& m) const;

  friend bool operator==(const Poly& a, const Poly& b);

  std::string to_string() const;

 private:
  void trim();
  std::vector<Scalar> c_;
  std::uint32_t p_ = 0;
};

Poly gcd(Poly a, Poly b);  // monic
// Product of the distinct monic irreducible factors; over F_p this takes
// p-th roots where the derivative vanishes.
Poly squarefree_part(const Poly& f);
bool is_squarefree(const Poly& f);
Poly characteristic_polynomial(const Matrix& m);
Poly minimal_polynomial(const Matrix& m);

}  // namespace nilorb

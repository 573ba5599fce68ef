#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nilorb/scalar.hpp"

namespace nilorb {

using Vec = std::vector<Scalar>;

// Dense row-major matrix over Q or F_p.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, std::uint32_t p = 0);
  static Matrix identity(std::size_t n, std::uint32_t p = 0);
  static Matrix from_ints(const std::vector<std::vector<std::int64_t>>& rows, std::uint32_t p = 0);
  static Matrix from_columns(const std::vector<Vec>& cols, std::size_t rows, std::uint32_t p = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t characteristic() const { return p_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& s) const;
  Vec apply(std::span<const Scalar> v) const;
  Matrix transpose() const;
  Vec column(std::size_t j) const;
  Scalar trace() const;
  bool is_zero() const;
  bool is_identity() const;
  Matrix pow(std::uint64_t e) const;

  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::uint32_t p_ = 0;
  std::vector<Scalar> data_;
};

// All eliminations are exact. Over Q the matrix is scaled to integers and
// reduced fraction-free (Bareiss for determinants, content-reduced
// Gauss-Jordan for echelon forms); over F_p ordinary Gauss-Jordan is used.
std::size_t rank(const Matrix& m);
Scalar determinant(const Matrix& m);
// Basis of {x : m x = 0}.
std::vector<Vec> kernel(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);
// Some x with m x = b, if one exists.
std::optional<Vec> solve(const Matrix& m, std::span<const Scalar> b);
// Basis of the span of the given vectors (reduced row echelon rows).
std::vector<Vec> row_space(const std::vector<Vec>& vectors, std::size_t dim, std::uint32_t p);
bool leading_minors_positive(const Matrix& m);

Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const Scalar& s);
bool is_zero(const Vec& v);

}  // namespace nilorb

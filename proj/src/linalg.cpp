#include "nilorb/linalg.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace nilorb {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, Scalar::mod(0, p)) {}

Matrix Matrix::identity(std::size_t n, std::uint32_t p) {
  Matrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::mod(1, p);
  return m;
}

Matrix Matrix::from_ints(const std::vector<std::vector<std::int64_t>>& rows, std::uint32_t p) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size(), p);
  for (std::size_t i = 0; i < m.rows_; ++i)
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = Scalar::mod(rows[i].at(j), p);
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols, std::size_t rows, std::uint32_t p) {
  Matrix m(rows, cols.size(), p);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j].at(i);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("Matrix: shape mismatch in product");
  Matrix r(rows_, o.cols_, p_ ? p_ : o.p_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Scalar& b = o(k, j);
        if (!b.is_zero()) r(i, j) += a * b;
      }
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: shape mismatch in sum");
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + o.scaled(Scalar(-1)); }

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix r = *this;
  for (auto& x : r.data_) x *= s;
  return r;
}

Vec Matrix::apply(std::span<const Scalar> v) const {
  if (v.size() != cols_) throw std::invalid_argument("Matrix: shape mismatch in apply");
  Vec r(rows_, Scalar::mod(0, p_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const Scalar& a = (*this)(i, j);
      if (!a.is_zero() && !v[j].is_zero()) r[i] += a * v[j];
    }
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(cols_, rows_, p_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

Vec Matrix::column(std::size_t j) const {
  Vec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

Scalar Matrix::trace() const {
  Scalar t = Scalar::mod(0, p_);
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != Scalar(i == j ? 1 : 0)) return false;
  return true;
}

Matrix Matrix::pow(std::uint64_t e) const {
  Matrix base = *this, r = identity(rows_, p_);
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t i = 0; i < a.data_.size(); ++i)
    if (a.data_[i] != b.data_[i]) return false;
  return true;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

namespace {

struct Echelon {
  std::vector<std::size_t> pivots;
  std::vector<Vec> rows;  // reduced: pivot entries 1, zero elsewhere in pivot columns
};

using IntRows = std::vector<std::vector<mpz_class>>;

// Scales each row by the lcm of its denominators.
IntRows integer_rows(const Matrix& m) {
  IntRows a(m.rows(), std::vector<mpz_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      mpz_class d = m(i, j).to_mpq().get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      mpq_class v = m(i, j).to_mpq() * l;
      a[i][j] = v.get_num();
    }
  }
  return a;
}

void remove_content(std::vector<mpz_class>& row) {
  mpz_class g = 0;
  for (const auto& x : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1)
    for (auto& x : row) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

Echelon echelon_rational(const Matrix& m) {
  IntRows a = integer_rows(m);
  Echelon e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && a[piv][c] == 0) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      mpz_class f = a[i][c], g = a[r][c];
      for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = g * a[i][j] - f * a[r][j];
      remove_content(a[i]);
    }
    e.pivots.push_back(c);
    ++r;
  }
  for (std::size_t k = 0; k < r; ++k) {
    Vec row(m.cols());
    const mpz_class& d = a[k][e.pivots[k]];
    for (std::size_t j = 0; j < m.cols(); ++j) row[j] = Scalar(mpq_class(a[k][j], d));
    e.rows.push_back(std::move(row));
  }
  return e;
}

Echelon echelon_modp(const Matrix& m) {
  std::vector<Vec> a(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i].push_back(m(i, j));
  Echelon e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && a[piv][c].is_zero()) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[piv], a[r]);
    Scalar inv = a[r][c].inverse();
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      Scalar f = a[i][c];
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
    }
    e.pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  e.rows = std::move(a);
  return e;
}

Echelon echelon(const Matrix& m) { return m.characteristic() == 0 ? echelon_rational(m) : echelon_modp(m); }

}  // namespace

std::size_t rank(const Matrix& m) { return echelon(m).pivots.size(); }

Scalar determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return Scalar::mod(1, m.characteristic());
  if (m.characteristic() != 0) {
    std::vector<Vec> a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i].push_back(m(i, j));
    Scalar det = Scalar::mod(1, m.characteristic());
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = c;
      while (piv < n && a[piv][c].is_zero()) ++piv;
      if (piv == n) return Scalar::mod(0, m.characteristic());
      if (piv != c) {
        std::swap(a[piv], a[c]);
        det = -det;
      }
      det *= a[c][c];
      Scalar inv = a[c][c].inverse();
      for (std::size_t i = c + 1; i < n; ++i) {
        if (a[i][c].is_zero()) continue;
        Scalar f = a[i][c] * inv;
        for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
      }
    }
    return det;
  }
  // Bareiss on the integer-scaled matrix.
  mpq_class scale = 1;
  IntRows a = integer_rows(m);
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < n; ++j) {
      mpz_class d = m(i, j).to_mpq().get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    scale *= l;
  }
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && a[piv][k] == 0) ++piv;
      if (piv == n) return Scalar(0);
      std::swap(a[piv], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  mpq_class det(a[n - 1][n - 1] * sign);
  return Scalar(mpq_class(det / scale));
}

std::vector<Vec> kernel(const Matrix& m) {
  Echelon e = echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  const Scalar zero = Scalar::mod(0, m.characteristic());
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols(), zero);
    v[f] = Scalar::mod(1, m.characteristic());
    for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.rows[k][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const Matrix& m, std::span<const Scalar> b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: shape mismatch");
  Matrix aug(m.rows(), m.cols() + 1, m.characteristic());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  Echelon e = echelon(aug);
  Vec x(m.cols(), Scalar::mod(0, m.characteristic()));
  for (std::size_t k = 0; k < e.pivots.size(); ++k) {
    if (e.pivots[k] == m.cols()) return std::nullopt;
    x[e.pivots[k]] = e.rows[k][m.cols()];
  }
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n, m.characteristic());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Scalar::mod(1, m.characteristic());
  }
  Echelon e = echelon(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n, m.characteristic());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.rows[i][n + j];
  return inv;
}

std::vector<Vec> row_space(const std::vector<Vec>& vectors, std::size_t dim, std::uint32_t p) {
  if (vectors.empty()) return {};
  Matrix m(vectors.size(), dim, p);
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = vectors[i].at(j);
  return echelon(m).rows;
}

bool leading_minors_positive(const Matrix& m) {
  if (m.characteristic() != 0) throw std::invalid_argument("leading_minors_positive: rational matrix required");
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    Matrix sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(i, j);
    if (determinant(sub).to_mpq() <= 0) return false;
  }
  return true;
}

Vec add(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b.at(i);
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b.at(i);
  return r;
}

Vec scale(const Vec& a, const Scalar& s) {
  Vec r = a;
  for (auto& x : r) x *= s;
  return r;
}

bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace nilorb

#include "nilorb/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace nilorb {

Poly::Poly(std::vector<Scalar> coeffs, std::uint32_t p) : c_(std::move(coeffs)), p_(p) {
  for (auto& c : c_) c = c + Scalar::mod(0, p);
  trim();
}

Poly Poly::monomial(std::size_t degree, const Scalar& c, std::uint32_t p) {
  std::vector<Scalar> v(degree + 1, Scalar::mod(0, p));
  v[degree] = c;
  return Poly(std::move(v), p);
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar Poly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Scalar::mod(0, p_); }

Scalar Poly::leading() const {
  if (c_.empty()) throw std::domain_error("Poly: zero polynomial has no leading coefficient");
  return c_.back();
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Scalar> r(std::max(c_.size(), o.c_.size()), Scalar::mod(0, p_));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
  return Poly(std::move(r), p_);
}

Poly Poly::operator-(const Poly& o) const {
  std::vector<Scalar> r(std::max(c_.size(), o.c_.size()), Scalar::mod(0, p_));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
  return Poly(std::move(r), p_);
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly({}, p_);
  std::vector<Scalar> r(c_.size() + o.c_.size() - 1, Scalar::mod(0, p_));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return Poly(std::move(r), p_);
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
  Poly rem = *this;
  if (degree() < d.degree()) return {Poly({}, p_), rem};
  std::vector<Scalar> q(degree() - d.degree() + 1, Scalar::mod(0, p_));
  const Scalar inv = d.leading().inverse();
  while (!rem.is_zero() && rem.degree() >= d.degree()) {
    const std::size_t shift = rem.degree() - d.degree();
    const Scalar f = rem.leading() * inv;
    q[shift] = f;
    for (std::size_t i = 0; i < d.c_.size(); ++i) rem.c_[i + shift] -= f * d.c_[i];
    rem.trim();
  }
  return {Poly(std::move(q), p_), rem};
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  const Scalar inv = leading().inverse();
  std::vector<Scalar> r = c_;
  for (auto& x : r) x *= inv;
  return Poly(std::move(r), p_);
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly({}, p_);
  std::vector<Scalar> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Scalar::mod(static_cast<std::int64_t>(i), p_);
  return Poly(std::move(r), p_);
}

Matrix Poly::eval(const Matrix& m) const {
  Matrix r(m.rows(), m.cols(), m.characteristic());
  for (std::size_t k = c_.size(); k-- > 0;) {
    r = r * m;
    for (std::size_t i = 0; i < m.rows(); ++i) r(i, i) += c_[k];
  }
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.c_.size() != b.c_.size()) return false;
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    if (a.c_[i] != b.c_[i]) return false;
  return true;
}

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[k];
    if (k > 0) os << "*x^" << k;
  }
  return os.str();
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace {

// f(x) = h(x^p)  ->  h(x)^(1/p); on F_p the Frobenius is the identity on coefficients.
Poly pth_root(const Poly& f) {
  const std::uint32_t p = f.characteristic();
  std::vector<Scalar> r;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) r.push_back(f.coeffs()[i]);
  return Poly(std::move(r), p);
}

Poly lcm(const Poly& a, const Poly& b) { return (a * b).divmod(gcd(a, b)).first.monic(); }

}  // namespace

Poly squarefree_part(const Poly& f_in) {
  if (f_in.is_zero()) throw std::domain_error("squarefree_part: zero polynomial");
  Poly f = f_in.monic();
  if (f.degree() <= 0) return f;
  Poly df = f.derivative();
  if (df.is_zero()) return squarefree_part(pth_root(f));
  Poly g = gcd(f, df);
  Poly w = f.divmod(g).first.monic();
  if (g.degree() == 0) return w;
  return lcm(w, squarefree_part(g));
}

bool is_squarefree(const Poly& f) {
  if (f.degree() <= 0) return true;
  return gcd(f, f.derivative()).degree() == 0;
}

Poly characteristic_polynomial(const Matrix& m_in) {
  if (m_in.rows() != m_in.cols()) throw std::invalid_argument("characteristic_polynomial: matrix not square");
  const std::size_t n = m_in.rows();
  const std::uint32_t p = m_in.characteristic();
  Matrix h = m_in;
  // Similarity reduction to upper Hessenberg form.
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && h(i, m - 1).is_zero()) ++i;
    if (i == n) continue;
    if (i != m) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(i, j), h(m, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(h(j, i), h(j, m));
    }
    const Scalar inv = h(m, m - 1).inverse();
    for (std::size_t k = m + 1; k < n; ++k) {
      const Scalar u = h(k, m - 1) * inv;
      if (u.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) h(k, j) -= u * h(m, j);
      for (std::size_t j = 0; j < n; ++j) h(j, m) += u * h(j, k);
    }
  }
  const Poly x({Scalar::mod(0, p), Scalar::mod(1, p)}, p);
  std::vector<Poly> ps{Poly({Scalar::mod(1, p)}, p)};
  for (std::size_t k = 1; k <= n; ++k) {
    Poly next = (x - Poly({h(k - 1, k - 1)}, p)) * ps[k - 1];
    Scalar prod = Scalar::mod(1, p);
    for (std::size_t i = k - 1; i-- > 0;) {
      prod *= h(i + 1, i);
      next = next - Poly({prod * h(i, k - 1)}, p) * ps[i];
    }
    ps.push_back(next);
  }
  return ps[n];
}

Poly minimal_polynomial(const Matrix& m) {
  const std::size_t n = m.rows();
  const std::uint32_t p = m.characteristic();
  std::vector<Vec> powers;
  Matrix cur = Matrix::identity(n, p);
  for (std::size_t k = 0; k <= n; ++k) {
    Vec flat;
    flat.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) flat.push_back(cur(i, j));
    if (!powers.empty()) {
      Matrix basis = Matrix::from_columns(powers, n * n, p);
      if (auto c = solve(basis, flat)) {
        std::vector<Scalar> coeffs(k + 1, Scalar::mod(0, p));
        for (std::size_t i = 0; i < k; ++i) coeffs[i] = -(*c)[i];
        coeffs[k] = Scalar::mod(1, p);
        return Poly(std::move(coeffs), p);
      }
    }
    powers.push_back(std::move(flat));
    cur = cur * m;
  }
  throw std::logic_error("minimal_polynomial: no dependency found");
}

}  // namespace nilorb

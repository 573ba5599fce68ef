#include "nilorb/localquat.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include <omp.h>

namespace nilorb {

// ---------------------------------------------------------------- F_q

std::shared_ptr<const FiniteField> FiniteField::get(std::uint32_t q) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::shared_ptr<const FiniteField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(q); it != cache.end()) return it->second;
  if (q < 2 || q > 256) throw std::invalid_argument("FiniteField: q must be a prime power in [2, 256]");
  std::uint32_t p = 2;
  while (q % p) ++p;
  std::uint32_t k = 0;
  for (std::uint32_t r = q; r > 1; r /= p, ++k)
    if (r % p) throw std::invalid_argument("FiniteField: " + std::to_string(q) + " is not a prime power");

  auto f = std::make_shared<FiniteField>();
  f->q_ = q;
  f->p_ = p;
  f->k_ = k;
  auto digits = [&](std::uint32_t a) {
    std::vector<std::uint32_t> d(k);
    for (auto& x : d) {
      x = a % p;
      a /= p;
    }
    return d;
  };
  auto index = [&](const std::vector<std::uint32_t>& d) {
    std::uint32_t a = 0;
    for (std::size_t i = d.size(); i-- > 0;) a = a * p + d[i];
    return a;
  };
  f->add_.resize(q * q);
  f->neg_.resize(q);
  for (std::uint32_t a = 0; a < q; ++a) {
    auto da = digits(a);
    std::vector<std::uint32_t> dn(k);
    for (std::uint32_t i = 0; i < k; ++i) dn[i] = (p - da[i]) % p;
    f->neg_[a] = index(dn);
    for (std::uint32_t b = 0; b < q; ++b) {
      auto db = digits(b);
      for (std::uint32_t i = 0; i < k; ++i) db[i] = (da[i] + db[i]) % p;
      f->add_[a * q + b] = index(db);
    }
  }
  // Monic modulus x^k + m_{k-1} x^{k-1} + ... + m_0: the first, in index order, with no zero divisors.
  for (std::uint32_t m = 0; m < q; ++m) {
    const auto md = digits(m);
    std::vector<std::uint32_t> table(q * q);
    bool field = true;
    for (std::uint32_t a = 0; a < q && field; ++a) {
      const auto da = digits(a);
      for (std::uint32_t b = 0; b < q; ++b) {
        const auto db = digits(b);
        std::vector<std::uint32_t> prod(2 * k, 0);
        for (std::uint32_t i = 0; i < k; ++i)
          for (std::uint32_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        for (std::uint32_t d = 2 * k - 1; d >= k; --d) {
          const std::uint32_t c = prod[d];
          if (!c) continue;
          prod[d] = 0;
          for (std::uint32_t i = 0; i < k; ++i) prod[d - k + i] = (prod[d - k + i] + (p - c) * md[i]) % p;
        }
        prod.resize(k);
        table[a * q + b] = index(prod);
        if (a && b && !table[a * q + b]) {
          field = false;
          break;
        }
      }
    }
    if (field) {
      f->mul_ = std::move(table);
      break;
    }
  }
  if (f->mul_.empty()) throw std::logic_error("FiniteField: no irreducible modulus found");
  f->eps_ = 0;
  if (p != 2)
    for (std::uint32_t a = 1; a < q; ++a)
      if (!f->is_square(a)) {
        f->eps_ = a;
        break;
      }
  cache[q] = f;
  return f;
}

std::uint32_t FiniteField::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t r = 1;
  for (; e; e >>= 1, a = mul(a, a))
    if (e & 1) r = mul(r, a);
  return r;
}

std::uint32_t FiniteField::inv(std::uint32_t a) const {
  if (!a) throw std::domain_error("FiniteField: inverse of zero");
  return pow(a, q_ - 2);
}

std::uint32_t FiniteField::from_int(std::int64_t v) const {
  const auto pp = static_cast<std::int64_t>(p_);
  return static_cast<std::uint32_t>(((v % pp) + pp) % pp);
}

bool FiniteField::is_square(std::uint32_t a) const {
  if (p_ == 2) return true;
  return pow(a, (q_ - 1) / 2) == 1;
}

std::optional<std::uint32_t> FiniteField::sqrt(std::uint32_t a) const {
  for (std::uint32_t x = 0; x < q_; ++x)
    if (mul(x, x) == a) return x;
  return std::nullopt;
}

int FiniteField::legendre(std::uint32_t a) const {
  if (!a) throw std::domain_error("legendre: zero argument");
  return is_square(a) ? 1 : -1;
}

// ---------------------------------------------------------------- F_q((t))

LaurentScalar LaurentScalar::exact_zero(FieldPtr f) {
  LaurentScalar x;
  x.f_ = std::move(f);
  x.exact_zero_ = true;
  return x;
}

LaurentScalar LaurentScalar::zero_to(FieldPtr f, std::int64_t prec) {
  LaurentScalar x;
  x.f_ = std::move(f);
  x.v_ = prec;
  return x;
}

LaurentScalar LaurentScalar::monomial(FieldPtr f, std::uint32_t c, std::int64_t v, std::size_t n) {
  if (n == 0) throw std::invalid_argument("LaurentScalar: precision must be positive");
  if (c == 0) return exact_zero(std::move(f));
  LaurentScalar x;
  x.f_ = std::move(f);
  x.v_ = v;
  x.c_.assign(n, 0);
  x.c_[0] = c;
  return x;
}

LaurentScalar LaurentScalar::series(FieldPtr f, std::int64_t v, std::vector<std::uint32_t> coeffs) {
  LaurentScalar x;
  x.f_ = std::move(f);
  x.v_ = v;
  x.c_ = std::move(coeffs);
  x.normalize();
  return x;
}

void LaurentScalar::normalize() {
  std::size_t z = 0;
  while (z < c_.size() && c_[z] == 0) ++z;
  if (z) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(z));
    v_ += static_cast<std::int64_t>(z);
  }
}

std::int64_t LaurentScalar::valuation() const {
  if (is_zero()) throw PrecisionError("valuation of a zero value");
  return v_;
}

std::int64_t LaurentScalar::abs_precision() const {
  if (exact_zero_) return INT64_MAX;
  return v_ + static_cast<std::int64_t>(c_.size());
}

std::uint32_t LaurentScalar::leading() const {
  if (is_zero()) throw PrecisionError("leading coefficient of a zero value");
  return c_[0];
}

std::uint32_t LaurentScalar::coeff(std::int64_t k) const {
  if (exact_zero_) return 0;
  if (k >= abs_precision()) throw PrecisionError("coefficient beyond the working precision");
  if (k < v_) return 0;
  return c_[static_cast<std::size_t>(k - v_)];
}

LaurentScalar LaurentScalar::operator+(const LaurentScalar& o) const {
  if (exact_zero_) return o;
  if (o.exact_zero_) return *this;
  const std::int64_t prec = std::min(abs_precision(), o.abs_precision());
  const std::int64_t lo = std::min(is_zero() ? prec : v_, o.is_zero() ? prec : o.v_);
  if (lo >= prec) return zero_to(f_, prec);
  std::vector<std::uint32_t> c(static_cast<std::size_t>(prec - lo), 0);
  for (std::int64_t k = lo; k < prec; ++k) c[static_cast<std::size_t>(k - lo)] = f_->add(coeff(k), o.coeff(k));
  LaurentScalar r = series(f_, lo, std::move(c));
  if (r.c_.empty()) return zero_to(f_, prec);
  return r;
}

LaurentScalar LaurentScalar::operator-() const {
  LaurentScalar r = *this;
  for (auto& x : r.c_) x = f_->neg(x);
  return r;
}

LaurentScalar LaurentScalar::operator-(const LaurentScalar& o) const { return *this + (-o); }

LaurentScalar LaurentScalar::operator*(const LaurentScalar& o) const {
  if (exact_zero_ || o.exact_zero_) return exact_zero(f_ ? f_ : o.f_);
  // O(t^P) times a value of valuation w is O(t^{P+w})
  if (is_zero() || o.is_zero()) return zero_to(f_, v_ + o.v_);
  const std::size_t n = std::min(c_.size(), o.c_.size());
  std::vector<std::uint32_t> c(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!c_[i]) continue;
    for (std::size_t j = 0; i + j < n; ++j) c[i + j] = f_->add(c[i + j], f_->mul(c_[i], o.c_[j]));
  }
  LaurentScalar r;
  r.f_ = f_;
  r.v_ = v_ + o.v_;
  r.c_ = std::move(c);
  return r;
}

LaurentScalar LaurentScalar::inverse() const {
  if (exact_zero_) throw std::domain_error("LaurentScalar: division by exact zero");
  if (is_zero()) throw PrecisionError("LaurentScalar: division by a value that is zero to working precision");
  const std::size_t n = c_.size();
  std::vector<std::uint32_t> b(n, 0);
  const std::uint32_t i0 = f_->inv(c_[0]);
  b[0] = i0;
  for (std::size_t k = 1; k < n; ++k) {
    std::uint32_t s = 0;
    for (std::size_t i = 1; i <= k; ++i) s = f_->add(s, f_->mul(c_[i], b[k - i]));
    b[k] = f_->neg(f_->mul(i0, s));
  }
  LaurentScalar r;
  r.f_ = f_;
  r.v_ = -v_;
  r.c_ = std::move(b);
  return r;
}

LaurentScalar LaurentScalar::scaled(std::uint32_t c) const {
  if (exact_zero_) return *this;
  if (c == 0) return exact_zero(f_);
  LaurentScalar r = *this;
  for (auto& x : r.c_) x = f_->mul(x, c);
  return r;
}

LaurentScalar LaurentScalar::shifted(std::int64_t k) const {
  if (exact_zero_) return *this;
  LaurentScalar r = *this;
  r.v_ += k;
  return r;
}

LaurentScalar LaurentScalar::truncated(std::size_t n) const {
  LaurentScalar r = *this;
  if (r.c_.size() > n) r.c_.resize(n);
  return r;
}

bool LaurentScalar::agrees(const LaurentScalar& o) const { return (*this - o).is_zero(); }

std::optional<LaurentScalar> LaurentScalar::sqrt() const {
  if (exact_zero_) return *this;
  if (is_zero()) throw PrecisionError("sqrt of a value that is zero to working precision");
  if (f_->p() == 2) throw std::invalid_argument("sqrt: characteristic 2");
  if (v_ % 2) return std::nullopt;
  auto r0 = f_->sqrt(c_[0]);
  if (!r0) return std::nullopt;
  const std::size_t n = c_.size();
  std::vector<std::uint32_t> y(n, 0);
  y[0] = *r0;
  const std::uint32_t inv2y0 = f_->inv(f_->add(y[0], y[0]));
  for (std::size_t k = 1; k < n; ++k) {
    std::uint32_t s = 0;
    for (std::size_t i = 1; i < k; ++i) s = f_->add(s, f_->mul(y[i], y[k - i]));
    y[k] = f_->mul(f_->sub(c_[k], s), inv2y0);
  }
  LaurentScalar r;
  r.f_ = f_;
  r.v_ = v_ / 2;
  r.c_ = std::move(y);
  return r;
}

std::string LaurentScalar::to_string() const {
  if (exact_zero_) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i]) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[i] << "*t^" << v_ + static_cast<std::int64_t>(i);
  }
  if (first) os << "0";
  os << " + O(t^" << abs_precision() << ")";
  return os.str();
}

std::string to_string(SquareClass c) {
  switch (c) {
    case SquareClass::One: return "1";
    case SquareClass::Eps: return "eps";
    case SquareClass::T: return "t";
    case SquareClass::EpsT: return "eps*t";
  }
  return "?";
}

SquareClass square_class(const LaurentScalar& x) {
  if (x.is_exact_zero()) throw std::domain_error("square_class: zero");
  const std::int64_t v = x.valuation();
  const bool sq = x.field()->is_square(x.leading());
  const bool odd = ((v % 2) + 2) % 2 == 1;
  if (!odd) return sq ? SquareClass::One : SquareClass::Eps;
  return sq ? SquareClass::T : SquareClass::EpsT;
}

LaurentScalar square_class_rep(const FieldPtr& f, SquareClass c, std::size_t n) {
  const std::uint32_t eps = f->least_nonsquare();
  switch (c) {
    case SquareClass::One: return LaurentScalar::monomial(f, 1, 0, n);
    case SquareClass::Eps: return LaurentScalar::monomial(f, eps, 0, n);
    case SquareClass::T: return LaurentScalar::monomial(f, 1, 1, n);
    case SquareClass::EpsT: return LaurentScalar::monomial(f, eps, 1, n);
  }
  return LaurentScalar::exact_zero(f);
}

int hilbert_symbol(const LaurentScalar& a, const LaurentScalar& b) {
  const FieldPtr& f = a.field();
  if (f->p() == 2) throw std::invalid_argument("hilbert_symbol: q must be odd");
  const std::int64_t va = a.valuation(), vb = b.valuation();
  std::uint32_t r = 1;
  if (((va * vb) % 2 + 2) % 2 == 1) r = f->neg(r);
  auto ipow = [&](std::uint32_t x, std::int64_t e) { return e >= 0 ? f->pow(x, static_cast<std::uint64_t>(e)) : f->pow(f->inv(x), static_cast<std::uint64_t>(-e)); };
  r = f->mul(r, ipow(a.leading(), vb));
  r = f->mul(r, ipow(b.leading(), -va));
  return f->legendre(r);
}

// ---------------------------------------------------------------- quaternions

namespace {

const FieldPtr& field_of(const Quaternion& x) {
  for (const auto* s : {&x.a, &x.b, &x.c, &x.d})
    if (s->field()) return s->field();
  throw std::logic_error("quaternion without a field");
}

}  // namespace

Quaternion Quaternion::scalar(const LaurentScalar& s) {
  const auto z = LaurentScalar::exact_zero(s.field());
  return {s, z, z, z};
}

Quaternion Quaternion::basis(const FieldPtr& f, int which, std::size_t n) {
  const auto z = LaurentScalar::exact_zero(f);
  Quaternion x{z, z, z, z};
  const auto one = LaurentScalar::monomial(f, 1, 0, n);
  switch (which) {
    case 0: x.a = one; break;
    case 1: x.b = one; break;
    case 2: x.c = one; break;
    default: x.d = one;
  }
  return x;
}

Quaternion Quaternion::operator*(const Quaternion& o) const {
  const std::uint32_t eps = field_of(*this)->least_nonsquare();
  // i^2 = eps, j^2 = t, (ij)^2 = -eps t
  auto al = [&](const LaurentScalar& x) { return x.scaled(eps); };
  auto be = [&](const LaurentScalar& x) { return x.shifted(1); };
  Quaternion r;
  r.a = a * o.a + al(b * o.b) + be(c * o.c) - al(be(d * o.d));
  r.b = a * o.b + b * o.a - be(c * o.d) + be(d * o.c);
  r.c = a * o.c + c * o.a + al(b * o.d) - al(d * o.b);
  r.d = a * o.d + d * o.a + b * o.c - c * o.b;
  return r;
}

Quaternion Quaternion::operator+(const Quaternion& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
Quaternion Quaternion::operator-(const Quaternion& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
Quaternion Quaternion::scaled(const LaurentScalar& s) const { return {a * s, b * s, c * s, d * s}; }
bool Quaternion::is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero(); }
bool Quaternion::agrees(const Quaternion& o) const { return (*this - o).is_zero(); }

nlohmann::json Quaternion::to_json() const {
  return {{"a", a.to_string()}, {"b", b.to_string()}, {"c", c.to_string()}, {"d", d.to_string()}};
}

Quaternion conj(const Quaternion& x) { return {x.a, -x.b, -x.c, -x.d}; }

LaurentScalar nrd(const Quaternion& x) {
  const std::uint32_t eps = field_of(x)->least_nonsquare();
  return x.a * x.a - (x.b * x.b).scaled(eps) - (x.c * x.c).shifted(1) + (x.d * x.d).scaled(eps).shifted(1);
}

LaurentScalar trd(const Quaternion& x) { return x.a + x.a; }

Quaternion skew_part(const Quaternion& x) { return {LaurentScalar::exact_zero(field_of(x)), x.b, x.c, x.d}; }

bool is_skew(const Quaternion& x) { return x.a.is_zero(); }

Quaternion quat_inverse(const Quaternion& x) { return conj(x).scaled(nrd(x).inverse()); }

Quaternion rho(const Quaternion& x, const Quaternion& y) { return x * y * conj(x); }

SquareClass nrd_class(const Quaternion& y) { return square_class(nrd(y)); }

SquareClass eta(const Quaternion& y) {
  if (!is_skew(y)) throw std::invalid_argument("eta: element is not skew");
  if (y.is_zero()) throw std::invalid_argument("eta: zero element");
  const SquareClass c = square_class(-nrd(y));
  if (c == SquareClass::One) throw std::logic_error("eta: trivial square class, the algebra would be split");
  return c;
}

std::optional<std::pair<LaurentScalar, LaurentScalar>> solve_norm_equation(const LaurentScalar& a,
                                                                           const LaurentScalar& s,
                                                                           std::size_t budget, std::size_t* tried) {
  const FieldPtr& f = s.field();
  const std::size_t n = std::min(a.rel_precision(), s.rel_precision());
  std::size_t count = 0;
  auto attempt = [&](const LaurentScalar& w) -> std::optional<std::pair<LaurentScalar, LaurentScalar>> {
    ++count;
    const LaurentScalar r = s + a * w * w;
    if (r.is_zero()) return std::nullopt;
    if (auto u = r.sqrt()) return std::make_pair(*u, w);
    return std::nullopt;
  };
  auto done = [&](auto res) {
    if (tried) *tried = count;
    return res;
  };
  if (auto r = attempt(LaurentScalar::exact_zero(f))) return done(r);
  // u = 0: w^2 = -s / a
  if (auto w = (-s / a).sqrt()) {
    ++count;
    return done(std::make_optional(std::make_pair(LaurentScalar::exact_zero(f), *w)));
  }
  const std::int64_t centre = (s.valuation() - a.valuation()) / 2;
  for (std::int64_t radius = 0; radius <= 16 && count < budget; ++radius)
    for (std::int64_t k : {centre - radius, centre + radius}) {
      if (radius == 0 && k != centre) continue;
      for (std::uint32_t c0 = 1; c0 < f->q() && count < budget; ++c0) {
        if (auto r = attempt(LaurentScalar::monomial(f, c0, k, n))) return done(r);
        for (std::uint32_t c1 = 1; c1 < f->q() && count < budget; ++c1) {
          std::vector<std::uint32_t> w(n, 0);
          w[0] = c0;
          if (n > 1) w[1] = c1;
          if (auto r = attempt(LaurentScalar::series(f, k, w))) return done(r);
        }
      }
    }
  return done(std::optional<std::pair<LaurentScalar, LaurentScalar>>{});
}

namespace {

// A nonzero element anticommuting with the skew element u.
std::optional<Quaternion> anticommuting(const Quaternion& u, std::size_t n) {
  const FieldPtr& f = field_of(u);
  for (int k = 1; k <= 3; ++k) {
    const Quaternion x = Quaternion::basis(f, k, n);
    const Quaternion g = x * u - u * x;
    if (!g.is_zero() && !nrd(g).is_zero()) return g;
  }
  return std::nullopt;
}

std::size_t working_precision(const Quaternion& y) {
  std::size_t n = SIZE_MAX;
  for (const auto* s : {&y.a, &y.b, &y.c, &y.d})
    if (!s->is_exact_zero()) n = std::min(n, s->rel_precision());
  return n == SIZE_MAX ? 16 : n;
}

}  // namespace

bool verify_witness(const Quaternion& g, const Quaternion& y1, const Quaternion& y2, std::size_t n) {
  const Quaternion diff = rho(g, y2) - y1;
  std::int64_t vmin = INT64_MAX;
  for (const auto* s : {&y1.a, &y1.b, &y1.c, &y1.d})
    if (!s->is_zero()) vmin = std::min(vmin, s->valuation());
  for (const auto* s : {&diff.a, &diff.b, &diff.c, &diff.d}) {
    if (!s->is_zero()) return false;
    if (!s->is_exact_zero() && s->abs_precision() < vmin + static_cast<std::int64_t>(n)) return false;
  }
  return true;
}

SkewPairResult classify_skew_pair(const Quaternion& y1, const Quaternion& y2, std::size_t budget) {
  SkewPairResult res;
  res.same_orbit = eta(y1) == eta(y2);
  if (!res.same_orbit) return res;
  const FieldPtr& f = field_of(y1);
  const std::size_t n = std::min(working_precision(y1), working_precision(y2));
  if (y1.agrees(y2)) {
    res.witness = Quaternion::basis(f, 0, n);
    return res;
  }
  // lambda^2 = y1^2 / y2^2, so w = lambda y2 has w^2 = u^2 for u = y1.
  const LaurentScalar A = -nrd(y1);
  const auto lam = (nrd(y1) / nrd(y2)).sqrt();
  if (!lam) throw std::logic_error("classify_skew_pair: equal eta but non-square ratio");
  const Quaternion w = y2.scaled(*lam);
  Quaternion h = y1 * w + Quaternion::scalar(A);
  if (h.is_zero() || nrd(h).is_zero()) {
    // w = -u: an anticommuting element conjugates w to u
    auto g = anticommuting(y1, n);
    if (!g) throw PrecisionError("classify_skew_pair: no anticommuting element at this precision");
    h = *g;
  }
  // rho(h) y2 = (Nrd(h) / lambda) y1; rescale by a norm from F(y1), flipping first if needed.
  LaurentScalar s = *lam / nrd(h);
  Quaternion g = h;
  if (hilbert_symbol(A, s) != 1) {
    auto gam = anticommuting(y1, n);
    if (!gam) throw PrecisionError("classify_skew_pair: no anticommuting element at this precision");
    s = -s / nrd(*gam);
    g = *gam * h;
  }
  std::size_t tried = 0;
  auto sol = solve_norm_equation(A, s, budget, &tried);
  res.seeds_tried = tried;
  if (!sol) {
    res.budget_exhausted = true;
    return res;
  }
  // m = u0 + w0 y1 has Nrd(m) = u0^2 - A w0^2 = s
  const Quaternion m = Quaternion::scalar(sol->first) + y1.scaled(sol->second);
  res.witness = m * g;
  return res;
}

// ---------------------------------------------------------------- census

nlohmann::json CensusReport::to_json() const {
  nlohmann::json img = nlohmann::json::array();
  for (auto c : eta_image) img.push_back(to_string(c));
  return {{"q", q},
          {"precision", precision},
          {"eta_image", img},
          {"orbit_count", orbit_count},
          {"samples", samples},
          {"pairs_tested", pairs_tested},
          {"witnesses_found", witnesses_found},
          {"budget_exhausted", budget_exhausted},
          {"failures", failures},
          {"pass", pass()}};
}

CensusReport c2_orbit_census(std::uint32_t q, std::size_t precision, std::uint64_t seed, std::size_t samples,
                             std::size_t pairs, int threads) {
  if (q % 2 == 0 || q > 9) throw std::invalid_argument("c2_orbit_census: q must be an odd prime power <= 9");
  if (precision < 12) throw std::invalid_argument("c2_orbit_census: precision must be at least 12");
  const FieldPtr f = FiniteField::get(q);
  CensusReport rep;
  rep.q = q;
  rep.precision = precision;
  const std::size_t work = precision + 16;  // guard digits above the verified precision

  std::mt19937_64 rng(seed);
  auto coeff = [&](bool nonzero) {
    std::uniform_int_distribution<std::uint32_t> d(nonzero ? 1 : 0, q - 1);
    return d(rng);
  };
  auto random_scalar = [&]() {
    if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) return LaurentScalar::exact_zero(f);
    const std::int64_t v = std::uniform_int_distribution<std::int64_t>(-2, 3)(rng);
    std::vector<std::uint32_t> c(work);
    c[0] = coeff(true);
    for (std::size_t i = 1; i < work; ++i) c[i] = coeff(false);
    return LaurentScalar::series(f, v, c);
  };
  std::vector<Quaternion> ys;
  while (ys.size() < samples) {
    Quaternion y{LaurentScalar::exact_zero(f), random_scalar(), random_scalar(), random_scalar()};
    if (!y.is_zero()) ys.push_back(y);
  }
  rep.samples = ys.size();

  std::vector<SquareClass> cls(ys.size());
  std::set<SquareClass> image;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    try {
      cls[i] = eta(ys[i]);
      image.insert(cls[i]);
    } catch (const std::logic_error& e) {
      rep.failures.push_back(std::string("sample ") + std::to_string(i) + ": " + e.what());
    }
  }
  rep.eta_image.assign(image.begin(), image.end());
  if (image.count(SquareClass::One)) rep.failures.push_back("eta takes the trivial class");

  // Same-class pairs, round robin over the classes.
  std::map<SquareClass, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < ys.size(); ++i) by_class[cls[i]].push_back(i);
  std::vector<std::pair<std::size_t, std::size_t>> todo;
  for (std::size_t k = 0; todo.size() < pairs && k < ys.size(); ++k)
    for (auto& [c, idx] : by_class) {
      if (idx.size() < 2 || todo.size() >= pairs) continue;
      std::uniform_int_distribution<std::size_t> pick(0, idx.size() - 1);
      std::size_t a = pick(rng), b = pick(rng);
      if (a == b) b = (b + 1) % idx.size();
      todo.emplace_back(idx[a], idx[b]);
    }
  // Cross-class pairs must be told apart.
  std::vector<std::pair<std::size_t, std::size_t>> cross;
  for (std::size_t i = 0; i + 1 < ys.size() && cross.size() < pairs / 4; ++i)
    if (cls[i] != cls[i + 1]) cross.emplace_back(i, i + 1);

  std::vector<int> found(todo.size(), 0), exhausted(todo.size(), 0);
  std::vector<std::string> err(todo.size());
  const auto nt = static_cast<std::int64_t>(todo.size());
#pragma omp parallel for num_threads(threads > 0 ? threads : omp_get_max_threads()) schedule(dynamic)
  for (std::int64_t k = 0; k < nt; ++k) {
    const auto [a, b] = todo[static_cast<std::size_t>(k)];
    try {
      auto r = classify_skew_pair(ys[a], ys[b]);
      if (!r.same_orbit) {
        err[static_cast<std::size_t>(k)] = "same eta classified as different";
      } else if (r.budget_exhausted) {
        exhausted[static_cast<std::size_t>(k)] = 1;
      } else if (r.witness && verify_witness(*r.witness, ys[a], ys[b], precision)) {
        found[static_cast<std::size_t>(k)] = 1;
      } else {
        err[static_cast<std::size_t>(k)] = "witness fails verification";
      }
    } catch (const std::exception& e) {
      err[static_cast<std::size_t>(k)] = e.what();
    }
  }
  rep.pairs_tested = todo.size();
  for (std::size_t k = 0; k < todo.size(); ++k) {
    rep.witnesses_found += found[k];
    rep.budget_exhausted += exhausted[k];
    if (!err[k].empty())
      rep.failures.push_back("pair (" + std::to_string(todo[k].first) + "," + std::to_string(todo[k].second) + "): " + err[k]);
  }
  for (auto [a, b] : cross)
    if (classify_skew_pair(ys[a], ys[b]).same_orbit) rep.failures.push_back("different eta classified as same orbit");
  rep.orbit_count = image.size();
  return rep;
}

// ---------------------------------------------------------------- Artin-Schreier

nlohmann::json ArtinSchreierResult::to_json() const {
  return {{"solvable", solvable},
          {"needs_residue_extension", needs_residue_extension},
          {"obstruction_valuation", obstruction_valuation ? nlohmann::json(*obstruction_valuation) : nlohmann::json(nullptr)}};
}

ArtinSchreierResult artin_schreier_solvable(const LaurentScalar& g) {
  ArtinSchreierResult res;
  if (g.is_exact_zero()) {
    res.solvable = true;
    return res;
  }
  const FieldPtr& f = g.field();
  const std::uint32_t p = f->p();
  if (g.abs_precision() < 1) throw PrecisionError("artin_schreier_solvable: window ends before the constant term");
  if (g.is_zero()) {
    res.solvable = true;
    return res;
  }
  // Polar part and constant term; c t^{-mp} ~ c^{1/p} t^{-m} modulo y^p - y.
  std::map<std::int64_t, std::uint32_t> polar;
  for (std::int64_t k = std::min<std::int64_t>(g.valuation(), 0); k <= 0; ++k)
    if (auto c = g.coeff(k)) polar[k] = c;
  const std::uint64_t root_exp = f->q() / p;  // c^{1/p} = c^{q/p}
  for (std::int64_t k = polar.empty() ? 0 : polar.begin()->first; k < 0; ++k) {
    auto it = polar.find(k);
    if (it == polar.end() || it->second == 0) continue;
    if ((-k) % static_cast<std::int64_t>(p) == 0) {
      const std::uint32_t r = f->pow(it->second, root_exp);
      const std::int64_t kk = k / static_cast<std::int64_t>(p);
      polar[kk] = f->add(polar.count(kk) ? polar[kk] : 0, r);
      it->second = 0;
    } else if (!res.obstruction_valuation) {
      res.obstruction_valuation = k;
    }
  }
  res.solvable = !res.obstruction_valuation;
  // Constant c: solvable over the residue field iff Tr_{F_q/F_p}(c) = 0.
  const std::uint32_t c0 = polar.count(0) ? polar[0] : 0;
  std::uint32_t tr = 0, x = c0;
  for (std::uint32_t i = 0; i < f->degree(); ++i) {
    tr = f->add(tr, x);
    x = f->pow(x, p);
  }
  res.needs_residue_extension = tr != 0;
  return res;
}

}  // namespace nilorb

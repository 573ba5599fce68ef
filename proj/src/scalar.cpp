#include "nilorb/scalar.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace nilorb {

namespace {

std::int64_t reduce(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  return r < 0 ? r + p : r;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw std::domain_error("Scalar: element is not invertible");
  return t < 0 ? t + p : t;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Scalar::Scalar(std::int64_t v) : v_(v) {}

Scalar::Scalar(const mpq_class& q) : v_(q) {
  std::get<mpq_class>(v_).canonicalize();
  normalize();
}

Scalar Scalar::mod(std::int64_t v, std::uint32_t p) {
  Scalar s;
  if (p == 0) return Scalar(v);
  s.p_ = p;
  s.v_ = reduce(v, p);
  return s;
}

Scalar Scalar::fraction(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("Scalar: zero denominator");
  return Scalar(mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))));
}

void Scalar::normalize() {
  if (p_ != 0) return;
  if (auto* q = std::get_if<mpq_class>(&v_)) {
    if (q->get_den() == 1 && q->get_num().fits_slong_p()) v_ = static_cast<std::int64_t>(q->get_num().get_si());
  }
}

// Brings *this and o into the same field, coercing char-0 integers into F_p.
void Scalar::align(Scalar& o) {
  if (p_ == o.p_) return;
  auto coerce = [](Scalar& s, std::uint32_t p) {
    if (s.p_ != 0 || !std::holds_alternative<std::int64_t>(s.v_))
      throw std::invalid_argument("Scalar: characteristic mismatch");
    s = Scalar::mod(std::get<std::int64_t>(s.v_), p);
  };
  if (p_ == 0)
    coerce(*this, o.p_);
  else if (o.p_ == 0)
    coerce(o, p_);
  else
    throw std::invalid_argument("Scalar: characteristic mismatch");
}

bool Scalar::is_zero() const {
  if (auto* i = std::get_if<std::int64_t>(&v_)) return *i == 0;
  return std::get<mpq_class>(v_) == 0;
}

bool Scalar::is_one() const {
  if (auto* i = std::get_if<std::int64_t>(&v_)) return *i == 1;
  return std::get<mpq_class>(v_) == 1;
}

bool Scalar::is_integer() const { return p_ != 0 || std::holds_alternative<std::int64_t>(v_); }

std::int64_t Scalar::to_int() const {
  if (auto* i = std::get_if<std::int64_t>(&v_)) return *i;
  throw std::domain_error("Scalar: value is not a 64-bit integer");
}

mpq_class Scalar::to_mpq() const {
  if (p_ != 0) throw std::domain_error("Scalar: not a rational");
  if (auto* i = std::get_if<std::int64_t>(&v_)) return mpq_class(mpz_class(static_cast<long>(*i)));
  return std::get<mpq_class>(v_);
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (p_ != 0) {
    auto& v = std::get<std::int64_t>(r.v_);
    v = v == 0 ? 0 : p_ - v;
    return r;
  }
  if (auto* i = std::get_if<std::int64_t>(&r.v_)) {
    if (*i == std::numeric_limits<std::int64_t>::min()) return Scalar(-to_mpq());
    *i = -*i;
    return r;
  }
  std::get<mpq_class>(r.v_) = -std::get<mpq_class>(r.v_);
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o_in) {
  Scalar o = o_in;
  align(o);
  if (p_ != 0) {
    auto& v = std::get<std::int64_t>(v_);
    v = (v + std::get<std::int64_t>(o.v_)) % p_;
    return *this;
  }
  auto* a = std::get_if<std::int64_t>(&v_);
  auto* b = std::get_if<std::int64_t>(&o.v_);
  std::int64_t r;
  if (a && b && !__builtin_add_overflow(*a, *b, &r)) {
    *a = r;
    return *this;
  }
  *this = Scalar(to_mpq() + o.to_mpq());
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o_in) {
  Scalar o = o_in;
  align(o);
  if (p_ != 0) {
    auto& v = std::get<std::int64_t>(v_);
    v = static_cast<std::int64_t>((static_cast<__int128>(v) * std::get<std::int64_t>(o.v_)) % p_);
    return *this;
  }
  auto* a = std::get_if<std::int64_t>(&v_);
  auto* b = std::get_if<std::int64_t>(&o.v_);
  std::int64_t r;
  if (a && b && !__builtin_mul_overflow(*a, *b, &r)) {
    *a = r;
    return *this;
  }
  *this = Scalar(to_mpq() * o.to_mpq());
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("Scalar: division by zero");
  if (p_ != 0) return Scalar::mod(mod_inverse(std::get<std::int64_t>(v_), p_), p_);
  return Scalar(1 / to_mpq());
}

Scalar& Scalar::operator/=(const Scalar& o_in) {
  Scalar o = o_in;
  align(o);
  if (p_ == 0) {
    auto* a = std::get_if<std::int64_t>(&v_);
    auto* b = std::get_if<std::int64_t>(&o.v_);
    if (a && b && *b != 0 && *b != -1 && *a % *b == 0) {
      *a /= *b;
      return *this;
    }
  }
  return *this *= o.inverse();
}

Scalar Scalar::pow(std::uint64_t e) const {
  Scalar base = *this, r = p_ ? Scalar::mod(1, p_) : Scalar(1);
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) {
    // Char-0 integer literals compare after coercion.
    Scalar x = a, y = b;
    try {
      x.align(y);
    } catch (const std::invalid_argument&) {
      return false;
    }
    return x == y;
  }
  auto* x = std::get_if<std::int64_t>(&a.v_);
  auto* y = std::get_if<std::int64_t>(&b.v_);
  if (x && y) return *x == *y;
  if (x || y) return false;  // canonical form: distinct representations
  return std::get<mpq_class>(a.v_) == std::get<mpq_class>(b.v_);
}

std::string Scalar::to_string() const {
  if (auto* i = std::get_if<std::int64_t>(&v_)) return std::to_string(*i);
  return std::get<mpq_class>(v_).get_str();
}

Scalar Scalar::parse(const std::string& text, std::uint32_t p) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("Scalar: cannot parse '" + text + "'");
  q.canonicalize();
  if (p == 0) return Scalar(q);
  Scalar num = Scalar::mod(mpz_class(q.get_num() % p).get_si(), p);
  Scalar den = Scalar::mod(mpz_class(q.get_den() % p).get_si(), p);
  return num / den;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

CoeffField::CoeffField(std::uint32_t p) : p_(p) {
  if (p != 0 && !is_prime(p)) throw std::invalid_argument("CoeffField: characteristic must be 0 or prime");
}

Scalar CoeffField::from_int(std::int64_t v) const { return Scalar::mod(v, p_); }

std::string CoeffField::name() const { return p_ == 0 ? "Q" : "F" + std::to_string(p_); }

}  // namespace nilorb

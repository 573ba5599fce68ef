#include "nilorb/finorbits.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <omp.h>

#include "nilorb/instability.hpp"

namespace nilorb {

namespace {

std::uint32_t mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

std::uint32_t powmod(std::uint32_t a, std::int64_t e, std::uint32_t p) {
  if (e < 0) {
    a = powmod(a, p - 2, p);
    e = -e;
  }
  std::uint64_t r = 1, b = a % p;
  for (; e; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t primitive_root(std::uint32_t p) {
  for (std::uint32_t g = 1; g < p; ++g) {
    std::uint32_t x = 1, ord = 0;
    do {
      x = mulmod(x, g, p);
      ++ord;
    } while (x != 1);
    if (ord == p - 1) return g;
  }
  return 1;
}

void require_prime_field(const LieAlgebra& L) {
  if (L.characteristic() == 0) throw std::invalid_argument(L.id() + ": finite-field computation needs F_p");
}

Realization resolve(const LieAlgebra& L, Realization r) {
  return r == Realization::Defining && !L.has_realization() ? Realization::Adjoint : r;
}

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

double log_pow(std::uint64_t b, std::size_t e) { return static_cast<double>(e) * std::log10(static_cast<double>(b)); }

// Base-p integer key of a coordinate vector.
std::uint64_t encode(const FpVec& v, std::uint32_t p) {
  std::uint64_t k = 0;
  for (auto it = v.rbegin(); it != v.rend(); ++it) k = k * p + *it;
  return k;
}

FpVec decode(std::uint64_t k, std::size_t n, std::uint32_t p) {
  FpVec v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = static_cast<std::uint32_t>(k % p);
    k /= p;
  }
  return v;
}

void check_encodable(std::size_t n, std::uint32_t p) {
  if (log_pow(p, n) > 18.5) throw GuardError("finorbits: coordinate space too large to index");
}

// phi-weights of the defining module: diagonal of sum_k phi_k h_k.
std::vector<std::int64_t> defining_weights(const LieAlgebra& L, const Cocharacter& phi) {
  const std::size_t m = L.realization_dim();
  std::vector<std::int64_t> w(m, 0);
  for (std::size_t k = 0; k < L.cartan_dim(); ++k) {
    const Matrix& h = L.realization_int(k);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j)
        if (i != j && !h(i, j).is_zero()) throw std::logic_error("defining Cartan image is not diagonal");
      w[i] += phi.coords[k] * h(i, i).to_int();
    }
  }
  return w;
}

std::vector<std::int64_t> basis_weights(const LieAlgebra& L, const Cocharacter& phi) {
  std::vector<std::int64_t> w(L.dim(), 0);
  for (std::size_t r = 0; r < L.datum().num_roots(); ++r) w[L.root_basis(r)] = L.datum().pairing(r, phi);
  return w;
}

// Solves realization coordinates back to the Chevalley basis over F_p.
struct CoordinateSolver {
  std::vector<std::size_t> pivots;  // entries of the flattened matrix
  FpMatrix inv;

  explicit CoordinateSolver(const LieAlgebra& L) {
    const std::uint32_t p = L.characteristic();
    const std::size_t n = L.dim(), m = L.realization_dim();
    // Greedy choice of n flattened positions with an invertible n x n block.
    std::vector<FpVec> rows;  // echelon rows over basis coefficients
    std::vector<std::size_t> lead;
    for (std::size_t pos = 0; pos < m * m && pivots.size() < n; ++pos) {
      FpVec r(n);
      for (std::size_t b = 0; b < n; ++b)
        r[b] = static_cast<std::uint32_t>(L.realization(b)(pos / m, pos % m).to_int());
      FpVec red = r;
      for (std::size_t k = 0; k < rows.size(); ++k) {
        const std::uint32_t c = red[lead[k]];
        if (!c) continue;
        for (std::size_t b = 0; b < n; ++b) red[b] = (red[b] + p - mulmod(c, rows[k][b], p)) % p;
      }
      auto nz = std::find_if(red.begin(), red.end(), [](std::uint32_t v) { return v != 0; });
      if (nz == red.end()) continue;
      const std::size_t l = static_cast<std::size_t>(nz - red.begin());
      const std::uint32_t s = powmod(red[l], p - 2, p);
      for (auto& v : red) v = mulmod(v, s, p);
      for (std::size_t k = 0; k < rows.size(); ++k) {
        const std::uint32_t c = rows[k][l];
        if (!c) continue;
        for (std::size_t b = 0; b < n; ++b) rows[k][b] = (rows[k][b] + p - mulmod(c, red[b], p)) % p;
      }
      rows.push_back(red);
      lead.push_back(l);
      pivots.push_back(pos);
    }
    if (pivots.size() != n) throw std::logic_error("defining realization is not injective mod p");
    FpMatrix blk{static_cast<std::uint32_t>(n), p, FpVec(n * n)};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t b = 0; b < n; ++b)
        blk.at(i, b) = static_cast<std::uint32_t>(L.realization(b)(pivots[i] / m, pivots[i] % m).to_int());
    inv = *blk.inverse();
  }

  FpVec solve(const FpMatrix& x) const {
    FpVec v(pivots.size());
    for (std::size_t i = 0; i < pivots.size(); ++i) v[i] = x.a[pivots[i]];
    return inv.apply(v);
  }
};

FpMatrix realize_fp(const LieAlgebra& L, const FpVec& x) {
  const std::uint32_t p = L.characteristic();
  const std::uint32_t m = static_cast<std::uint32_t>(L.realization_dim());
  FpMatrix out{m, p, FpVec(m * m, 0)};
  for (std::size_t b = 0; b < x.size(); ++b) {
    if (!x[b]) continue;
    const Matrix& r = L.realization(b);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const auto v = static_cast<std::uint32_t>(r(i, j).to_int());
        if (v) out.at(i, j) = (out.at(i, j) + mulmod(v, x[b], p)) % p;
      }
  }
  return out;
}

bool fp_nilpotent(const FpMatrix& m) {
  FpMatrix pw = m;
  for (std::uint32_t k = 1; k < m.n; ++k) pw = pw * m;
  return pw.is_zero();
}

FpMatrix ad_fp(const LieAlgebra& L, const FpVec& x) {
  const std::uint32_t p = L.characteristic(), n = static_cast<std::uint32_t>(L.dim());
  FpMatrix a{n, p, FpVec(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    if (!x[i]) continue;
    for (std::size_t j = 0; j < n; ++j)
      for (auto [k, c] : L.basis_bracket(i, j)) {
        const std::uint32_t cm = static_cast<std::uint32_t>(((c % static_cast<std::int64_t>(p)) + p) % p);
        a.at(k, j) = (a.at(k, j) + mulmod(cm, x[i], p)) % p;
      }
  }
  return a;
}

// Nilpotency of an element over F_p: matrix nilpotency in the defining
// realization, otherwise ad-nilpotent with no central coordinates.
class NilpotencyTest {
 public:
  explicit NilpotencyTest(const LieAlgebra& L) : L_(L) {
    if (!L.has_realization()) {
      for (const auto& c : L.datum().central_cocharacters()) central_.push_back(c);
    }
  }
  bool operator()(const FpVec& x) const {
    if (L_.has_realization()) return fp_nilpotent(realize_fp(L_, x));
    const std::uint32_t p = L_.characteristic();
    for (const auto& c : central_) {
      // the central part of x is seen by the X^*(T) projection onto c
      std::uint64_t s = 0;
      for (std::size_t k = 0; k < c.size(); ++k) s += static_cast<std::uint64_t>(((c[k] % static_cast<std::int64_t>(p)) + p) % p) * x[k];
      if (s % p) return false;
    }
    return fp_nilpotent(ad_fp(L_, x));
  }

 private:
  const LieAlgebra& L_;
  std::vector<IntVec> central_;
};

int thread_count(int requested) { return requested > 0 ? requested : omp_get_max_threads(); }

}  // namespace

FpMatrix FpMatrix::identity(std::uint32_t n, std::uint32_t p) {
  FpMatrix m{n, p, FpVec(static_cast<std::size_t>(n) * n, 0)};
  for (std::uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpMatrix FpMatrix::from(const Matrix& m, std::uint32_t p) {
  if (m.rows() != m.cols()) throw std::invalid_argument("FpMatrix: matrix is not square");
  const Matrix r = m.characteristic() == p ? m : reduce_mod(m, p);
  FpMatrix out{static_cast<std::uint32_t>(m.rows()), p, FpVec(m.rows() * m.cols())};
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = static_cast<std::uint32_t>(r(i, j).to_int());
  return out;
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
  FpMatrix r{n, p, FpVec(a.size(), 0)};
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t k = 0; k < n; ++k) {
      const std::uint64_t x = at(i, k);
      if (!x) continue;
      for (std::uint32_t j = 0; j < n; ++j) r.a[i * n + j] = static_cast<std::uint32_t>((r.a[i * n + j] + x * o.at(k, j)) % p);
    }
  return r;
}

FpVec FpMatrix::apply(const FpVec& v) const {
  FpVec r(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::uint64_t s = 0;
    for (std::uint32_t j = 0; j < n; ++j) s += static_cast<std::uint64_t>(at(i, j)) * v[j];
    r[i] = static_cast<std::uint32_t>(s % p);
  }
  return r;
}

bool FpMatrix::is_identity() const { return *this == identity(n, p); }

bool FpMatrix::is_zero() const {
  return std::all_of(a.begin(), a.end(), [](std::uint32_t v) { return v == 0; });
}

std::optional<FpMatrix> FpMatrix::inverse() const {
  FpMatrix m = *this, inv = identity(n, p);
  for (std::uint32_t c = 0; c < n; ++c) {
    std::uint32_t piv = c;
    while (piv < n && m.at(piv, c) == 0) ++piv;
    if (piv == n) return std::nullopt;
    for (std::uint32_t j = 0; j < n; ++j) {
      std::swap(m.at(c, j), m.at(piv, j));
      std::swap(inv.at(c, j), inv.at(piv, j));
    }
    const std::uint32_t s = powmod(m.at(c, c), p - 2, p);
    for (std::uint32_t j = 0; j < n; ++j) {
      m.at(c, j) = mulmod(m.at(c, j), s, p);
      inv.at(c, j) = mulmod(inv.at(c, j), s, p);
    }
    for (std::uint32_t i = 0; i < n; ++i) {
      const std::uint32_t f = m.at(i, c);
      if (i == c || !f) continue;
      for (std::uint32_t j = 0; j < n; ++j) {
        m.at(i, j) = (m.at(i, j) + p - mulmod(f, m.at(c, j), p)) % p;
        inv.at(i, j) = (inv.at(i, j) + p - mulmod(f, inv.at(c, j), p)) % p;
      }
    }
  }
  return inv;
}

std::size_t FpMatrixHash::operator()(const FpMatrix& m) const {
  std::size_t h = m.n;
  for (auto v : m.a) h = h * 1000003u ^ v;
  return h;
}

Realization default_realization(const LieAlgebra& L) {
  return L.has_realization() ? Realization::Defining : Realization::Adjoint;
}

GroupElement root_group_element(const LieAlgebra& L, std::size_t root, std::uint32_t t, Realization r) {
  require_prime_field(L);
  r = resolve(L, r);
  const std::uint32_t p = L.characteristic();
  const Scalar ts = Scalar::mod(t, p);
  GroupElement g;
  g.realization = r;
  g.provenance = "x_" + std::to_string(root) + "(" + std::to_string(t % p) + ")";
  g.matrix = FpMatrix::from(r == Realization::Defining ? root_element_matrix(L, root, ts) : root_element_ad(L, root, ts), p);
  return g;
}

GroupElement torus_element(const LieAlgebra& L, const Cocharacter& phi, std::uint32_t s, Realization r) {
  require_prime_field(L);
  r = resolve(L, r);
  const std::uint32_t p = L.characteristic();
  if (s % p == 0) throw std::invalid_argument("torus_element: scalar must be nonzero");
  const auto w = r == Realization::Defining ? defining_weights(L, phi) : basis_weights(L, phi);
  GroupElement g;
  g.realization = r;
  g.provenance = "phi(" + std::to_string(s % p) + ")";
  g.matrix = FpMatrix::identity(static_cast<std::uint32_t>(w.size()), p);
  for (std::size_t i = 0; i < w.size(); ++i) g.matrix.at(i, i) = powmod(s % p, w[i], p);
  return g;
}

FpMatrix adjoint_matrix(const LieAlgebra& L, const GroupElement& g) {
  if (g.realization == Realization::Adjoint) return g.matrix;
  const CoordinateSolver solver(L);
  const FpMatrix ginv = *g.matrix.inverse();
  const std::uint32_t n = static_cast<std::uint32_t>(L.dim());
  FpMatrix ad{n, L.characteristic(), FpVec(static_cast<std::size_t>(n) * n)};
  for (std::uint32_t j = 0; j < n; ++j) {
    FpVec e(n, 0);
    e[j] = 1;
    const FpVec c = solver.solve(g.matrix * realize_fp(L, e) * ginv);
    for (std::uint32_t i = 0; i < n; ++i) ad.at(i, j) = c[i];
  }
  return ad;
}

bool is_automorphism(const LieAlgebra& L, const FpMatrix& ad) {
  const std::uint32_t p = L.characteristic();
  const std::size_t n = L.dim();
  std::vector<FpVec> cols(n);
  for (std::size_t j = 0; j < n; ++j) {
    cols[j].resize(n);
    for (std::size_t i = 0; i < n; ++i) cols[j][i] = ad.at(i, j);
  }
  auto bracket_fp = [&](const FpVec& x, const FpVec& y) {
    FpVec out(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (!x[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!y[j]) continue;
        const std::uint32_t xy = mulmod(x[i], y[j], p);
        for (auto [k, c] : L.basis_bracket(i, j)) {
          const auto cm = static_cast<std::uint32_t>(((c % static_cast<std::int64_t>(p)) + p) % p);
          out[k] = (out[k] + mulmod(cm, xy, p)) % p;
        }
      }
    }
    return out;
  };
  if (!ad.inverse()) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      FpVec rhs(n, 0);
      for (auto [k, c] : L.basis_bracket(i, j)) {
        const auto cm = static_cast<std::uint32_t>(((c % static_cast<std::int64_t>(p)) + p) % p);
        for (std::size_t a = 0; a < n; ++a) rhs[a] = (rhs[a] + mulmod(cm, cols[k][a], p)) % p;
      }
      if (bracket_fp(cols[i], cols[j]) != rhs) return false;
    }
  return true;
}

FpVec to_fp(const LieElement& x) {
  require_prime_field(*x.parent());
  FpVec v(x.coords().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<std::uint32_t>(x[i].to_int());
  return v;
}

LieElement from_fp(const LieAlgebraPtr& L, const FpVec& v) {
  Vec c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = Scalar::mod(v[i], L->characteristic());
  return LieElement(L, c);
}

std::optional<std::uint64_t> chevalley_group_order(const RootDatum& d, std::uint32_t q) {
  if (d.isogeny() == Isogeny::General) {
    const std::size_t n = d.lattice_rank();
    std::uint64_t o = ipow(q, n * (n - 1) / 2);
    for (std::size_t i = 1; i <= n; ++i) o *= ipow(q, i) - 1;
    return o;
  }
  if (d.central_rank() != 0) return std::nullopt;
  std::vector<int> degrees;
  for (const auto& c : d.components()) {
    const int r = c.rank;
    switch (c.type) {
      case 'A':
        for (int i = 2; i <= r + 1; ++i) degrees.push_back(i);
        break;
      case 'B':
      case 'C':
        for (int i = 1; i <= r; ++i) degrees.push_back(2 * i);
        break;
      case 'D':
        for (int i = 1; i < r; ++i) degrees.push_back(2 * i);
        degrees.push_back(r);
        break;
      case 'G': degrees.insert(degrees.end(), {2, 6}); break;
      case 'F': degrees.insert(degrees.end(), {2, 6, 8, 12}); break;
      case 'E':
        if (r == 6) degrees.insert(degrees.end(), {2, 5, 6, 8, 9, 12});
        if (r == 7) degrees.insert(degrees.end(), {2, 6, 8, 10, 12, 14, 18});
        if (r == 8) degrees.insert(degrees.end(), {2, 8, 12, 14, 18, 20, 24, 30});
        break;
    }
  }
  double lg = log_pow(q, d.num_positive());
  for (int e : degrees) lg += log_pow(q, static_cast<std::size_t>(e));
  if (lg > 18.5) return std::nullopt;
  std::uint64_t o = ipow(q, d.num_positive());
  for (int e : degrees) o *= ipow(q, static_cast<std::size_t>(e)) - 1;
  return o;
}

std::uint64_t centre_order(const RootDatum& d, std::uint32_t q) {
  // T(F_q) = Hom(X^*, F_q^x) = (Z/(q-1))^n; count points on which every simple root is trivial.
  const std::uint64_t m = q - 1;
  const std::size_t n = d.lattice_rank();
  if (log_pow(m, n) > 7) throw GuardError("centre_order: torus too large to scan");
  std::uint64_t count = 0;
  IntVec x(n, 0);
  const std::uint64_t total = ipow(m, n);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t t = idx;
    for (std::size_t k = 0; k < n; ++k) {
      x[k] = static_cast<std::int64_t>(t % m);
      t /= m;
    }
    bool ok = true;
    for (std::size_t i = 0; i < d.rank() && ok; ++i) ok = dot(d.root(i), x) % static_cast<std::int64_t>(m) == 0;
    count += ok;
  }
  return count;
}

std::shared_ptr<const FiniteGroup> FiniteGroup::of(const LieAlgebraPtr& L, Realization r, std::size_t limit) {
  require_prime_field(*L);
  r = resolve(*L, r);
  static std::mutex mu;
  static std::map<std::pair<std::string, int>, std::shared_ptr<const FiniteGroup>> cache;
  const auto key = std::make_pair(L->id() + "." + to_string(L->datum().isogeny()), static_cast<int>(r));
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const std::uint32_t p = L->characteristic();
  if (auto o = chevalley_group_order(L->datum(), p); o && *o > limit)
    throw GuardError("FiniteGroup: " + L->id() + " has more than " + std::to_string(limit) + " elements");
  auto g = std::make_shared<FiniteGroup>();
  g->realization_ = r;
  const RootDatum& d = L->datum();
  for (std::size_t i = 0; i < d.rank(); ++i) {
    g->generators_.push_back(root_group_element(*L, i, 1, r));
    g->generators_.push_back(root_group_element(*L, d.negative(i), 1, r));
  }
  const std::uint32_t gen = primitive_root(p);
  if (p > 2)
    for (std::size_t k = 0; k < d.lattice_rank(); ++k) {
      Cocharacter e{IntVec(d.lattice_rank(), 0)};
      e.coords[k] = 1;
      g->generators_.push_back(torus_element(*L, e, gen, r));
    }
  const FpMatrix id = FpMatrix::identity(g->generators_[0].matrix.n, p);
  std::unordered_set<FpMatrix, FpMatrixHash> seen{id};
  std::deque<FpMatrix> queue{id};
  g->elements_.push_back(id);
  while (!queue.empty()) {
    const FpMatrix cur = queue.front();
    queue.pop_front();
    for (const auto& s : g->generators_) {
      FpMatrix nx = s.matrix * cur;
      if (seen.insert(nx).second) {
        if (seen.size() > limit) throw GuardError("FiniteGroup: enumeration limit exceeded");
        g->elements_.push_back(nx);
        queue.push_back(std::move(nx));
      }
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  cache[key] = g;
  return g;
}

nlohmann::json UOrbitReport::to_json() const {
  return {{"pass", pass},
          {"orbit_size", orbit_size},
          {"expected_size", expected_size},
          {"dim_u", dim_u},
          {"dim_v", dim_v},
          {"realization", realization == Realization::Defining ? "defining" : "adjoint"},
          {"failure", failure}};
}

namespace {

struct USetup {
  std::vector<std::vector<FpMatrix>> ads;  // ads[k][t] = Ad(x_{beta_k}(t))
  FpVec x;
  std::vector<std::int64_t> weight;
  std::uint32_t p = 0;
  std::uint64_t total = 0;
  UOrbitReport report;
};

USetup u_setup(const LieElement& x, const Cocharacter& phi, const FinOptions& opts) {
  const LieAlgebra& L = *x.parent();
  require_prime_field(L);
  USetup s;
  s.p = L.characteristic();
  s.report.realization = resolve(L, opts.realization);
  const auto P = instability_parabolic(L.datum(), phi);
  s.report.dim_u = P.u_roots.size();
  if (log_pow(s.p, s.report.dim_u) > 7) throw GuardError("u_orbit_check: p^dim u exceeds 10^7");
  check_encodable(L.dim(), s.p);
  s.total = ipow(s.p, s.report.dim_u);
  s.x = to_fp(x);
  s.weight = basis_weights(L, phi);
  for (auto b : s.weight) s.report.dim_v += b >= 3;
  s.report.expected_size = ipow(s.p, s.report.dim_v);
  for (auto r : P.u_roots) {
    std::vector<FpMatrix> row;
    for (std::uint32_t t = 0; t < s.p; ++t) row.push_back(adjoint_matrix(L, root_group_element(L, r, t, s.report.realization)));
    s.ads.push_back(std::move(row));
  }
  return s;
}

UOrbitReport u_finish(USetup& s, const std::vector<std::uint64_t>& keys) {
  UOrbitReport rep = s.report;
  rep.orbit_size = keys.size();
  const std::size_t n = s.x.size();
  for (auto k : keys) {
    const FpVec y = decode(k, n, s.p);
    for (std::size_t i = 0; i < n; ++i)
      if (s.weight[i] < 3 && y[i] != s.x[i]) {
        rep.failure = "Ad(u)X leaves X + v";
        return rep;
      }
  }
  if (rep.orbit_size != rep.expected_size) {
    rep.failure = "orbit has " + std::to_string(rep.orbit_size) + " points, expected " + std::to_string(rep.expected_size);
    return rep;
  }
  rep.pass = true;
  return rep;
}

}  // namespace

UOrbitReport u_orbit_check(const LieElement& x, const Cocharacter& phi, const FinOptions& opts) {
  USetup s = u_setup(x, phi, opts);
  const std::size_t k = s.ads.size();
  std::vector<std::uint64_t> keys(s.total);
  const auto total = static_cast<std::int64_t>(s.total);
#pragma omp parallel for num_threads(thread_count(opts.threads)) schedule(static)
  for (std::int64_t idx = 0; idx < total; ++idx) {
    FpVec y = s.x;
    std::uint64_t t = static_cast<std::uint64_t>(idx);
    // u = x_{beta_0}(t_0) ... x_{beta_{k-1}}(t_{k-1}); apply the last factor first
    std::vector<std::uint32_t> ts(k);
    for (std::size_t j = 0; j < k; ++j) {
      ts[j] = static_cast<std::uint32_t>(t % s.p);
      t /= s.p;
    }
    for (std::size_t j = k; j-- > 0;) y = s.ads[j][ts[j]].apply(y);
    keys[static_cast<std::size_t>(idx)] = encode(y, s.p);
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return u_finish(s, keys);
}

UOrbitReport u_orbit_check_serial(const LieElement& x, const Cocharacter& phi, const FinOptions& opts) {
  USetup s = u_setup(x, phi, opts);
  std::vector<std::uint64_t> keys;
  std::function<void(std::size_t, const FpVec&)> rec = [&](std::size_t j, const FpVec& y) {
    if (j == 0) {
      keys.push_back(encode(y, s.p));
      return;
    }
    for (std::uint32_t t = 0; t < s.p; ++t) rec(j - 1, s.ads[j - 1][t].apply(y));
  };
  rec(s.ads.size(), s.x);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return u_finish(s, keys);
}

nlohmann::json LeviCheckReport::to_json() const {
  return {{"pass", pass},
          {"group_order", group_order},
          {"centralizer_order", centralizer_order},
          {"c_phi_order", c_phi_order},
          {"r_order", r_order},
          {"u_order", u_order},
          {"failure", failure}};
}

namespace {

// Group-level predicates for a fixed X and phi, in either realization.
struct Fixers {
  Realization r;
  FpMatrix xm;  // defining image of X
  FpVec xv;
  std::vector<std::int64_t> w;  // weights of the realization basis

  Fixers(const LieAlgebra& L, const FpVec& x, const Cocharacter& phi, Realization real) : r(real), xv(x) {
    if (r == Realization::Defining) {
      xm = realize_fp(L, x);
      w = defining_weights(L, phi);
    } else {
      w = basis_weights(L, phi);
    }
  }
  bool fixes_x(const FpMatrix& g) const {
    return r == Realization::Defining ? g * xm == xm * g : g.apply(xv) == xv;
  }
  bool centralizes_phi(const FpMatrix& g) const {
    for (std::uint32_t i = 0; i < g.n; ++i)
      for (std::uint32_t j = 0; j < g.n; ++j)
        if (g.at(i, j) && w[i] != w[j]) return false;
    return true;
  }
};

}  // namespace

LeviCheckReport centralizer_levi_check(const LieElement& x, const Cocharacter& phi, const FinOptions& opts) {
  const LieAlgebraPtr& L = x.parent();
  require_prime_field(*L);
  const Realization r = resolve(*L, opts.realization);
  const auto G = FiniteGroup::of(L, r);
  const std::uint32_t p = L->characteristic();
  LeviCheckReport rep;
  rep.group_order = G->order();
  const Fixers fx(*L, to_fp(x), phi, r);

  // U(F_p) as the set of products over the U-roots.
  const auto P = instability_parabolic(L->datum(), phi);
  if (log_pow(p, P.u_roots.size()) > 7) throw GuardError("centralizer_levi_check: p^dim u exceeds 10^7");
  std::vector<FpMatrix> U{FpMatrix::identity(G->elements()[0].n, p)};
  for (auto b : P.u_roots) {
    std::vector<FpMatrix> next;
    for (std::uint32_t t = 0; t < p; ++t) {
      const FpMatrix xb = root_group_element(*L, b, t, r).matrix;
      for (const auto& u : U) next.push_back(u * xb);
    }
    U = std::move(next);
  }
  const std::unordered_set<FpMatrix, FpMatrixHash> uset(U.begin(), U.end());
  rep.u_order = uset.size();

  const auto& el = G->elements();
  std::vector<char> in_c(el.size());
  const auto ne = static_cast<std::int64_t>(el.size());
#pragma omp parallel for num_threads(thread_count(opts.threads)) schedule(static)
  for (std::int64_t i = 0; i < ne; ++i) in_c[static_cast<std::size_t>(i)] = fx.fixes_x(el[static_cast<std::size_t>(i)]);
  std::vector<FpMatrix> C, Cphi, R;
  for (std::size_t i = 0; i < el.size(); ++i) {
    if (!in_c[i]) continue;
    C.push_back(el[i]);
    if (fx.centralizes_phi(el[i])) Cphi.push_back(el[i]);
    if (uset.count(el[i])) R.push_back(el[i]);
  }
  rep.centralizer_order = C.size();
  rep.c_phi_order = Cphi.size();
  rep.r_order = R.size();
  if (rep.u_order != ipow(p, P.u_roots.size())) {
    rep.failure = "U(F_p) parameterization is not injective";
    return rep;
  }
  const std::unordered_set<FpMatrix, FpMatrixHash> cset(C.begin(), C.end());
  std::unordered_set<FpMatrix, FpMatrixHash> prod;
  for (const auto& l : Cphi)
    for (const auto& u : R) {
      FpMatrix g = l * u;
      if (!cset.count(g)) {
        rep.failure = "C_phi . R is not contained in C";
        return rep;
      }
      prod.insert(std::move(g));
    }
  if (prod.size() != Cphi.size() * R.size()) {
    rep.failure = "C_phi . R is not a direct factorization";
    return rep;
  }
  if (prod.size() != C.size()) {
    rep.failure = "C_phi . R is a proper subset of C";
    return rep;
  }
  rep.pass = true;
  return rep;
}

std::uint64_t nilpotent_cone_size(const LieAlgebraPtr& L, int threads) {
  require_prime_field(*L);
  const std::uint32_t p = L->characteristic();
  const std::size_t n = L->dim();
  if (log_pow(p, n) > 6) throw GuardError("nilpotent_cone_size: p^dim g exceeds 10^6");
  const NilpotencyTest nil(*L);
  const auto total = static_cast<std::int64_t>(ipow(p, n));
  std::uint64_t count = 0;
#pragma omp parallel for num_threads(thread_count(threads)) reduction(+ : count) schedule(static)
  for (std::int64_t k = 0; k < total; ++k) count += nil(decode(static_cast<std::uint64_t>(k), n, p));
  return count;
}

std::uint64_t nilpotent_cone_size_serial(const LieAlgebraPtr& L) {
  require_prime_field(*L);
  const std::uint32_t p = L->characteristic();
  const std::size_t n = L->dim();
  if (log_pow(p, n) > 6) throw GuardError("nilpotent_cone_size: p^dim g exceeds 10^6");
  // Odometer over F_p^n, independent of the base-p key layout.
  const NilpotencyTest nil(*L);
  FpVec v(n, 0);
  std::uint64_t count = 0;
  while (true) {
    count += nil(v);
    std::size_t i = 0;
    while (i < n && v[i] == p - 1) v[i++] = 0;
    if (i == n) break;
    ++v[i];
  }
  return count;
}

nlohmann::json OrbitPartition::to_json() const {
  nlohmann::json j;
  j["type"] = type;
  j["q"] = q;
  j["group_order"] = group_order;
  j["nilpotent_count"] = nilpotent_count;
  j["consistent"] = consistent;
  j["failure"] = failure;
  j["orbits"] = nlohmann::json::array();
  for (const auto& o : orbits) {
    nlohmann::json e;
    e["size"] = o.size;
    e["stabilizer_order"] = o.stabilizer_order;
    e["weighted_dynkin"] = o.weighted_dynkin;
    e["representative"] = o.representative.to_json();
    e["geometric_index"] = o.geometric_index ? nlohmann::json(*o.geometric_index) : nlohmann::json(nullptr);
    j["orbits"].push_back(e);
  }
  return j;
}

namespace {

// Ranks of ad(X)^k, k = 1..dim, with the centralizer dimension in front.
std::vector<std::size_t> ad_profile(const LieAlgebra& L, const FpVec& x) {
  const FpMatrix a = ad_fp(L, x);
  std::vector<std::size_t> prof;
  FpMatrix pw = a;
  for (std::size_t k = 1; k <= L.dim(); ++k) {
    Matrix m(L.dim(), L.dim(), L.characteristic());
    for (std::size_t i = 0; i < L.dim(); ++i)
      for (std::size_t j = 0; j < L.dim(); ++j) m(i, j) = Scalar::mod(pw.at(i, j), L.characteristic());
    prof.push_back(rank(m));
    if (prof.back() == 0) break;
    pw = pw * a;
  }
  prof.insert(prof.begin(), L.dim() - prof.front());
  return prof;
}

}  // namespace

OrbitPartition count_rational_nilpotent_orbits(const LieAlgebraPtr& L, const FinOptions& opts) {
  require_prime_field(*L);
  const std::uint32_t p = L->characteristic();
  const std::size_t n = L->dim();
  if (log_pow(p, n) > 6) throw GuardError("count_rational_nilpotent_orbits: p^dim g exceeds 10^6");
  const Realization r = resolve(*L, opts.realization);
  const auto G = FiniteGroup::of(L, r);
  OrbitPartition out;
  out.type = L->datum().label();
  out.q = p;
  out.group_order = G->order();

  const NilpotencyTest nil(*L);
  const std::uint64_t total = ipow(p, n);
  std::vector<char> is_nil(total);
  const auto tot = static_cast<std::int64_t>(total);
#pragma omp parallel for num_threads(thread_count(opts.threads)) schedule(static)
  for (std::int64_t k = 0; k < tot; ++k)
    is_nil[static_cast<std::size_t>(k)] = nil(decode(static_cast<std::uint64_t>(k), n, p));
  out.nilpotent_count = static_cast<std::uint64_t>(std::count(is_nil.begin(), is_nil.end(), 1));

  std::vector<FpMatrix> gens;
  for (const auto& g : G->generators()) gens.push_back(adjoint_matrix(*L, g));

  std::vector<char> visited(total, 0);
  std::uint64_t covered = 0;
  for (std::uint64_t k = 0; k < total; ++k) {
    if (!is_nil[k] || visited[k]) continue;
    RationalOrbit o;
    const FpVec rep = decode(k, n, p);
    o.representative = from_fp(L, rep);
    std::deque<std::uint64_t> q{k};
    visited[k] = 1;
    while (!q.empty()) {
      const FpVec y = decode(q.front(), n, p);
      q.pop_front();
      ++o.size;
      for (const auto& g : gens) {
        const std::uint64_t nk = encode(g.apply(y), p);
        if (!visited[nk]) {
          if (!is_nil[nk]) {
            out.failure = "orbit leaves the nilpotent set";
            return out;
          }
          visited[nk] = 1;
          q.push_back(nk);
        }
      }
    }
    covered += o.size;
    const Fixers fx(*L, rep, Cocharacter{IntVec(L->datum().lattice_rank(), 0)}, r);
    const auto& el = G->elements();
    std::uint64_t stab = 0;
    const auto ne = static_cast<std::int64_t>(el.size());
#pragma omp parallel for num_threads(thread_count(opts.threads)) reduction(+ : stab) schedule(static)
    for (std::int64_t i = 0; i < ne; ++i) stab += fx.fixes_x(el[static_cast<std::size_t>(i)]);
    o.stabilizer_order = stab;
    out.orbits.push_back(std::move(o));
  }

  bool ok = covered == out.nilpotent_count;
  if (!ok) out.failure = "orbit sizes do not sum to the nilpotent count";
  for (const auto& o : out.orbits)
    if (o.size * o.stabilizer_order != out.group_order) {
      ok = false;
      out.failure = "orbit-stabilizer identity fails";
    }

  // Match each rational orbit with a geometric one by ad-rank profile.
  if (is_good_prime(L->datum(), p) && L->datum().rank() <= 4) {
    const auto geo = enumerate_orbits(L);
    std::vector<std::vector<std::size_t>> gp;
    for (const auto& g : geo) gp.push_back(ad_profile(*L, to_fp(g.representative)));
    std::vector<bool> hit(geo.size(), false);
    for (auto& o : out.orbits) {
      const auto prof = ad_profile(*L, to_fp(o.representative));
      std::size_t matches = 0;
      for (std::size_t i = 0; i < geo.size(); ++i)
        if (gp[i] == prof) {
          ++matches;
          o.geometric_index = i;
          o.weighted_dynkin = geo[i].weighted_dynkin;
          hit[i] = true;
        }
      if (matches != 1) {
        ok = false;
        out.failure = "rational orbit does not match exactly one geometric orbit";
      }
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
      ok = false;
      out.failure = "a geometric orbit has no rational point";
    }
  }
  out.consistent = ok;
  return out;
}

}  // namespace nilorb

namespace nilorb {

nlohmann::json LambdaReport::to_json() const {
  return {{"pass", pass},
          {"identity_to_zero", identity_to_zero},
          {"unipotent_samples", unipotent_samples},
          {"non_nilpotent", non_nilpotent},
          {"equivariance_pairs", equivariance_pairs},
          {"equivariance_failures", equivariance_failures},
          {"cross_checks", cross_checks},
          {"cross_check_failures", cross_check_failures},
          {"u_size", u_size},
          {"u_distinct_images", u_distinct_images},
          {"failure", failure}};
}

namespace {

// Lambda on defining matrices over F_p through the inverse trace form.
class FastLambda {
 public:
  explicit FastLambda(const LieAlgebra& L) : L_(L), p_(L.characteristic()) {
    const std::uint32_t n = static_cast<std::uint32_t>(L.dim());
    for (std::size_t j = 0; j < n; ++j) {
      FpVec e(n, 0);
      e[j] = 1;
      basis_.push_back(realize_fp(L, e));
    }
    FpMatrix k{n, p_, FpVec(static_cast<std::size_t>(n) * n)};
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j) k.at(i, j) = trace(basis_[i] * basis_[j]);
    auto inv = k.inverse();
    if (!inv) throw std::domain_error("lambda_check: degenerate trace form for " + L.id());
    kinv_ = *inv;
  }
  FpVec operator()(const FpMatrix& g) const {
    FpVec rhs(basis_.size());
    for (std::size_t j = 0; j < basis_.size(); ++j) rhs[j] = trace(g * basis_[j]);
    return kinv_.apply(rhs);
  }
  FpMatrix realize(const FpVec& x) const { return realize_fp(L_, x); }

 private:
  std::uint32_t trace(const FpMatrix& m) const {
    std::uint64_t s = 0;
    for (std::uint32_t i = 0; i < m.n; ++i) s += m.at(i, i);
    return static_cast<std::uint32_t>(s % p_);
  }
  const LieAlgebra& L_;
  std::uint32_t p_;
  std::vector<FpMatrix> basis_;
  FpMatrix kinv_;
};

}  // namespace

LambdaReport lambda_check(const LieAlgebraPtr& L, std::size_t unipotent_samples, std::size_t pairs, std::uint64_t seed,
                          bool enumerate_u, int threads) {
  require_prime_field(*L);
  if (!L->has_realization() || L->datum().isogeny() == Isogeny::General)
    throw std::invalid_argument("lambda_check: needs a simply connected classical type, got " + L->id());
  const std::uint32_t p = L->characteristic();
  const RootDatum& d = L->datum();
  const FastLambda lam(*L);
  LambdaReport rep;
  const std::uint32_t m = static_cast<std::uint32_t>(L->realization_dim());
  const FpMatrix id = FpMatrix::identity(m, p);
  const FpVec at_one = lam(id);
  rep.identity_to_zero = std::all_of(at_one.begin(), at_one.end(), [](std::uint32_t v) { return v == 0; });

  // x[r][t] = x_r(t) in the defining realization.
  std::vector<std::vector<FpMatrix>> x(d.num_roots());
  for (std::size_t r = 0; r < d.num_roots(); ++r)
    for (std::uint32_t t = 0; t < p; ++t) x[r].push_back(root_group_element(*L, r, t, Realization::Defining).matrix);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> tdist(1, p - 1);
  std::uniform_int_distribution<std::size_t> len(1, 8), pos(0, d.num_positive() - 1), any(0, d.num_roots() - 1);
  auto word = [&](bool unipotent) {
    FpMatrix g = id;
    for (std::size_t k = len(rng); k > 0; --k) g = g * x[unipotent ? pos(rng) : any(rng)][tdist(rng)];
    return g;
  };
  struct Sample {
    FpMatrix g, u;
  };
  std::vector<Sample> us(unipotent_samples), eq(pairs);
  for (auto& s : us) {
    s.g = word(false);
    s.u = word(true);
  }
  for (auto& s : eq) {
    s.g = word(false);
    s.u = word(false);
  }
  std::size_t bad_nil = 0, bad_eq = 0;
  const auto nu = static_cast<std::int64_t>(us.size()), ne = static_cast<std::int64_t>(eq.size());
#pragma omp parallel num_threads(thread_count(threads))
  {
#pragma omp for reduction(+ : bad_nil) schedule(static)
    for (std::int64_t i = 0; i < nu; ++i) {
      const auto& s = us[static_cast<std::size_t>(i)];
      const FpMatrix v = s.g * s.u * *s.g.inverse();
      bad_nil += !fp_nilpotent(lam.realize(lam(v)));
    }
#pragma omp for reduction(+ : bad_eq) schedule(static)
    for (std::int64_t i = 0; i < ne; ++i) {
      const auto& s = eq[static_cast<std::size_t>(i)];
      const FpMatrix gi = *s.g.inverse();
      bad_eq += lam.realize(lam(s.g * s.u * gi)) != s.g * lam.realize(lam(s.u)) * gi;
    }
  }
  rep.unipotent_samples = us.size();
  rep.non_nilpotent = bad_nil;
  rep.equivariance_pairs = eq.size();
  rep.equivariance_failures = bad_eq;

  // The fast path against the library map on a few samples.
  for (std::size_t i = 0; i < std::min<std::size_t>(eq.size(), 25); ++i) {
    Matrix g(m, m, p);
    for (std::uint32_t a = 0; a < m; ++a)
      for (std::uint32_t b = 0; b < m; ++b) g(a, b) = Scalar::mod(eq[i].u.at(a, b), p);
    ++rep.cross_checks;
    rep.cross_check_failures += to_fp(lambda_map(g, L)) != lam(eq[i].u);
  }

  if (enumerate_u && log_pow(p, d.num_positive()) <= 5) {
    std::vector<FpMatrix> U{id};
    for (std::size_t r = 0; r < d.num_positive(); ++r) {
      std::vector<FpMatrix> next;
      for (const auto& u : U)
        for (std::uint32_t t = 0; t < p; ++t) next.push_back(u * x[r][t]);
      U = std::move(next);
    }
    std::set<FpVec> images;
    for (const auto& u : U) images.insert(lam(u));
    rep.u_size = U.size();
    rep.u_distinct_images = images.size();
  }

  if (!rep.identity_to_zero) rep.failure = "Lambda(1) != 0";
  else if (bad_nil) rep.failure = "Lambda(u) not nilpotent";
  else if (bad_eq) rep.failure = "Lambda is not equivariant";
  else if (rep.cross_check_failures) rep.failure = "fast Lambda disagrees with lambda_map";
  else if (rep.u_size != rep.u_distinct_images) rep.failure = "Lambda is not injective on U";
  rep.pass = rep.failure.empty();
  return rep;
}

}  // namespace nilorb

#include "nilorb/instability.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include <omp.h>

namespace nilorb {

namespace {

nlohmann::json cochar_json(const Cocharacter& c) { return c.coords; }

std::string mpq_string(const mpq_class& q) { return q.get_str(); }

// Support of X as root character vectors; false if X has a Cartan component.
bool root_support(const LieElement& x, std::vector<IntVec>& out) {
  const LieAlgebra& L = *x.parent();
  for (auto b : x.support()) {
    auto r = L.basis_root(b);
    if (!r) return false;
    out.push_back(L.datum().root(*r));
  }
  return true;
}

struct Ball {
  IntMatrix gram;          // integral gram, norm2 = phi^T gram phi / den
  std::int64_t limit = 0;  // floor(bound * den)
  IntVec half;             // box half widths
};

Ball make_ball(const NormForm& norm, const mpq_class& bound) {
  if (bound <= 0) throw std::invalid_argument("optimal_search: empty search region (bound must be positive)");
  Ball b;
  auto [g, den] = norm.integral_gram();
  b.gram = g;
  mpq_class lim = bound * den;
  b.limit = mpz_class(lim.get_num() / lim.get_den()).get_si();
  auto inv = inverse(norm.gram);
  if (!inv) throw std::invalid_argument("norm form is singular");
  for (std::size_t i = 0; i < g.size(); ++i) {
    // max |phi_i| on the ellipsoid is sqrt(bound * (G^-1)_ii)
    mpq_class v = bound * (*inv)(i, i).to_mpq();
    mpz_class f = v.get_num() / v.get_den();
    mpz_class s = sqrt(f);
    b.half.push_back(s.get_si());
  }
  return b;
}

std::int64_t quad(const IntMatrix& g, const IntVec& x) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    std::int64_t r = 0;
    for (std::size_t j = 0; j < x.size(); ++j) r += g[i][j] * x[j];
    s += x[i] * r;
  }
  return s;
}

struct Best {
  std::int64_t mu2 = 0, q = 1;  // ratio mu2 / q (times den)
  std::vector<Cocharacter> argmax;
  std::uint64_t scanned = 0;

  // Compare mu2/q against the current best; returns -1, 0, 1.
  int compare(std::int64_t m2, std::int64_t qq) const {
    const __int128 lhs = static_cast<__int128>(m2) * this->q, rhs = static_cast<__int128>(this->mu2) * qq;
    return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
  }
  void offer(std::int64_t m, std::int64_t qq, const IntVec& phi) {
    const std::int64_t m2 = m * m;
    const int c = argmax.empty() ? 1 : compare(m2, qq);
    if (c < 0) return;
    if (c > 0) {
      argmax.clear();
      mu2 = m2;
      q = qq;
    }
    argmax.push_back(Cocharacter{phi});
  }
  void merge(const Best& o) {
    scanned += o.scanned;
    if (o.argmax.empty()) return;
    const int c = argmax.empty() ? 1 : compare(o.mu2, o.q);
    if (c < 0) return;
    if (c > 0) {
      argmax.clear();
      mu2 = o.mu2;
      q = o.q;
    }
    argmax.insert(argmax.end(), o.argmax.begin(), o.argmax.end());
  }
};

std::int64_t min_pairing(const std::vector<IntVec>& supp, const IntVec& phi) {
  std::int64_t m = std::numeric_limits<std::int64_t>::max();
  for (const auto& a : supp) m = std::min(m, dot(a, phi));
  return m;
}

void check_target(const LieElement& x, const SearchOptions& opts) {
  if (x.is_zero()) throw std::invalid_argument("optimal_search: X = 0");
  if (!opts.allow_non_nilpotent && !is_nilpotent(x)) throw std::invalid_argument("optimal_search: X is not nilpotent");
}

OptimalityReport finish(const LieElement& x, const NormForm& norm, const mpq_class& bound, Best best) {
  OptimalityReport r;
  r.target = x;
  r.bound_used = bound;
  r.points_scanned = best.scanned;
  std::sort(best.argmax.begin(), best.argmax.end());
  r.argmax = std::move(best.argmax);
  if (!r.argmax.empty()) {
    const auto den = norm.integral_gram().second;
    r.best_ratio_sq = mpq_class(best.mu2) * den / best.q;
    r.best_ratio_sq.canonicalize();
  }
  return r;
}

}  // namespace

std::int64_t mu(const LieElement& x, const Cocharacter& phi) {
  if (x.is_zero()) throw std::invalid_argument("mu: X = 0");
  const LieAlgebra& L = *x.parent();
  std::int64_t m = std::numeric_limits<std::int64_t>::max();
  for (auto b : x.support()) {
    auto r = L.basis_root(b);
    m = std::min(m, r ? L.datum().pairing(*r, phi) : std::int64_t{0});
  }
  return m;
}

ParabolicRoots instability_parabolic(const RootDatum& d, const Cocharacter& phi) {
  ParabolicRoots p;
  for (std::size_t r = 0; r < d.num_roots(); ++r) {
    const auto v = d.pairing(r, phi);
    if (v >= 0) p.p_roots.push_back(r);
    if (v == 0) p.levi_roots.push_back(r);
    if (v > 0) p.u_roots.push_back(r);
  }
  return p;
}

void for_each_lattice_point(const NormForm& norm, const mpq_class& bound, const std::function<void(const IntVec&)>& f) {
  const Ball b = make_ball(norm, bound);
  const std::size_t n = b.half.size();
  IntVec x(n);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      if (quad(b.gram, x) <= b.limit) f(x);
      return;
    }
    for (std::int64_t v = -b.half[i]; v <= b.half[i]; ++v) {
      x[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
}

OptimalityReport optimal_search_serial(const LieElement& x, const NormForm& norm, const mpq_class& bound,
                                       const SearchOptions& opts) {
  check_target(x, opts);
  std::vector<IntVec> supp;
  const bool roots_only = root_support(x, supp);
  const Ball b = make_ball(norm, bound);
  Best best;
  for_each_lattice_point(norm, bound, [&](const IntVec& phi) {
    ++best.scanned;
    if (!roots_only) return;
    const std::int64_t m = min_pairing(supp, phi);
    if (m < 1 || gcd_of(phi) != 1) return;
    best.offer(m, quad(b.gram, phi), phi);
  });
  return finish(x, norm, bound, std::move(best));
}

OptimalityReport optimal_search(const LieElement& x, const NormForm& norm, const mpq_class& bound,
                                const SearchOptions& opts) {
  check_target(x, opts);
  std::vector<IntVec> supp;
  const bool roots_only = root_support(x, supp);
  const Ball b = make_ball(norm, bound);
  const std::size_t n = b.half.size();
  std::vector<std::int64_t> width(n);
  std::int64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    width[i] = 2 * b.half[i] + 1;
    total *= width[i];
  }
  const int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
  std::vector<Best> partial(threads);
#pragma omp parallel num_threads(threads)
  {
    Best& mine = partial[omp_get_thread_num()];
    IntVec phi(n);
#pragma omp for schedule(static)
    for (std::int64_t idx = 0; idx < total; ++idx) {
      std::int64_t rest = idx;
      for (std::size_t i = n; i-- > 0;) {
        phi[i] = rest % width[i] - b.half[i];
        rest /= width[i];
      }
      const std::int64_t q = quad(b.gram, phi);
      if (q > b.limit) continue;
      ++mine.scanned;
      if (!roots_only) continue;
      const std::int64_t m = min_pairing(supp, phi);
      if (m < 1 || gcd_of(phi) != 1) continue;
      mine.offer(m, q, phi);
    }
  }
  Best best;
  for (const auto& p : partial) best.merge(p);
  return finish(x, norm, bound, std::move(best));
}

nlohmann::json OptimalityReport::to_json() const {
  nlohmann::json j;
  j["target"] = target.to_json();
  j["best_ratio_sq"] = mpq_string(best_ratio_sq);
  j["argmax"] = nlohmann::json::array();
  for (const auto& a : argmax) j["argmax"].push_back(cochar_json(a));
  j["bound_used"] = mpq_string(bound_used);
  j["points_scanned"] = points_scanned;
  return j;
}

std::vector<std::size_t> levi_root_set(const RootDatum& d, const std::vector<std::size_t>& simple_subset) {
  std::vector<bool> in(d.rank(), false);
  for (auto i : simple_subset) in.at(i) = true;
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < d.num_roots(); ++r) {
    const IntVec& c = d.root_coeffs(r);
    bool ok = true;
    for (std::size_t i = 0; i < c.size() && ok; ++i) ok = c[i] == 0 || in[i];
    if (ok) out.push_back(r);
  }
  return out;
}

bool is_distinguished(const LieElement& x, const std::vector<std::size_t>& levi_roots, const Cocharacter& phi) {
  const LieAlgebra& L = *x.parent();
  const RootDatum& d = L.datum();
  const std::set<std::size_t> in(levi_roots.begin(), levi_roots.end());
  for (auto b : x.support()) {
    auto r = L.basis_root(b);
    if (r && !in.count(*r)) throw std::invalid_argument("is_distinguished: X is not supported on the Levi");
  }
  std::size_t zero = 0, two = 0;
  std::vector<Vec> vecs;
  for (auto r : levi_roots) {
    const auto w = d.pairing(r, phi);
    if (w % 2 != 0) return false;
    zero += w == 0;
    two += w == 2;
    Vec v;
    for (auto c : d.root(r)) v.push_back(Scalar(c));
    vecs.push_back(v);
  }
  const std::size_t rk = vecs.empty() ? 0 : row_space(vecs, d.lattice_rank(), 0).size();
  return rk + zero == two;
}

bool verify_associated(const LieElement& x, const Cocharacter& phi) {
  if (x.is_zero()) return false;
  auto w = homogeneous_weight(x, phi);
  if (!w || *w != 2) return false;
  const LieAlgebraPtr& Lp = x.parent();
  const LieAlgebra& L = *Lp;
  const RootDatum& d = L.datum();
  const std::uint32_t p = L.characteristic();
  const std::size_t n = d.lattice_rank();

  // s = t cap c_g(X): h with <alpha, h> = 0 on the support of X.
  std::vector<std::size_t> supp_roots;
  for (auto b : x.support()) supp_roots.push_back(*L.basis_root(b));
  Matrix m(supp_roots.size(), n, p);
  for (std::size_t i = 0; i < supp_roots.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = L.coeff().from_int(d.root(supp_roots[i])[j]);
  const std::vector<Vec> s = kernel(m);

  // c0 = c_g(X) cap g(0; phi).
  const Grading g = grading(L, phi);
  const auto& g0 = g.slices.at(0);
  const Matrix ad = ad_matrix(x);
  Matrix ad0(L.dim(), g0.size(), p);
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = 0; j < g0.size(); ++j) ad0(i, j) = ad(i, g0[j]);
  std::vector<LieElement> c0;
  for (const auto& k : kernel(ad0)) {
    Vec full(L.dim(), L.coeff().zero());
    for (std::size_t j = 0; j < g0.size(); ++j) full[g0[j]] = k[j];
    c0.emplace_back(Lp, full);
  }
  // s is maximal toral in c0 when c_{c0}(s) = s.
  if (!s.empty() && !c0.empty()) {
    Matrix cond(s.size() * L.dim(), c0.size(), p);
    for (std::size_t a = 0; a < s.size(); ++a) {
      Vec h(L.dim(), L.coeff().zero());
      for (std::size_t j = 0; j < n; ++j) h[j] = s[a][j];
      const LieElement he(Lp, h);
      for (std::size_t c = 0; c < c0.size(); ++c) {
        const LieElement br = bracket(he, c0[c]);
        for (std::size_t i = 0; i < L.dim(); ++i) cond(a * L.dim() + i, c) = br[i];
      }
    }
    if (kernel(cond).size() != s.size()) return false;
  } else if (s.empty() && !c0.empty()) {
    return false;
  }

  // Levi of s: roots vanishing on s.
  std::vector<std::size_t> levi;
  for (std::size_t r = 0; r < d.num_roots(); ++r) {
    bool vanish = true;
    for (const auto& h : s) {
      Scalar v = L.coeff().zero();
      for (std::size_t j = 0; j < n; ++j) v += h[j] * L.coeff().from_int(d.root(r)[j]);
      if (!v.is_zero()) {
        vanish = false;
        break;
      }
    }
    if (vanish) levi.push_back(r);
  }
  for (auto r : supp_roots)
    if (std::find(levi.begin(), levi.end(), r) == levi.end()) return false;

  // phi in the rational span of the Levi's coroots.
  std::vector<Vec> cor;
  for (auto r : levi) {
    Vec v;
    for (auto c : d.coroot(r)) v.push_back(Scalar(c));
    cor.push_back(v);
  }
  const std::size_t base = cor.empty() ? 0 : row_space(cor, n, 0).size();
  Vec pv;
  for (auto c : phi.coords) pv.push_back(Scalar(c));
  cor.push_back(pv);
  if (row_space(cor, n, 0).size() != base) return false;

  return is_distinguished(x, levi, phi);
}

nlohmann::json AssocReport::to_json() const {
  nlohmann::json j;
  j["pass"] = pass;
  j["phi_in_argmax"] = phi_in_argmax;
  j["bad_weight"] = nlohmann::json::array();
  for (const auto& c : bad_weight) j["bad_weight"].push_back(cochar_json(c));
  j["associated_in_ball"] = nlohmann::json::array();
  for (const auto& c : associated_in_ball) j["associated_in_ball"].push_back(cochar_json(c));
  j["search"] = search.to_json();
  if (!failure.empty()) j["failure"] = failure;
  return j;
}

AssocReport theorem_assoc_check(const LieElement& x, const Cocharacter& phi, const NormForm& norm,
                                std::optional<mpq_class> bound, const SearchOptions& opts) {
  AssocReport rep;
  if (!verify_associated(x, phi)) {
    rep.failure = "phi is not associated to X";
    return rep;
  }
  const mpq_class b = bound ? *bound : mpq_class(norm.norm2(phi.coords).to_mpq() * 9);
  rep.search = optimal_search(x, norm, b, opts);
  const Cocharacter prim = phi.primitive_part();
  rep.phi_in_argmax = std::find(rep.search.argmax.begin(), rep.search.argmax.end(), prim) != rep.search.argmax.end();
  for (const auto& psi : rep.search.argmax) {
    auto w = homogeneous_weight(x, psi);
    if (w && *w != 1 && *w != 2) rep.bad_weight.push_back(psi);
  }
  std::vector<IntVec> supp;
  root_support(x, supp);
  for_each_lattice_point(norm, b, [&](const IntVec& psi) {
    for (const auto& a : supp)
      if (dot(a, psi) != 2) return;
    Cocharacter c{psi};
    if (verify_associated(x, c)) rep.associated_in_ball.push_back(c);
  });
  rep.pass = rep.phi_in_argmax && rep.bad_weight.empty() && rep.associated_in_ball.size() == 1 &&
             rep.associated_in_ball[0] == phi;
  if (!rep.phi_in_argmax)
    rep.failure = "primitive phi not in argmax";
  else if (!rep.bad_weight.empty())
    rep.failure = "argmax member with X outside g(1) and g(2)";
  else if (!rep.pass)
    rep.failure = "associated cocharacter in T not unique";
  return rep;
}

bool parabolic_homog_check(const LieAlgebraPtr& Lp, const Cocharacter& phi) {
  const LieAlgebra& L = *Lp;
  const std::uint32_t p = L.characteristic();
  if (p == 0) throw std::invalid_argument("parabolic_homog_check needs a finite field");
  const Grading g = grading(L, phi);
  std::vector<std::int64_t> wt(L.dim());
  for (const auto& [w, idx] : g.slices)
    for (auto b : idx) wt[b] = w;
  const auto par = instability_parabolic(L.datum(), phi);
  for (auto beta : par.u_roots)
    for (std::uint32_t t = 1; t < p; ++t) {
      const Matrix A = root_element_ad(L, beta, Scalar::mod(t, p));
      for (std::size_t b = 0; b < L.dim(); ++b) {
        const std::int64_t i = wt[b];
        if (i < 1) continue;
        for (std::size_t k = 0; k < L.dim(); ++k) {
          Scalar v = A(k, b);
          if (k == b) v -= Scalar::mod(1, p);
          if (!v.is_zero() && wt[k] <= i) return false;
        }
      }
    }
  return true;
}

}  // namespace nilorb

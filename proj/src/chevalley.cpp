#include "nilorb/chevalley.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "nilorb/poly.hpp"

namespace nilorb {

namespace {

constexpr std::int64_t kUnknown = std::numeric_limits<std::int64_t>::min();

Matrix unit(std::size_t n, std::size_t i, std::size_t j, std::int64_t v = 1) {
  Matrix m(n, n);
  m(i, j) = Scalar(v);
  return m;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

bool is_integral(const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_integer()) return false;
  return true;
}

std::vector<Matrix> divided_powers(const Matrix& a) {
  std::vector<Matrix> out{Matrix::identity(a.rows())};
  for (std::int64_t k = 1;; ++k) {
    Matrix next = (out.back() * a).scaled(Scalar::fraction(1, k));
    if (next.is_zero()) break;
    if (!is_integral(next)) throw std::logic_error("divided power is not integral");
    out.push_back(std::move(next));
  }
  return out;
}

std::vector<Scalar> flatten(const Matrix& m) {
  std::vector<Scalar> v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

}  // namespace

Matrix reduce_mod(const Matrix& m, std::uint32_t p) {
  if (p == 0) return m;
  Matrix r(m.rows(), m.cols(), p);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Scalar& v = m(i, j);
      if (v.characteristic() == p) {
        r(i, j) = v;
        continue;
      }
      const mpq_class q = v.to_mpq();
      r(i, j) = Scalar::mod(mpz_class(q.get_num() % p).get_si(), p) /
                Scalar::mod(mpz_class(q.get_den() % p).get_si(), p);
    }
  return r;
}

LieAlgebraPtr LieAlgebra::build(const RootDatum& datum, CoeffField coeff) {
  std::shared_ptr<LieAlgebra> L(new LieAlgebra(datum, coeff));
  L->cartan_dim_ = datum.lattice_rank();
  L->compute_structure_constants();
  L->fill_table();
  L->build_realization();
  return L;
}

std::optional<std::size_t> LieAlgebra::basis_root(std::size_t b) const {
  if (b < cartan_dim_) return std::nullopt;
  return b - cartan_dim_;
}

std::string LieAlgebra::id() const {
  std::string s = datum_.label();
  if (datum_.isogeny() != Isogeny::General) s += "." + to_string(datum_.isogeny());
  if (datum_.isogeny() != Isogeny::General && datum_.central_rank() > 0)
    s += "+z" + std::to_string(datum_.central_rank());
  return s + "/" + coeff_.name();
}

void LieAlgebra::compute_structure_constants() {
  const RootDatum& d = datum_;
  const std::size_t R = d.num_roots();
  n_.assign(R * R, kUnknown);

  auto len = [&](std::size_t i) { return d.length2(i); };
  auto diff = [&](std::size_t a, std::size_t b) { return d.sum(a, d.negative(b)); };

  std::function<std::int64_t(std::size_t, std::size_t)> N = [&](std::size_t x, std::size_t y) -> std::int64_t {
    auto s = d.sum(x, y);
    if (!s) return 0;
    std::int64_t& memo = n_[x * R + y];
    if (memo != kUnknown) return memo;
    std::int64_t v = 0;
    const bool px = d.is_positive(x), py = d.is_positive(y);
    if (px && py) {
      const std::size_t xi = *s;
      std::size_t a = 0;
      while (!diff(xi, a) || !d.is_positive(*diff(xi, a))) ++a;
      const std::size_t b = *diff(xi, a);
      if (x == a && y == b) {
        std::int64_t r = 0;
        auto cur = std::optional<std::size_t>(b);
        while ((cur = diff(*cur, a))) ++r;
        v = r + 1;
      } else if (x > y) {
        v = -N(y, x);
      } else {
        // Special pair (x, y) against the extraspecial pair (a, b).
        mpq_class t = 0;
        if (auto bx = diff(b, x)) t += mpq_class(N(b, d.negative(x)) * N(a, d.negative(y))) / len(*bx);
        if (auto ax = diff(a, x)) t += mpq_class(N(d.negative(x), a) * N(b, d.negative(y))) / len(*ax);
        t *= mpq_class(len(xi)) / N(a, b);
        if (t.get_den() != 1) throw std::logic_error("non-integral structure constant");
        v = t.get_num().get_si();
      }
    } else if (!px && !py) {
      v = -N(d.negative(x), d.negative(y));
    } else {
      // x + y + z = 0: N_{x,y}/(z,z) = N_{y,z}/(x,x) = N_{z,x}/(y,y).
      const std::size_t z = d.negative(*s);
      mpq_class t;
      if (d.is_positive(y) == d.is_positive(z))
        t = mpq_class(N(y, z) * len(z)) / len(x);
      else
        t = mpq_class(N(z, x) * len(z)) / len(y);
      if (t.get_den() != 1) throw std::logic_error("non-integral structure constant");
      v = t.get_num().get_si();
    }
    n_[x * R + y] = v;
    return v;
  };
  for (std::size_t x = 0; x < R; ++x)
    for (std::size_t y = 0; y < R; ++y) n_[x * R + y] = N(x, y);
}

std::int64_t LieAlgebra::structure_constant(std::size_t a, std::size_t b) const {
  return n_[a * datum_.num_roots() + b];
}

void LieAlgebra::fill_table() {
  const std::size_t n = dim();
  const RootDatum& d = datum_;
  table_.assign(n * n, {});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      SparseInt& out = table_[i * n + j];
      auto ri = basis_root(i), rj = basis_root(j);
      if (!ri && !rj) continue;
      if (!ri) {
        if (auto c = d.root(*rj)[i]) out.push_back({j, c});
      } else if (!rj) {
        if (auto c = d.root(*ri)[j]) out.push_back({i, -c});
      } else if (*rj == d.negative(*ri)) {
        for (std::size_t a = 0; a < cartan_dim_; ++a)
          if (auto c = d.coroot(*ri)[a]) out.push_back({a, c});
      } else if (auto s = d.sum(*ri, *rj)) {
        out.push_back({root_basis(*s), structure_constant(*ri, *rj)});
      }
    }
}

bool LieAlgebra::check_jacobi() const {
  const std::size_t n = dim();
  const std::uint32_t p = characteristic();
  std::vector<std::int64_t> acc(n);
  auto add_nested = [&](std::size_t a, std::size_t b, std::size_t c) {
    // [b_a, [b_b, b_c]]
    for (auto [k, v] : basis_bracket(b, c))
      for (auto [m, w] : basis_bracket(a, k)) acc[m] += v * w;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        std::fill(acc.begin(), acc.end(), 0);
        add_nested(i, j, k);
        add_nested(j, k, i);
        add_nested(k, i, j);
        for (auto v : acc)
          if (p == 0 ? v != 0 : v % static_cast<std::int64_t>(p) != 0) return false;
      }
  return true;
}

std::size_t LieAlgebra::realization_dim() const { return realization_.empty() ? 0 : realization_[0].rows(); }

void LieAlgebra::build_realization() {
  const RootDatum& d = datum_;
  const bool gl = d.isogeny() == Isogeny::General;
  if (!gl && (d.isogeny() != Isogeny::SimplyConnected || d.central_rank() != 0 || d.components().size() != 1))
    return;
  const CartanComponent c = d.components()[0];
  if (c.type < 'A' || c.type > 'D') return;
  const std::size_t r = static_cast<std::size_t>(c.rank);
  std::size_t m = 0;
  switch (c.type) {
    case 'A': m = r + 1; break;
    case 'B': m = 2 * r + 1; break;
    default: m = 2 * r;
  }
  std::vector<Matrix> E(r), F(r);
  for (std::size_t i = 0; i < r; ++i) {
    if (c.type == 'A') {
      E[i] = unit(m, i, i + 1);
    } else if (i + 1 < r) {
      E[i] = unit(m, i, i + 1) - unit(m, r + i + 1, r + i);
    } else if (c.type == 'C') {
      E[i] = unit(m, r - 1, 2 * r - 1);
    } else if (c.type == 'D') {
      E[i] = unit(m, r - 2, 2 * r - 1) - unit(m, r - 1, 2 * r - 2);
    }
    if (c.type == 'B' && i + 1 == r) {
      // Form x_0^2 + sum x_i x_{r+i}, with v_0 stored last.
      E[i] = unit(m, r - 1, 2 * r, 2) - unit(m, 2 * r, 2 * r - 1);
      F[i] = unit(m, 2 * r, r - 1) - unit(m, 2 * r - 1, 2 * r, 2);
    } else {
      F[i] = E[i].transpose();
    }
  }
  std::vector<Matrix> img(dim());
  for (std::size_t a = 0; a < cartan_dim_; ++a) img[a] = gl ? unit(m, a, a) : commutator(E[a], F[a]);
  const std::size_t P = d.num_positive();
  for (std::size_t k = 0; k < P; ++k) {
    if (k < r) {
      img[root_basis(k)] = E[k];
      img[root_basis(d.negative(k))] = F[k];
      continue;
    }
    std::size_t i = 0;
    std::optional<std::size_t> rest;
    for (; i < r; ++i) {
      rest = d.sum(k, d.negative(i));
      if (rest && d.is_positive(*rest)) break;
    }
    const std::int64_t np = structure_constant(i, *rest);
    const std::int64_t nn = structure_constant(d.negative(i), d.negative(*rest));
    img[root_basis(k)] = commutator(E[i], img[root_basis(*rest)]).scaled(Scalar::fraction(1, np));
    img[root_basis(d.negative(k))] =
        commutator(F[i], img[root_basis(d.negative(*rest))]).scaled(Scalar::fraction(1, nn));
  }
  for (const auto& x : img)
    if (!is_integral(x)) throw std::logic_error("realization is not integral");
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix expect(m, m);
      for (auto [k, v] : basis_bracket(i, j)) expect = expect + img[k].scaled(Scalar(v));
      if (commutator(img[i], img[j]) != expect) throw std::logic_error("defining realization is not a homomorphism");
    }
  realization_ = img;
  for (const auto& x : img) realization_mod_.push_back(reduce_mod(x, characteristic()));
}

std::vector<Matrix> LieAlgebra::divided_ad_powers(std::size_t root) const {
  const std::size_t n = dim();
  Matrix a(n, n);
  const std::size_t b = root_basis(root);
  for (std::size_t j = 0; j < n; ++j)
    for (auto [k, v] : basis_bracket(b, j)) a(k, j) += Scalar(v);
  return divided_powers(a);
}

std::vector<Matrix> LieAlgebra::divided_matrix_powers(std::size_t root) const {
  if (!has_realization()) throw std::invalid_argument("no defining realization for " + id());
  return divided_powers(realization_[root_basis(root)]);
}

LieElement::LieElement(LieAlgebraPtr parent, Vec coords) : parent_(std::move(parent)), coords_(std::move(coords)) {
  if (coords_.size() != parent_->dim()) throw std::invalid_argument("LieElement: coordinate length mismatch");
  const CoeffField& f = parent_->coeff();
  for (auto& c : coords_) c = f.zero() + c;
}

LieElement LieElement::zero(LieAlgebraPtr parent) {
  Vec v(parent->dim(), parent->coeff().zero());
  return LieElement(std::move(parent), std::move(v));
}

LieElement LieElement::basis(LieAlgebraPtr parent, std::size_t i) {
  Vec v(parent->dim(), parent->coeff().zero());
  v.at(i) = parent->coeff().one();
  return LieElement(std::move(parent), std::move(v));
}

bool LieElement::is_zero() const { return nilorb::is_zero(coords_); }

std::vector<std::size_t> LieElement::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (!coords_[i].is_zero()) s.push_back(i);
  return s;
}

namespace {
void same_parent(const LieElement& a, const LieElement& b) {
  if (a.parent() != b.parent() && (a.parent()->id() != b.parent()->id()))
    throw std::invalid_argument("Lie elements belong to different algebras");
}
}  // namespace

LieElement LieElement::operator+(const LieElement& o) const {
  same_parent(*this, o);
  return LieElement(parent_, add(coords_, o.coords_));
}

LieElement LieElement::operator-(const LieElement& o) const {
  same_parent(*this, o);
  return LieElement(parent_, sub(coords_, o.coords_));
}

LieElement LieElement::scaled(const Scalar& s) const { return LieElement(parent_, scale(coords_, s)); }

bool operator==(const LieElement& a, const LieElement& b) {
  if (a.parent_->id() != b.parent_->id()) return false;
  return a.coords_ == b.coords_;
}

nlohmann::json LieElement::to_json() const {
  nlohmann::json j;
  j["algebra_id"] = parent_->id();
  j["coords"] = nlohmann::json::array();
  for (const auto& c : coords_) j["coords"].push_back(c.to_string());
  return j;
}

LieElement LieElement::from_json(LieAlgebraPtr parent, const nlohmann::json& j) {
  if (j.at("algebra_id").get<std::string>() != parent->id())
    throw std::invalid_argument("LieElement json belongs to " + j.at("algebra_id").get<std::string>());
  Vec v;
  for (const auto& c : j.at("coords")) v.push_back(Scalar::parse(c.get<std::string>(), parent->characteristic()));
  return LieElement(std::move(parent), std::move(v));
}

LieElement bracket(const LieElement& x, const LieElement& y) {
  same_parent(x, y);
  const LieAlgebra& L = *x.parent();
  Vec out(L.dim(), L.coeff().zero());
  const auto sx = x.support(), sy = y.support();
  for (auto i : sx)
    for (auto j : sy) {
      const auto& br = L.basis_bracket(i, j);
      if (br.empty()) continue;
      const Scalar c = x[i] * y[j];
      for (auto [k, v] : br) out[k] += c * L.coeff().from_int(v);
    }
  return LieElement(x.parent(), std::move(out));
}

Matrix ad_matrix(const LieElement& x) {
  const LieAlgebra& L = *x.parent();
  const std::size_t n = L.dim();
  Matrix m(n, n, L.characteristic());
  for (auto i : x.support())
    for (std::size_t j = 0; j < n; ++j)
      for (auto [k, v] : L.basis_bracket(i, j)) m(k, j) += x[i] * L.coeff().from_int(v);
  return m;
}

bool is_nilpotent(const LieElement& x) {
  const LieAlgebra& L = *x.parent();
  if (L.has_realization()) {
    const Matrix m = realize(x);
    return m.pow(m.rows()).is_zero();
  }
  // Central directions split off as a direct summand.
  for (std::size_t a = L.datum().rank(); a < L.cartan_dim(); ++a)
    if (!x[a].is_zero()) return false;
  const Poly chi = characteristic_polynomial(ad_matrix(x));
  return chi == Poly::monomial(L.dim(), L.coeff().one(), L.characteristic());
}

std::vector<LieElement> centralizer(const LieElement& x) {
  std::vector<LieElement> out;
  for (auto& v : kernel(ad_matrix(x))) out.emplace_back(x.parent(), std::move(v));
  return out;
}

std::size_t Grading::dim(std::int64_t i) const {
  auto it = slices.find(i);
  return it == slices.end() ? 0 : it->second.size();
}

std::int64_t Grading::weight_of(std::size_t b) const {
  for (const auto& [w, idx] : slices)
    if (std::find(idx.begin(), idx.end(), b) != idx.end()) return w;
  throw std::out_of_range("basis index not in grading");
}

std::vector<std::size_t> Grading::sum_of(std::int64_t lo) const {
  std::vector<std::size_t> out;
  for (auto it = slices.lower_bound(lo); it != slices.end(); ++it) out.insert(out.end(), it->second.begin(), it->second.end());
  std::sort(out.begin(), out.end());
  return out;
}

Grading grading(const LieAlgebra& L, const Cocharacter& phi) {
  if (phi.coords.size() != L.datum().lattice_rank()) throw std::invalid_argument("cocharacter has wrong length");
  Grading g;
  g.cochar = phi;
  for (std::size_t a = 0; a < L.cartan_dim(); ++a) g.slices[0].push_back(a);
  for (std::size_t r = 0; r < L.datum().num_roots(); ++r) g.slices[L.datum().pairing(r, phi)].push_back(L.root_basis(r));
  for (auto& [w, idx] : g.slices) std::sort(idx.begin(), idx.end());
  return g;
}

std::optional<std::int64_t> homogeneous_weight(const LieElement& x, const Cocharacter& phi) {
  const LieAlgebra& L = *x.parent();
  std::optional<std::int64_t> w;
  for (auto b : x.support()) {
    const auto r = L.basis_root(b);
    const std::int64_t v = r ? L.datum().pairing(*r, phi) : 0;
    if (w && *w != v) return std::nullopt;
    w = v;
  }
  return w;
}

InvariantForm invariant_form(const LieAlgebra& L) {
  const std::size_t n = L.dim();
  const std::uint32_t p = L.characteristic();
  InvariantForm f;
  f.gram = Matrix(n, n, p);
  if (L.has_realization()) {
    f.from_trace = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) f.gram(i, j) = f.gram(j, i) = (L.realization(i) * L.realization(j)).trace();
    return f;
  }
  const RootDatum& d = L.datum();
  const NormForm norm = default_norm(d);
  IntMatrix k(n, IntVec(n, 0));
  for (std::size_t a = 0; a < L.cartan_dim(); ++a)
    for (std::size_t b = 0; b < L.cartan_dim(); ++b) {
      const Scalar v = norm.gram(a, b);
      if (!v.is_integer()) throw std::logic_error("invariant form: non-integral Cartan block");
      k[a][b] = v.to_int();
    }
  for (std::size_t r = 0; r < d.num_roots(); ++r) {
    const Scalar v = norm.norm2(d.coroot(r));
    k[L.root_basis(r)][L.root_basis(d.negative(r))] = v.to_int() / 2;
  }
  // Normalise each simple ideal by the content of its block.
  auto comp_of_root = [&](std::size_t r) {
    const IntVec& c = d.root_coeffs(r);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0) return d.component_of_simple(i);
    return std::size_t{0};
  };
  std::vector<std::optional<std::size_t>> comp(n);
  for (std::size_t a = 0; a < d.rank(); ++a) comp[a] = d.component_of_simple(a);
  for (std::size_t r = 0; r < d.num_roots(); ++r) comp[L.root_basis(r)] = comp_of_root(r);
  for (std::size_t c = 0; c < d.components().size(); ++c) {
    std::int64_t g = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (comp[i] == c && comp[j] == c) g = std::gcd(g, k[i][j]);
    if (g <= 1) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (comp[i] == c && comp[j] == c) k[i][j] /= g;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) f.gram(i, j) = L.coeff().from_int(k[i][j]);
  return f;
}

bool is_nondegenerate(const InvariantForm& f) { return !determinant(f.gram).is_zero(); }

bool is_ad_invariant(const LieAlgebra& L, const InvariantForm& f) {
  const std::size_t n = L.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        // kappa([b_i, b_j], b_k) = kappa(b_i, [b_j, b_k])
        Scalar lhs = L.coeff().zero(), rhs = L.coeff().zero();
        for (auto [m, v] : L.basis_bracket(i, j)) lhs += f.gram(m, k) * L.coeff().from_int(v);
        for (auto [m, v] : L.basis_bracket(j, k)) rhs += f.gram(i, m) * L.coeff().from_int(v);
        if (lhs != rhs) return false;
      }
  return true;
}

Matrix realize(const LieElement& x) {
  const LieAlgebra& L = *x.parent();
  if (!L.has_realization()) throw std::invalid_argument("no defining realization for " + L.id());
  const std::size_t m = L.realization_dim();
  Matrix out(m, m, L.characteristic());
  for (auto i : x.support()) out = out + L.realization(i).scaled(x[i]);
  return out;
}

std::optional<LieElement> from_matrix(const LieAlgebraPtr& L, const Matrix& m) {
  if (!L->has_realization()) throw std::invalid_argument("no defining realization for " + L->id());
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < L->dim(); ++i) cols.push_back(flatten(L->realization(i)));
  const std::size_t k = L->realization_dim();
  const Matrix a = Matrix::from_columns(cols, k * k, L->characteristic());
  Vec b = flatten(m);
  for (auto& v : b) v = L->coeff().zero() + v;
  auto c = solve(a, b);
  if (!c) return std::nullopt;
  return LieElement(L, std::move(*c));
}

JordanParts jordan_decompose(const LieElement& x) {
  const LieAlgebraPtr& L = x.parent();
  if (!L->coeff().is_perfect()) throw std::invalid_argument("jordan_decompose: coefficient field is not perfect");
  if (!L->has_realization()) throw std::invalid_argument("jordan_decompose: unsupported type " + L->id());
  const Matrix m = realize(x);
  const Poly P = squarefree_part(characteristic_polynomial(m));
  const Poly dP = P.derivative();
  Matrix s = m;
  for (int iter = 0;; ++iter) {
    const Matrix ps = P.eval(s);
    if (ps.is_zero()) break;
    if (iter > 64) throw std::logic_error("jordan_decompose: Newton iteration did not converge");
    auto inv = inverse(dP.eval(s));
    if (!inv) throw std::logic_error("jordan_decompose: P'(s) not invertible");
    s = s - ps * *inv;
  }
  auto se = from_matrix(L, s);
  if (!se) throw std::logic_error("jordan_decompose: semisimple part outside the algebra");
  return {*se, x - *se};
}

LieElement lambda_map(const Matrix& g, const LieAlgebraPtr& L) {
  if (!L->has_realization()) throw std::invalid_argument("lambda_map: unsupported type " + L->id());
  const std::uint32_t p = L->characteristic();
  const std::size_t m = L->realization_dim();
  if (g.rows() != m || g.cols() != m) throw std::invalid_argument("lambda_map: matrix has wrong size");
  Matrix gm = reduce_mod(g, p);
  if (L->datum().isogeny() == Isogeny::General) {
    // GL_n as a Levi of SL_{n+1}: g -> diag(g, det g^-1), projected to sl_{n+1}.
    const Scalar n1 = L->coeff().from_int(static_cast<std::int64_t>(m + 1));
    if (n1.is_zero()) throw std::domain_error("lambda_map: degenerate trace form (p divides n+1)");
    const Scalar det = determinant(gm);
    if (det.is_zero()) throw std::invalid_argument("lambda_map: matrix is not invertible");
    const Scalar c = (gm.trace() + det.inverse()) / n1;
    auto x = from_matrix(L, gm - Matrix::identity(m, p).scaled(c));
    return *x;
  }
  const InvariantForm f = invariant_form(*L);
  Vec rhs;
  for (std::size_t j = 0; j < L->dim(); ++j) rhs.push_back((gm * L->realization(j)).trace());
  if (!is_nondegenerate(f)) throw std::domain_error("lambda_map: degenerate trace form");
  auto c = solve(f.gram, rhs);
  return LieElement(L, std::move(*c));
}

Matrix root_element_ad(const LieAlgebra& L, std::size_t root, const Scalar& t) {
  const auto pw = L.divided_ad_powers(root);
  const std::uint32_t p = L.characteristic();
  Matrix out(L.dim(), L.dim(), p);
  Scalar tk = L.coeff().one();
  for (const auto& m : pw) {
    out = out + reduce_mod(m, p).scaled(tk);
    tk *= t;
  }
  return out;
}

Matrix root_element_matrix(const LieAlgebra& L, std::size_t root, const Scalar& t) {
  const auto pw = L.divided_matrix_powers(root);
  const std::uint32_t p = L.characteristic();
  const std::size_t m = L.realization_dim();
  Matrix out(m, m, p);
  Scalar tk = L.coeff().one();
  for (const auto& mm : pw) {
    out = out + reduce_mod(mm, p).scaled(tk);
    tk *= t;
  }
  return out;
}

}  // namespace nilorb

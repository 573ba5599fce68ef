#include "nilorb/rootdata.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace nilorb {

std::string to_string(Isogeny f) {
  switch (f) {
    case Isogeny::SimplyConnected: return "sc";
    case Isogeny::Adjoint: return "adjoint";
    case Isogeny::General: return "gl";
  }
  return "?";
}

Isogeny parse_isogeny(const std::string& s) {
  if (s == "sc" || s == "simply-connected") return Isogeny::SimplyConnected;
  if (s == "ad" || s == "adjoint") return Isogeny::Adjoint;
  if (s == "gl") return Isogeny::General;
  throw std::invalid_argument("unknown isogeny flavor '" + s + "'");
}

std::vector<CartanComponent> parse_cartan_type(const std::string& s) {
  std::vector<CartanComponent> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t end = s.find('x', pos);
    if (end == std::string::npos) end = s.size();
    const std::string part = s.substr(pos, end - pos);
    if (part.size() < 2 || !std::isalpha(static_cast<unsigned char>(part[0])))
      throw std::invalid_argument("invalid Cartan type '" + s + "'");
    CartanComponent c;
    c.type = static_cast<char>(std::toupper(static_cast<unsigned char>(part[0])));
    for (std::size_t i = 1; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) throw std::invalid_argument("invalid Cartan type '" + s + "'");
    c.rank = std::stoi(part.substr(1));
    const bool ok = (c.type == 'A' && c.rank >= 1) || (c.type == 'B' && c.rank >= 2) ||
                    (c.type == 'C' && c.rank >= 2) || (c.type == 'D' && c.rank >= 4) ||
                    (c.type == 'E' && c.rank >= 6 && c.rank <= 8) || (c.type == 'F' && c.rank == 4) ||
                    (c.type == 'G' && c.rank == 2);
    if (!ok) throw std::invalid_argument("invalid type/rank combination '" + part + "'");
    out.push_back(c);
    pos = end + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty Cartan type");
  return out;
}

IntMatrix cartan_matrix(const CartanComponent& c) {
  const int n = c.rank;
  IntMatrix a(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  auto edge = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
  switch (c.type) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) edge(i, i + 1);
      break;
    case 'B':
      for (int i = 0; i + 1 < n; ++i) edge(i, i + 1);
      a[n - 2][n - 1] = -2;  // alpha_n short
      break;
    case 'C':
      for (int i = 0; i + 1 < n; ++i) edge(i, i + 1);
      a[n - 1][n - 2] = -2;  // alpha_n long
      break;
    case 'D':
      for (int i = 0; i + 2 < n; ++i) edge(i, i + 1);
      edge(n - 3, n - 1);
      break;
    case 'E': {
      const int edges[][2] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
      for (auto& e : edges)
        if (e[0] < n && e[1] < n) edge(e[0], e[1]);
      break;
    }
    case 'F':
      edge(0, 1);
      edge(1, 2);
      edge(2, 3);
      a[1][2] = -2;
      break;
    case 'G':
      a[0][1] = -1;
      a[1][0] = -3;
      break;
    default: throw std::invalid_argument("unknown Cartan type letter");
  }
  return a;
}

std::int64_t dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::int64_t gcd_of(const IntVec& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  return g;
}

bool Cocharacter::is_zero() const { return gcd_of(coords) == 0; }
bool Cocharacter::is_primitive() const { return gcd_of(coords) == 1; }

Cocharacter Cocharacter::primitive_part() const {
  const std::int64_t g = gcd_of(coords);
  if (g == 0) return *this;
  Cocharacter r = *this;
  for (auto& x : r.coords) x /= g;
  return r;
}

Cocharacter Cocharacter::scaled(std::int64_t n) const {
  Cocharacter r = *this;
  for (auto& x : r.coords) x *= n;
  return r;
}

RootDatum RootDatum::build(const std::string& cartan_type, Isogeny flavor, int central_rank) {
  if (central_rank < 0) throw std::invalid_argument("central rank must be nonnegative");
  if (flavor == Isogeny::General) {
    auto comps = parse_cartan_type(cartan_type);
    if (comps.size() != 1 || comps[0].type != 'A' || central_rank != 0)
      throw std::invalid_argument("gl flavor needs a single type A component");
    return general_linear(comps[0].rank + 1);
  }
  RootDatum d;
  d.components_ = parse_cartan_type(cartan_type);
  d.flavor_ = flavor;
  d.central_rank_ = static_cast<std::size_t>(central_rank);
  std::size_t r = 0;
  for (const auto& c : d.components_) r += c.rank;
  d.cartan_.assign(r, IntVec(r, 0));
  std::size_t off = 0;
  for (std::size_t ci = 0; ci < d.components_.size(); ++ci) {
    const IntMatrix a = cartan_matrix(d.components_[ci]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      d.simple_component_.push_back(ci);
      for (std::size_t j = 0; j < a.size(); ++j) d.cartan_[off + i][off + j] = a[i][j];
    }
    off += a.size();
  }
  d.lattice_rank_ = r + d.central_rank_;
  IntMatrix simple(r, IntVec(d.lattice_rank_, 0)), simple_co(r, IntVec(d.lattice_rank_, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (flavor == Isogeny::SimplyConnected) {
        simple[i][j] = d.cartan_[i][j];
        simple_co[i][j] = i == j;
      } else {
        simple[i][j] = i == j;
        simple_co[i][j] = d.cartan_[j][i];
      }
    }
  d.generate_roots(simple, simple_co);
  return d;
}

RootDatum RootDatum::general_linear(int n) {
  if (n < 2) throw std::invalid_argument("GL_n needs n >= 2");
  RootDatum d;
  d.components_ = {CartanComponent{'A', n - 1}};
  d.flavor_ = Isogeny::General;
  d.central_rank_ = 1;
  d.lattice_rank_ = static_cast<std::size_t>(n);
  d.cartan_ = cartan_matrix(d.components_[0]);
  d.simple_component_.assign(n - 1, 0);
  IntMatrix simple(n - 1, IntVec(n, 0));
  for (int i = 0; i + 1 < n; ++i) {
    simple[i][i] = 1;
    simple[i][i + 1] = -1;
  }
  d.generate_roots(simple, simple);
  return d;
}

void RootDatum::generate_roots(const IntMatrix& simple, const IntMatrix& simple_co) {
  const std::size_t r = cartan_.size();
  // Relative squared lengths of the simple roots, smallest = 2 per component.
  std::vector<mpq_class> len(r, 0);
  for (std::size_t start = 0; start < r; ++start) {
    if (len[start] != 0) continue;
    std::vector<std::size_t> comp{start}, stack{start};
    len[start] = 1;
    while (!stack.empty()) {
      std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < r; ++j)
        if (j != i && cartan_[i][j] != 0 && len[j] == 0) {
          mpq_class ratio(cartan_[j][i], cartan_[i][j]);
          ratio.canonicalize();
          len[j] = len[i] * ratio;
          comp.push_back(j);
          stack.push_back(j);
        }
    }
    mpq_class mn = len[start];
    for (auto j : comp) mn = std::min(mn, len[j]);
    for (auto j : comp) len[j] = len[j] * 2 / mn;
  }
  simple_length2_.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    if (len[i].get_den() != 1) throw std::logic_error("non-integral root length");
    simple_length2_[i] = len[i].get_num().get_si();
  }

  auto pair_simple = [&](const IntVec& a, std::size_t i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < r; ++j) s += a[j] * cartan_[j][i];
    return s;
  };
  std::set<IntVec> seen;
  std::vector<IntVec> queue;
  for (std::size_t i = 0; i < r; ++i) {
    IntVec e(r, 0);
    e[i] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (std::size_t i = 0; i < r; ++i) {
      IntVec b = queue[q];
      b[i] -= pair_simple(queue[q], i);
      if (seen.insert(b).second) queue.push_back(b);
    }
  }
  std::vector<IntVec> pos;
  for (const auto& a : seen)
    if (std::all_of(a.begin(), a.end(), [](std::int64_t x) { return x >= 0; })) pos.push_back(a);
  std::sort(pos.begin(), pos.end(), [](const IntVec& x, const IntVec& y) {
    const auto hx = std::accumulate(x.begin(), x.end(), std::int64_t{0});
    const auto hy = std::accumulate(y.begin(), y.end(), std::int64_t{0});
    if (hx != hy) return hx < hy;
    return x > y;
  });
  if (pos.size() * 2 != seen.size()) throw std::logic_error("root system is not symmetric");
  coeffs_ = pos;
  for (const auto& a : pos) {
    IntVec neg = a;
    for (auto& x : neg) x = -x;
    coeffs_.push_back(neg);
  }
  for (const auto& a : coeffs_) {
    IntVec ch(lattice_rank_, 0), co(lattice_rank_, 0);
    std::int64_t l2 = 0;
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t l = 0; l < r; ++l) l2 += a[k] * a[l] * cartan_[k][l] * simple_length2_[l];
    l2 /= 2;  // now (alpha, alpha)
    length2_.push_back(l2);
    for (std::size_t k = 0; k < r; ++k) {
      if (a[k] == 0) continue;
      const std::int64_t ck = a[k] * simple_length2_[k];
      if (ck % l2 != 0) throw std::logic_error("non-integral coroot");
      for (std::size_t j = 0; j < lattice_rank_; ++j) {
        ch[j] += a[k] * simple[k][j];
        co[j] += (ck / l2) * simple_co[k][j];
      }
    }
    roots_.push_back(ch);
    coroots_.push_back(co);
  }
}

std::string RootDatum::label() const {
  std::string s;
  if (flavor_ == Isogeny::General) return "GL" + std::to_string(lattice_rank_);
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) s += 'x';
    s += components_[i].type;
    s += std::to_string(components_[i].rank);
  }
  return s;
}

std::size_t RootDatum::negative(std::size_t i) const {
  const std::size_t n = num_positive();
  return i < n ? i + n : i - n;
}

std::int64_t RootDatum::height(std::size_t i) const {
  return std::accumulate(coeffs_[i].begin(), coeffs_[i].end(), std::int64_t{0});
}

std::optional<std::size_t> RootDatum::find_root(const IntVec& c) const {
  // Roots are few; a linear scan keeps the type trivially copyable.
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] == c) return i;
  return std::nullopt;
}

std::optional<std::size_t> RootDatum::sum(std::size_t i, std::size_t j) const {
  IntVec c = coeffs_[i];
  for (std::size_t k = 0; k < c.size(); ++k) c[k] += coeffs_[j][k];
  return find_root(c);
}

std::int64_t RootDatum::inner2(std::size_t i, std::size_t j) const {
  std::int64_t s = 0;
  const std::size_t r = rank();
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = 0; l < r; ++l) s += coeffs_[i][k] * coeffs_[j][l] * cartan_[k][l] * simple_length2_[l];
  return s;
}

std::int64_t RootDatum::pairing(std::size_t root_index, const Cocharacter& phi) const {
  return dot(roots_[root_index], phi.coords);
}

std::int64_t RootDatum::pairing(std::size_t root_index, std::size_t coroot_index) const {
  return dot(roots_[root_index], coroots_[coroot_index]);
}

std::vector<IntVec> RootDatum::central_cocharacters() const {
  std::vector<IntVec> out;
  if (flavor_ == Isogeny::General) {
    out.push_back(IntVec(lattice_rank_, 1));
    return out;
  }
  for (std::size_t k = rank(); k < lattice_rank_; ++k) {
    IntVec e(lattice_rank_, 0);
    e[k] = 1;
    out.push_back(e);
  }
  return out;
}

nlohmann::json RootDatum::to_json() const {
  nlohmann::json j;
  j["type"] = label();
  j["rank"] = rank();
  j["isogeny"] = to_string(flavor_);
  j["central_rank"] = central_rank_;
  j["roots"] = roots_;
  j["coroots"] = coroots_;
  j["cartan"] = cartan_;
  return j;
}

namespace {

bool good_component(const CartanComponent& c, std::uint32_t p) {
  if (p == 0) return true;
  switch (c.type) {
    case 'A': return true;
    case 'B':
    case 'C':
    case 'D': return p != 2;
    case 'E':
      if (c.rank == 8) return p != 2 && p != 3 && p != 5;
      return p != 2 && p != 3;
    case 'F':
    case 'G': return p != 2 && p != 3;
  }
  return false;
}

}  // namespace

bool is_good_prime(const RootDatum& d, std::uint32_t p) {
  return std::all_of(d.components().begin(), d.components().end(),
                     [p](const CartanComponent& c) { return good_component(c, p); });
}

bool is_very_good_prime(const RootDatum& d, std::uint32_t p) {
  if (!is_good_prime(d, p)) return false;
  if (p == 0) return true;
  return std::all_of(d.components().begin(), d.components().end(),
                     [p](const CartanComponent& c) { return c.type != 'A' || (c.rank + 1) % p != 0; });
}

Scalar NormForm::value(const IntVec& phi, const IntVec& psi) const {
  Scalar s(0);
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (phi[i] == 0) continue;
    for (std::size_t j = 0; j < psi.size(); ++j)
      if (psi[j] != 0) s += gram(i, j) * Scalar(phi[i] * psi[j]);
  }
  return s;
}

std::pair<IntMatrix, std::int64_t> NormForm::integral_gram() const {
  mpz_class l = 1;
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j) {
      mpz_class den = gram(i, j).to_mpq().get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
  IntMatrix m(gram.rows(), IntVec(gram.cols()));
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j) {
      mpq_class v = gram(i, j).to_mpq() * l;
      m[i][j] = v.get_num().get_si();
    }
  return {m, l.get_si()};
}

NormForm default_norm(const RootDatum& d) {
  const std::size_t n = d.lattice_rank();
  Matrix g(n, n);
  for (const auto& a : d.roots())
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (a[j] != 0) g(i, j) += Scalar(a[i] * a[j]);
    }
  // Identity on the central directions through functionals vanishing on coroots.
  if (d.isogeny() == Isogeny::General) {
    const Scalar w = Scalar::fraction(1, static_cast<std::int64_t>(n * n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) += w;
  } else {
    for (std::size_t k = d.rank(); k < n; ++k) g(k, k) += Scalar(1);
  }
  return NormForm{g};
}

NormForm pullback_norm(const NormForm& n, const IntMatrix& cols) {
  const std::size_t k = cols.size();
  Matrix g(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) g(i, j) = n.value(cols[i], cols[j]);
  return NormForm{g};
}

bool norms_agree(const NormForm& a, const NormForm& b) { return a.gram == b.gram; }

IntVec apply_matrix(const IntMatrix& m, const IntVec& v) {
  IntVec r(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], v);
  return r;
}

WeylElement simple_reflection(const RootDatum& d, std::size_t i) {
  const std::size_t n = d.lattice_rank();
  WeylElement w;
  // s_i(phi) = phi - <alpha_i, phi> alpha_i^vee
  w.cochar.assign(n, IntVec(n, 0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) w.cochar[a][b] = (a == b) - d.coroot(i)[a] * d.root(i)[b];
  const std::size_t r = d.rank();
  for (std::size_t k = 0; k < d.num_roots(); ++k) {
    IntVec c = d.root_coeffs(k);
    std::int64_t s = 0;
    for (std::size_t j = 0; j < r; ++j) s += c[j] * d.cartan()[j][i];
    c[i] -= s;
    auto idx = d.find_root(c);
    if (!idx) throw std::logic_error("reflection does not permute roots");
    w.root_perm.push_back(*idx);
  }
  return w;
}

std::vector<WeylElement> weyl_group_elements(const RootDatum& d) {
  if (d.rank() > 6) throw std::invalid_argument("weyl_group_elements: rank guard (<= 6) exceeded");
  const std::size_t n = d.lattice_rank();
  std::vector<WeylElement> gens;
  for (std::size_t i = 0; i < d.rank(); ++i) gens.push_back(simple_reflection(d, i));
  WeylElement id;
  id.cochar.assign(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) id.cochar[i][i] = 1;
  id.root_perm.resize(d.num_roots());
  std::iota(id.root_perm.begin(), id.root_perm.end(), std::size_t{0});
  std::vector<WeylElement> out{id};
  std::set<std::vector<std::size_t>> seen{id.root_perm};
  for (std::size_t q = 0; q < out.size(); ++q) {
    for (const auto& g : gens) {
      WeylElement w;
      // w = out[q] * g
      w.cochar.assign(n, IntVec(n, 0));
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t c = 0; c < n; ++c) w.cochar[a][b] += out[q].cochar[a][c] * g.cochar[c][b];
      w.root_perm.resize(d.num_roots());
      for (std::size_t k = 0; k < d.num_roots(); ++k) w.root_perm[k] = out[q].root_perm[g.root_perm[k]];
      if (seen.insert(w.root_perm).second) out.push_back(std::move(w));
    }
  }
  return out;
}

Cocharacter dominant_conjugate(const RootDatum& d, const Cocharacter& phi) {
  Cocharacter cur = phi;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < d.rank(); ++i) {
      const std::int64_t v = d.pairing(i, cur);
      if (v < 0) {
        for (std::size_t k = 0; k < cur.coords.size(); ++k) cur.coords[k] -= v * d.coroot(i)[k];
        changed = true;
      }
    }
  }
  return cur;
}

}  // namespace nilorb

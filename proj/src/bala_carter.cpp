#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "nilorb/instability.hpp"

namespace nilorb {

namespace {

constexpr int kMaxAttempts = 32;
constexpr std::uint64_t kRepresentativeSeed = 0x6a09e667f3bcc909ULL;

std::vector<std::size_t> bits_to_subset(std::uint32_t mask, const std::vector<std::size_t>& universe) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < universe.size(); ++i)
    if (mask >> i & 1u) s.push_back(universe[i]);
  return s;
}

}  // namespace

std::optional<Cocharacter> even_cocharacter(const RootDatum& d, const std::vector<std::size_t>& levi,
                                            const std::vector<std::size_t>& parabolic) {
  const std::size_t k = levi.size();
  Cocharacter phi{IntVec(d.lattice_rank(), 0)};
  if (k == 0) return phi;
  Matrix m(k, k);
  Vec t(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) m(i, j) = Scalar(d.cartan()[levi[i]][levi[j]]);
    const bool in_par = std::find(parabolic.begin(), parabolic.end(), levi[i]) != parabolic.end();
    t[i] = Scalar(in_par ? 0 : 2);
  }
  auto c = solve(m, t);
  if (!c) throw std::logic_error("even_cocharacter: singular Levi Cartan matrix");
  std::vector<mpq_class> coords(d.lattice_rank(), 0);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t a = 0; a < d.lattice_rank(); ++a) coords[a] += (*c)[j].to_mpq() * d.coroot(levi[j])[a];
  for (std::size_t a = 0; a < coords.size(); ++a) {
    if (coords[a].get_den() != 1) return std::nullopt;
    phi.coords[a] = coords[a].get_num().get_si();
  }
  return phi;
}

LieElement richardson_representative(const LieAlgebraPtr& L, const std::vector<std::size_t>& levi,
                                     const std::vector<std::size_t>& parabolic, const Cocharacter& phi,
                                     int* attempts) {
  const RootDatum& d = L->datum();
  (void)parabolic;
  std::vector<std::size_t> l0, l2;
  for (std::size_t a = 0; a < L->cartan_dim(); ++a) l0.push_back(a);
  for (auto r : levi_root_set(d, levi)) {
    const auto w = d.pairing(r, phi);
    if (w == 0) l0.push_back(L->root_basis(r));
    if (w == 2) l2.push_back(L->root_basis(r));
  }
  std::mt19937_64 rng(kRepresentativeSeed);
  const std::uint32_t p = L->characteristic();
  std::uniform_int_distribution<std::int64_t> coef(1, p == 0 ? 9 : p - 1);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Vec v(L->dim(), L->coeff().zero());
    for (auto b : l2) v[b] = L->coeff().from_int(attempt == 0 ? 1 : coef(rng));
    LieElement x(L, v);
    const Matrix ad = ad_matrix(x);
    Matrix block(l2.size(), l0.size(), p);
    for (std::size_t i = 0; i < l2.size(); ++i)
      for (std::size_t j = 0; j < l0.size(); ++j) block(i, j) = ad(l2[i], l0[j]);
    if (rank(block) == l2.size()) {
      if (attempts) *attempts = attempt + 1;
      return x;
    }
  }
  throw std::domain_error("richardson_representative: no dense element of g(2) after 32 attempts for " + L->id() +
                          " (characteristic not very good for this isogeny?)");
}

std::vector<std::vector<std::size_t>> levi_classes(const RootDatum& d) {
  const std::size_t r = d.rank();
  std::vector<std::size_t> simple(r);
  for (std::size_t i = 0; i < r; ++i) simple[i] = i;
  const auto W = weyl_group_elements(d);
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> standard;  // root set -> J
  for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
    auto J = bits_to_subset(mask, simple);
    standard[levi_root_set(d, J)] = J;
  }
  std::set<std::vector<std::size_t>> canon;
  for (const auto& [roots, J] : standard) {
    std::vector<std::size_t> best = J;
    for (const auto& w : W) {
      std::vector<std::size_t> img;
      for (auto k : roots) img.push_back(w.root_perm[k]);
      std::sort(img.begin(), img.end());
      auto it = standard.find(img);
      if (it != standard.end() && it->second < best) best = it->second;
    }
    canon.insert(best);
  }
  std::vector<std::vector<std::size_t>> out(canon.begin(), canon.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

std::string levi_label(const RootDatum& d, const std::vector<std::size_t>& levi) {
  if (levi.empty()) return "0";
  const IntMatrix& A = d.cartan();
  std::vector<bool> seen(d.rank(), false);
  std::vector<std::string> parts;
  for (auto start : levi) {
    if (seen[start]) continue;
    std::vector<std::size_t> comp, stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      auto i = stack.back();
      stack.pop_back();
      comp.push_back(i);
      for (auto j : levi)
        if (!seen[j] && A[i][j] != 0) {
          seen[j] = true;
          stack.push_back(j);
        }
    }
    std::sort(comp.begin(), comp.end());
    const std::size_t k = comp.size();
    std::map<std::size_t, int> deg;
    int maxbond = 1;
    std::pair<std::size_t, std::size_t> multi{0, 0};
    for (auto i : comp)
      for (auto j : comp)
        if (i < j && A[i][j] != 0) {
          ++deg[i];
          ++deg[j];
          const int m = static_cast<int>(A[i][j] * A[j][i]);
          if (m > maxbond) {
            maxbond = m;
            multi = {i, j};
          }
        }
    const CartanComponent amb = d.components()[d.component_of_simple(comp[0])];
    std::string lab;
    if (maxbond == 3) {
      lab = "G2";
    } else if (maxbond == 2) {
      if (k == 2) {
        lab = amb.type == 'C' ? "C2" : "B2";
      } else if (deg[multi.first] == 2 && deg[multi.second] == 2) {
        lab = "F4";
      } else {
        const std::size_t leaf = deg[multi.first] == 1 ? multi.first : multi.second;
        const std::size_t other = leaf == multi.first ? multi.second : multi.first;
        lab = std::string(1, d.length2(leaf) < d.length2(other) ? 'B' : 'C') + std::to_string(k);
      }
    } else {
      std::optional<std::size_t> branch;
      for (auto i : comp)
        if (deg[i] == 3) branch = i;
      if (!branch) {
        lab = "A" + std::to_string(k);
      } else {
        std::vector<int> arms;
        for (auto n0 : comp) {
          if (n0 == *branch || A[*branch][n0] == 0) continue;
          int len = 0;
          std::size_t prev = *branch, cur = n0;
          for (bool more = true; more;) {
            ++len;
            more = false;
            for (auto nx : comp)
              if (nx != prev && nx != cur && A[cur][nx] != 0) {
                prev = cur;
                cur = nx;
                more = true;
                break;
              }
          }
          arms.push_back(len);
        }
        std::sort(arms.begin(), arms.end());
        lab = (arms[1] == 1 ? "D" : "E") + std::to_string(k);
      }
      // Short-root A components in a non-simply-laced group.
      std::int64_t longest = 0;
      for (std::size_t i = 0; i < d.rank(); ++i)
        if (d.component_of_simple(i) == d.component_of_simple(comp[0])) longest = std::max(longest, d.length2(i));
      if (d.length2(comp[0]) < longest) lab = "~" + lab;
    }
    parts.push_back(lab);
  }
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "+" : "") + parts[i];
  return s;
}

std::vector<OrbitDescriptor> enumerate_orbits(const LieAlgebraPtr& L) {
  const RootDatum& d = L->datum();
  const std::uint32_t p = L->characteristic();
  if (!is_good_prime(d, p)) throw std::invalid_argument("enumerate_orbits: " + std::to_string(p) + " is a bad prime for " + d.label());
  if (d.rank() > 4) throw GuardError("enumerate_orbits: rank guard (<= 4) exceeded");
  std::vector<OrbitDescriptor> out;
  for (const auto& J : levi_classes(d)) {
    const auto roots = levi_root_set(d, J);
    for (std::uint32_t mask = 0; mask < (1u << J.size()); ++mask) {
      const auto K = bits_to_subset(mask, J);
      std::size_t zero = 0, two = 0;
      for (auto r : roots) {
        std::int64_t w = 0;
        for (auto j : J)
          if (std::find(K.begin(), K.end(), j) == K.end()) w += 2 * d.root_coeffs(r)[j];
        zero += w == 0;
        two += w == 2;
      }
      if (J.size() + zero != two) continue;  // not a distinguished parabolic of L
      auto phi = even_cocharacter(d, J, K);
      if (!phi) throw std::logic_error("enumerate_orbits: even cocharacter outside X_*(T)");
      OrbitDescriptor o;
      o.levi_simple_subset = J;
      o.distinguished_parabolic_subset = K;
      o.associated_cochar = *phi;
      o.representative = richardson_representative(L, J, K, *phi, &o.representative_attempts);
      const Cocharacter dom = dominant_conjugate(d, *phi);
      for (std::size_t i = 0; i < d.rank(); ++i) o.weighted_dynkin.push_back(d.pairing(i, dom));
      o.centralizer_dim = centralizer(o.representative).size();
      o.orbit_dim = L->dim() - o.centralizer_dim;
      o.label = levi_label(d, J);
      if (!K.empty()) o.label += "(a" + std::to_string(K.size()) + ")";
      std::vector<std::size_t> all(d.num_roots());
      for (std::size_t r = 0; r < all.size(); ++r) all[r] = r;
      o.distinguished = J.size() == d.rank() && is_distinguished(o.representative, all, *phi);
      out.push_back(std::move(o));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const OrbitDescriptor& a, const OrbitDescriptor& b) {
    if (a.orbit_dim != b.orbit_dim) return a.orbit_dim < b.orbit_dim;
    return a.label < b.label;
  });
  return out;
}

nlohmann::json OrbitDescriptor::to_json() const {
  nlohmann::json j;
  j["bala_carter_label"] = label;
  j["levi_simple_subset"] = levi_simple_subset;
  j["distinguished_parabolic_subset"] = distinguished_parabolic_subset;
  j["weighted_dynkin"] = weighted_dynkin;
  j["associated_cochar"] = associated_cochar.coords;
  j["orbit_dim"] = orbit_dim;
  j["centralizer_dim"] = centralizer_dim;
  j["distinguished"] = distinguished;
  j["adjoint_lattice"] = adjoint_lattice;
  j["representative"] = representative.to_json();
  return j;
}

}  // namespace nilorb

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "nilorb/chevalley.hpp"
#include "nilorb/errors.hpp"
#include "nilorb/rootdata.hpp"

namespace nilorb {

// Minimal phi-weight carried by a nonzero component of X. Throws on X = 0.
std::int64_t mu(const LieElement& x, const Cocharacter& phi);

struct ParabolicRoots {
  std::vector<std::size_t> p_roots, levi_roots, u_roots;
};
ParabolicRoots instability_parabolic(const RootDatum& d, const Cocharacter& phi);

struct OptimalityReport {
  LieElement target;
  mpq_class best_ratio_sq = 0;     // max of mu^2 / |phi|^2 over the ball, 0 if no phi has mu >= 1
  std::vector<Cocharacter> argmax;  // primitive, sorted
  mpq_class bound_used = 0;
  std::uint64_t points_scanned = 0;

  nlohmann::json to_json() const;
};

struct SearchOptions {
  int threads = 0;                  // 0: OpenMP default
  bool allow_non_nilpotent = false;  // torus-level semistability scans
};

// Exhaustive scan of primitive phi with |phi|^2 <= bound and mu(X, phi) >= 1.
OptimalityReport optimal_search(const LieElement& x, const NormForm& norm, const mpq_class& bound,
                                const SearchOptions& opts = {});
// Single-threaded reference implementation of the same scan.
OptimalityReport optimal_search_serial(const LieElement& x, const NormForm& norm, const mpq_class& bound,
                                       const SearchOptions& opts = {});

// Calls f on every integral point of {phi : |phi|^2 <= bound}. Serial.
void for_each_lattice_point(const NormForm& norm, const mpq_class& bound,
                            const std::function<void(const IntVec&)>& f);

// Lie-level distinguished test for X inside the Levi with root set
// `levi_roots`, on its derived part: no odd weights and
// rank + #{weight 0 roots} = #{weight 2 roots}.
bool is_distinguished(const LieElement& x, const std::vector<std::size_t>& levi_roots, const Cocharacter& phi);
// Root indices of the standard Levi spanned by a subset of simple roots.
std::vector<std::size_t> levi_root_set(const RootDatum& d, const std::vector<std::size_t>& simple_subset);

bool verify_associated(const LieElement& x, const Cocharacter& phi);

struct OrbitDescriptor {
  std::vector<std::size_t> levi_simple_subset;
  std::vector<std::size_t> distinguished_parabolic_subset;
  std::vector<std::int64_t> weighted_dynkin;
  LieElement representative;
  Cocharacter associated_cochar;
  std::size_t orbit_dim = 0;
  std::size_t centralizer_dim = 0;
  std::string label;
  bool distinguished = false;
  bool adjoint_lattice = false;
  int representative_attempts = 0;

  nlohmann::json to_json() const;
};

// Even cocharacter in the coroot span of `levi` with pairing 0 on `parabolic`
// and 2 on the remaining simple roots of the Levi.
std::optional<Cocharacter> even_cocharacter(const RootDatum& d, const std::vector<std::size_t>& levi,
                                            const std::vector<std::size_t>& parabolic);

// X in l(2; phi) with ad X : l(0) -> l(2) surjective; all-ones first, then
// seeded pseudorandom coefficients, at most 32 attempts.
LieElement richardson_representative(const LieAlgebraPtr& L, const std::vector<std::size_t>& levi,
                                     const std::vector<std::size_t>& parabolic, const Cocharacter& phi,
                                     int* attempts = nullptr);

// Levi subsets up to W-conjugacy (lexicographically least standard form).
std::vector<std::vector<std::size_t>> levi_classes(const RootDatum& d);
std::string levi_label(const RootDatum& d, const std::vector<std::size_t>& levi);

// Nilpotent orbits by Bala-Carter; sorted by orbit dimension, then label.
std::vector<OrbitDescriptor> enumerate_orbits(const LieAlgebraPtr& L);

struct AssocReport {
  bool pass = false;
  bool phi_in_argmax = false;
  std::vector<Cocharacter> bad_weight;  // argmax members with X in g(m), m not in {1,2}
  std::vector<Cocharacter> associated_in_ball;
  OptimalityReport search;
  std::string failure;

  nlohmann::json to_json() const;
};
// Runs the bounded optimal search and checks phi against it; the bound
// defaults to 9 |phi|^2.
AssocReport theorem_assoc_check(const LieElement& x, const Cocharacter& phi, const NormForm& norm,
                                std::optional<mpq_class> bound = std::nullopt, const SearchOptions& opts = {});

// For every U-root generator x_beta(t), t in F_q, and every basis vector of
// g(i; phi), i >= 1: Ad(u)X - X lies in weights > i.
bool parabolic_homog_check(const LieAlgebraPtr& L, const Cocharacter& phi);

}  // namespace nilorb

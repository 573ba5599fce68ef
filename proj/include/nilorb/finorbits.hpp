#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nilorb/chevalley.hpp"
#include "nilorb/errors.hpp"
#include "nilorb/rootdata.hpp"

namespace nilorb {

using FpVec = std::vector<std::uint32_t>;

// Square matrix over F_p with entries in [0, p).
struct FpMatrix {
  std::uint32_t n = 0, p = 0;
  FpVec a;

  static FpMatrix identity(std::uint32_t n, std::uint32_t p);
  static FpMatrix from(const Matrix& m, std::uint32_t p);
  std::uint32_t& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  FpMatrix operator*(const FpMatrix& o) const;
  FpVec apply(const FpVec& v) const;
  bool is_identity() const;
  bool is_zero() const;
  std::optional<FpMatrix> inverse() const;
  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;
};

struct FpMatrixHash {
  std::size_t operator()(const FpMatrix& m) const;
};

enum class Realization { Defining, Adjoint };
// Defining when the algebra carries one, otherwise adjoint.
Realization default_realization(const LieAlgebra& L);

struct GroupElement {
  FpMatrix matrix;  // defining matrix, or Ad(g) on the Chevalley basis
  Realization realization = Realization::Adjoint;
  std::string provenance;  // "x_3(2)", "phi(2)"
};

GroupElement root_group_element(const LieAlgebra& L, std::size_t root, std::uint32_t t,
                                 Realization r = Realization::Adjoint);
GroupElement torus_element(const LieAlgebra& L, const Cocharacter& phi, std::uint32_t s,
                           Realization r = Realization::Adjoint);
// Ad(g) on the Chevalley basis.
FpMatrix adjoint_matrix(const LieAlgebra& L, const GroupElement& g);
// Ad(g) transports the bracket table: [Ad g b_i, Ad g b_j] = Ad g [b_i, b_j].
bool is_automorphism(const LieAlgebra& L, const FpMatrix& ad);

// Coordinates over F_p of an element of the algebra and back.
FpVec to_fp(const LieElement& x);
LieElement from_fp(const LieAlgebraPtr& L, const FpVec& v);

// |G(F_q)| from the degrees of the Weyl group, for split semisimple groups and
// GL_n; nullopt otherwise.
std::optional<std::uint64_t> chevalley_group_order(const RootDatum& d, std::uint32_t q);
// Order of the centre Z(F_q), by counting torus points killed by every root.
std::uint64_t centre_order(const RootDatum& d, std::uint32_t q);

// The group generated by T(F_p) and the root subgroups, enumerated once and
// cached per algebra and realization.
class FiniteGroup {
 public:
  static std::shared_ptr<const FiniteGroup> of(const LieAlgebraPtr& L, Realization r,
                                               std::size_t limit = 200000);
  Realization realization() const { return realization_; }
  const std::vector<FpMatrix>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<GroupElement>& generators() const { return generators_; }

 private:
  Realization realization_ = Realization::Adjoint;
  std::vector<GroupElement> generators_;
  std::vector<FpMatrix> elements_;
};

struct FinOptions {
  int threads = 0;
  Realization realization = Realization::Defining;  // falls back to adjoint when unavailable
};

struct UOrbitReport {
  bool pass = false;
  std::uint64_t orbit_size = 0, expected_size = 0;
  std::size_t dim_u = 0, dim_v = 0;
  Realization realization = Realization::Adjoint;
  std::string failure;
  nlohmann::json to_json() const;
};
// Enumerates Ad(U(F_p))X for U the unipotent radical of P(phi) and compares
// with X + sum_{i >= 3} g(i; phi). Guard: p^{dim u} <= 10^7.
UOrbitReport u_orbit_check(const LieElement& x, const Cocharacter& phi, const FinOptions& opts = {});
UOrbitReport u_orbit_check_serial(const LieElement& x, const Cocharacter& phi, const FinOptions& opts = {});

struct LeviCheckReport {
  bool pass = false;
  std::uint64_t group_order = 0, centralizer_order = 0, c_phi_order = 0, r_order = 0, u_order = 0;
  std::string failure;
  nlohmann::json to_json() const;
};
// C = C_g(X) in G(F_p) factors exactly as C_phi . R with R = C cap U.
LeviCheckReport centralizer_levi_check(const LieElement& x, const Cocharacter& phi, const FinOptions& opts = {});

struct RationalOrbit {
  LieElement representative;
  std::uint64_t size = 0, stabilizer_order = 0;
  std::optional<std::size_t> geometric_index;  // into enumerate_orbits(L)
  std::vector<std::int64_t> weighted_dynkin;
};

struct OrbitPartition {
  std::string type;
  std::uint32_t q = 0;
  std::uint64_t group_order = 0, nilpotent_count = 0;
  std::vector<RationalOrbit> orbits;
  bool consistent = false;  // sizes sum, orbit-stabilizer, geometric matching
  std::string failure;
  nlohmann::json to_json() const;
};

// Number of nilpotent elements of g(F_p), by a direct scan. Guard p^{dim g} <= 10^6.
std::uint64_t nilpotent_cone_size(const LieAlgebraPtr& L, int threads = 0);
std::uint64_t nilpotent_cone_size_serial(const LieAlgebraPtr& L);

// Ad(G(F_p))-orbits on the nilpotent set, by breadth-first closure under
// the generators.
OrbitPartition count_rational_nilpotent_orbits(const LieAlgebraPtr& L, const FinOptions& opts = {});

struct LambdaReport {
  bool pass = false;
  bool identity_to_zero = false;
  std::size_t unipotent_samples = 0, non_nilpotent = 0;
  std::size_t equivariance_pairs = 0, equivariance_failures = 0;
  std::size_t cross_checks = 0, cross_check_failures = 0;  // against lambda_map
  std::uint64_t u_size = 0, u_distinct_images = 0;           // 0 when not enumerated
  std::string failure;
  nlohmann::json to_json() const;
};
// Checks on the Bardsley-Richardson map in the defining realization:
// Lambda(1) = 0, Lambda(u) nilpotent on sampled unipotent elements, exact
// G-equivariance on sampled pairs, and injectivity on U_Borel(F_p) when
// p^{#positive roots} <= 10^5 and enumerate_u is set.
LambdaReport lambda_check(const LieAlgebraPtr& L, std::size_t unipotent_samples, std::size_t pairs,
                          std::uint64_t seed, bool enumerate_u = true, int threads = 0);

}  // namespace nilorb

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nilorb/linalg.hpp"

namespace nilorb {

using IntVec = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVec>;

enum class Isogeny { SimplyConnected, Adjoint, General };

std::string to_string(Isogeny f);
Isogeny parse_isogeny(const std::string& s);

struct CartanComponent {
  char type = 'A';
  int rank = 1;
  friend bool operator==(const CartanComponent&, const CartanComponent&) = default;
};

// Parses "C2", "G2", "A1xA2" (components joined by 'x').
std::vector<CartanComponent> parse_cartan_type(const std::string& s);
IntMatrix cartan_matrix(const CartanComponent& c);

// A cocharacter of the fixed maximal torus: integer coordinates in the
// X_*(T) basis. Pairing with characters is the dot product.
struct Cocharacter {
  IntVec coords;

  bool is_zero() const;
  bool is_primitive() const;  // gcd of the coordinates is 1
  Cocharacter primitive_part() const;
  Cocharacter scaled(std::int64_t n) const;
  friend bool operator==(const Cocharacter&, const Cocharacter&) = default;
  friend auto operator<=>(const Cocharacter&, const Cocharacter&) = default;
};

std::int64_t dot(const IntVec& a, const IntVec& b);
std::int64_t gcd_of(const IntVec& v);

// Root datum of a split reductive group: roots in character coordinates,
// coroots in cocharacter coordinates, the two lattices in dual bases.
//
// Simple roots follow Bourbaki numbering and
//   cartan()[i][j] = <alpha_i, alpha_j^vee>,
// so C2 has cartan [[2,-1],[-2,2]] with alpha_1 short.
//
// Roots are stored positive first (ordered by height, then by simple-root
// coefficients) followed by their negatives in the same order.
class RootDatum {
 public:
  // rank is the total semisimple rank and must match the parsed type.
  static RootDatum build(const std::string& cartan_type, Isogeny flavor = Isogeny::SimplyConnected,
                         int central_rank = 0);
  // GL_n: cocharacters Z^n, roots e_i - e_j.
  static RootDatum general_linear(int n);

  const std::vector<CartanComponent>& components() const { return components_; }
  std::string label() const;  // "C2", "A1xA2", "GL3"
  Isogeny isogeny() const { return flavor_; }
  std::size_t rank() const { return cartan_.size(); }  // semisimple rank
  std::size_t central_rank() const { return central_rank_; }
  std::size_t lattice_rank() const { return lattice_rank_; }
  const IntMatrix& cartan() const { return cartan_; }

  std::size_t num_roots() const { return roots_.size(); }
  std::size_t num_positive() const { return roots_.size() / 2; }
  const IntVec& root(std::size_t i) const { return roots_[i]; }
  const IntVec& coroot(std::size_t i) const { return coroots_[i]; }
  const IntVec& root_coeffs(std::size_t i) const { return coeffs_[i]; }  // in simple roots
  const std::vector<IntVec>& roots() const { return roots_; }
  const std::vector<IntVec>& coroots() const { return coroots_; }
  std::size_t simple_index(std::size_t i) const { return i; }  // simple roots come first
  std::size_t negative(std::size_t i) const;
  bool is_positive(std::size_t i) const { return i < num_positive(); }
  std::int64_t height(std::size_t i) const;
  std::optional<std::size_t> find_root(const IntVec& simple_coeffs) const;
  // Index of alpha_i + alpha_j if it is a root.
  std::optional<std::size_t> sum(std::size_t i, std::size_t j) const;
  // (alpha_i, alpha_i) normalised so the shortest roots in each component have 2.
  std::int64_t length2(std::size_t i) const { return length2_[i]; }
  // Twice the W-invariant inner product of two roots in that normalisation.
  std::int64_t inner2(std::size_t i, std::size_t j) const;
  std::int64_t pairing(std::size_t root_index, const Cocharacter& phi) const;
  std::int64_t pairing(std::size_t root_index, std::size_t coroot_index) const;
  // Component index of each simple root.
  std::size_t component_of_simple(std::size_t i) const { return simple_component_[i]; }

  // Cocharacter basis vectors spanning the centre directions (empty when
  // semisimple). For GL_n this is (1,...,1).
  std::vector<IntVec> central_cocharacters() const;

  nlohmann::json to_json() const;

 private:
  void generate_roots(const IntMatrix& simple_roots, const IntMatrix& simple_coroots);

  std::vector<CartanComponent> components_;
  Isogeny flavor_ = Isogeny::SimplyConnected;
  std::size_t central_rank_ = 0;
  std::size_t lattice_rank_ = 0;
  IntMatrix cartan_;
  std::vector<IntVec> roots_, coroots_, coeffs_;
  std::vector<std::int64_t> length2_;
  std::vector<std::int64_t> simple_length2_;
  std::vector<std::size_t> simple_component_;
};

bool is_good_prime(const RootDatum& d, std::uint32_t p);
bool is_very_good_prime(const RootDatum& d, std::uint32_t p);

// W-invariant positive-definite form on X_*(T) (x) Q.
struct NormForm {
  Matrix gram;  // rational, symmetric

  Scalar value(const IntVec& phi, const IntVec& psi) const;
  Scalar norm2(const IntVec& phi) const { return value(phi, phi); }
  bool is_positive_definite() const { return leading_minors_positive(gram); }
  // Integer matrix scaled by the common denominator of the entries.
  std::pair<IntMatrix, std::int64_t> integral_gram() const;
};

// Root-sum form: gram(phi, psi) = sum over roots <a,phi><a,psi>, plus the
// identity on the central directions.
NormForm default_norm(const RootDatum& d);
// Form pulled back along a lattice map (columns = images of basis vectors).
NormForm pullback_norm(const NormForm& n, const IntMatrix& embedding_columns);
bool norms_agree(const NormForm& a, const NormForm& b);

struct WeylElement {
  IntMatrix cochar;                 // action on X_*(T)
  std::vector<std::size_t> root_perm;  // w(alpha_i) = alpha_{root_perm[i]}
};

// Simple reflection s_i as a Weyl element.
WeylElement simple_reflection(const RootDatum& d, std::size_t i);
// Every element of W, deduplicated; requires semisimple rank <= 6.
std::vector<WeylElement> weyl_group_elements(const RootDatum& d);
IntVec apply_matrix(const IntMatrix& m, const IntVec& v);
// Dominant Weyl conjugate of a cocharacter (all simple pairings >= 0).
Cocharacter dominant_conjugate(const RootDatum& d, const Cocharacter& phi);

}  // namespace nilorb

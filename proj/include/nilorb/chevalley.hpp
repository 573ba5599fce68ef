#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nilorb/linalg.hpp"
#include "nilorb/rootdata.hpp"

namespace nilorb {

class LieAlgebra;
using LieAlgebraPtr = std::shared_ptr<const LieAlgebra>;

// Sparse integral bracket of two basis vectors: sum of coeff * b_index.
using SparseInt = std::vector<std::pair<std::size_t, std::int64_t>>;

// Lie(G) for the split group of a root datum, in a Chevalley basis.
//
// Basis: h_0..h_{n-1} (the X_*(T) basis, so Lie(T) = X_*(T) (x) k), then one
// e_alpha per root in the datum's root order. Brackets:
//   [h, e_alpha]          = <alpha, h> e_alpha
//   [e_alpha, e_-alpha]   = alpha^vee
//   [e_alpha, e_beta]     = N_{alpha,beta} e_{alpha+beta}
// with N fixed by extraspecial pairs (N = +(r+1) on each extraspecial pair).
class LieAlgebra : public std::enable_shared_from_this<LieAlgebra> {
 public:
  static LieAlgebraPtr build(const RootDatum& datum, CoeffField coeff);

  const RootDatum& datum() const { return datum_; }
  const CoeffField& coeff() const { return coeff_; }
  std::uint32_t characteristic() const { return coeff_.characteristic(); }
  std::size_t dim() const { return cartan_dim_ + datum_.num_roots(); }
  std::size_t cartan_dim() const { return cartan_dim_; }
  std::size_t root_basis(std::size_t root) const { return cartan_dim_ + root; }
  // Root index of a basis vector, or nullopt for the Cartan part.
  std::optional<std::size_t> basis_root(std::size_t b) const;
  std::string id() const;  // e.g. "C2.sc/F3"

  // N_{alpha,beta}; 0 when alpha + beta is not a root.
  std::int64_t structure_constant(std::size_t a, std::size_t b) const;
  const SparseInt& basis_bracket(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  // Exhaustive Jacobi identity check on basis triples.
  bool check_jacobi() const;

  // Defining matrix realization (types A-D simply connected, and GL_n).
  bool has_realization() const { return !realization_.empty(); }
  std::size_t realization_dim() const;
  // Image of b_i over Z.
  const Matrix& realization_int(std::size_t i) const { return realization_[i]; }
  // Image of b_i over the coefficient field.
  const Matrix& realization(std::size_t i) const { return realization_mod_[i]; }

  // (ad e_alpha)^k / k! over Z, for k = 0, 1, ... while nonzero.
  std::vector<Matrix> divided_ad_powers(std::size_t root) const;
  // E_alpha^k / k! in the defining realization over Z.
  std::vector<Matrix> divided_matrix_powers(std::size_t root) const;

 private:
  LieAlgebra(const RootDatum& d, CoeffField c) : datum_(d), coeff_(c) {}
  void compute_structure_constants();
  void fill_table();
  void build_realization();

  RootDatum datum_;
  CoeffField coeff_;
  std::size_t cartan_dim_ = 0;
  std::vector<std::int64_t> n_;  // num_roots^2
  std::vector<SparseInt> table_;
  std::vector<Matrix> realization_, realization_mod_;
};

class LieElement {
 public:
  LieElement() = default;
  LieElement(LieAlgebraPtr parent, Vec coords);
  static LieElement zero(LieAlgebraPtr parent);
  static LieElement basis(LieAlgebraPtr parent, std::size_t i);

  const LieAlgebraPtr& parent() const { return parent_; }
  const Vec& coords() const { return coords_; }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  bool is_zero() const;
  // Indices with nonzero coordinate.
  std::vector<std::size_t> support() const;

  LieElement operator+(const LieElement& o) const;
  LieElement operator-(const LieElement& o) const;
  LieElement scaled(const Scalar& s) const;
  friend bool operator==(const LieElement& a, const LieElement& b);

  nlohmann::json to_json() const;
  static LieElement from_json(LieAlgebraPtr parent, const nlohmann::json& j);

 private:
  LieAlgebraPtr parent_;
  Vec coords_;
};

LieElement bracket(const LieElement& x, const LieElement& y);
// Column j holds the coordinates of [x, b_j].
Matrix ad_matrix(const LieElement& x);
bool is_nilpotent(const LieElement& x);
std::vector<LieElement> centralizer(const LieElement& x);

// Weight decomposition g = sum_i g(i; phi); slices hold basis indices.
struct Grading {
  Cocharacter cochar;
  std::map<std::int64_t, std::vector<std::size_t>> slices;

  std::size_t dim(std::int64_t i) const;
  std::int64_t weight_of(std::size_t basis_index) const;
  std::vector<std::size_t> sum_of(std::int64_t lo) const;  // basis of sum_{i >= lo} g(i)
};
Grading grading(const LieAlgebra& L, const Cocharacter& phi);
// Weight of X if X is homogeneous for phi.
std::optional<std::int64_t> homogeneous_weight(const LieElement& x, const Cocharacter& phi);

// Symmetric invariant form as a Gram matrix over the coefficient field.
struct InvariantForm {
  Matrix gram;
  bool from_trace = false;  // trace form of the defining realization
};
InvariantForm invariant_form(const LieAlgebra& L);
bool is_nondegenerate(const InvariantForm& f);
bool is_ad_invariant(const LieAlgebra& L, const InvariantForm& f);

Matrix realize(const LieElement& x);
std::optional<LieElement> from_matrix(const LieAlgebraPtr& L, const Matrix& m);

struct JordanParts {
  LieElement s, n;
};
// Additive Jordan decomposition through the defining realization.
JordanParts jordan_decompose(const LieElement& x);

// Bardsley-Richardson map on a matrix of the defining realization.
LieElement lambda_map(const Matrix& g, const LieAlgebraPtr& L);

// Ad(x_alpha(t)) on g, from divided powers of ad e_alpha.
Matrix root_element_ad(const LieAlgebra& L, std::size_t root, const Scalar& t);
// x_alpha(t) in the defining realization.
Matrix root_element_matrix(const LieAlgebra& L, std::size_t root, const Scalar& t);

// Reduce an integral matrix over Q into characteristic p.
Matrix reduce_mod(const Matrix& m, std::uint32_t p);

}  // namespace nilorb

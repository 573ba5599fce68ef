#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nilorb/chevalley.hpp"
#include "nilorb/poly.hpp"

using namespace nilorb;

namespace {

LieAlgebraPtr alg(const std::string& t, std::uint32_t p, Isogeny f = Isogeny::SimplyConnected) {
  return LieAlgebra::build(RootDatum::build(t, f), CoeffField(p));
}

LieElement random_element(const LieAlgebraPtr& L, std::mt19937_64& rng, int lo = -2, int hi = 2) {
  std::uniform_int_distribution<int> d(lo, hi);
  Vec v;
  for (std::size_t i = 0; i < L->dim(); ++i) v.push_back(L->coeff().from_int(d(rng)));
  return LieElement(L, v);
}

LieElement e(const LieAlgebraPtr& L, std::size_t root) { return LieElement::basis(L, L->root_basis(root)); }

}  // namespace

TEST_CASE("sl2 over Q") {
  auto L = alg("A1", 0);
  CHECK(L->dim() == 3);
  auto h = LieElement::basis(L, 0), x = e(L, 0), y = e(L, 1);
  CHECK(bracket(x, y) == h);
  CHECK(bracket(h, x) == x.scaled(Scalar(2)));
  CHECK(bracket(h, y) == y.scaled(Scalar(-2)));
  CHECK(bracket(x, x).is_zero());
  CHECK(ad_matrix(x).apply(y.coords()) == h.coords());
}

TEST_CASE("dimensions") {
  CHECK(alg("C2", 3)->dim() == 10);
  CHECK(alg("G2", 7)->dim() == 14);
  CHECK(LieAlgebra::build(RootDatum::general_linear(3), CoeffField(5))->dim() == 9);
  CHECK(LieAlgebra::build(RootDatum::build("A1", Isogeny::SimplyConnected, 2), CoeffField(0))->dim() == 5);
}

TEST_CASE("Jacobi identity on all basis triples") {
  for (auto t : {"A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4", "A1xG2"}) {
    CHECK_MESSAGE(alg(t, 0)->check_jacobi(), t);
    CHECK_MESSAGE(alg(t, 0, Isogeny::Adjoint)->check_jacobi(), t);
  }
  CHECK(alg("G2", 7)->check_jacobi());
  CHECK(LieAlgebra::build(RootDatum::general_linear(3), CoeffField(0))->check_jacobi());
}

TEST_CASE("|N| = r + 1 for every summable pair") {
  for (auto t : {"B3", "C3", "G2", "F4", "D4", "E6"}) {
    auto L = alg(t, 0);
    const auto& d = L->datum();
    for (std::size_t a = 0; a < d.num_roots(); ++a)
      for (std::size_t b = 0; b < d.num_roots(); ++b) {
        if (!d.sum(a, b)) {
          CHECK(L->structure_constant(a, b) == 0);
          continue;
        }
        std::int64_t r = 0;
        for (auto cur = d.sum(b, d.negative(a)); cur; cur = d.sum(*cur, d.negative(a))) ++r;
        CHECK(std::abs(L->structure_constant(a, b)) == r + 1);
      }
  }
}

TEST_CASE("sp4 structure constants by hand") {
  // Roots: a1 (short), a2 (long), a1+a2, 2a1+a2. Extraspecial pairs
  // (a1, a2) with r = 0 and (a1, a1+a2) with r = 1.
  auto L = alg("C2", 0);
  CHECK(L->structure_constant(0, 1) == 1);
  CHECK(L->structure_constant(1, 0) == -1);
  CHECK(L->structure_constant(0, 2) == 2);
  CHECK(L->structure_constant(1, 2) == 0);
  CHECK(bracket(e(L, 0), e(L, 1)) == e(L, 2));
  // In the defining realization [E1, E2] = E_{03} + E_{12}.
  Matrix m(4, 4);
  m(0, 3) = Scalar(1);
  m(1, 2) = Scalar(1);
  CHECK(realize(e(L, 2)) == m);
}

TEST_CASE("defining realizations are faithful homomorphisms") {
  for (auto t : {"A1", "A3", "B2", "B3", "C2", "C3", "D4"})
    for (std::uint32_t p : {0u, 3u, 5u}) {
      auto L = alg(t, p);
      REQUIRE(L->has_realization());
      std::vector<Vec> flat;
      for (std::size_t i = 0; i < L->dim(); ++i) {
        Vec v;
        const Matrix& m = L->realization(i);
        for (std::size_t a = 0; a < m.rows(); ++a)
          for (std::size_t b = 0; b < m.cols(); ++b) v.push_back(m(a, b));
        flat.push_back(v);
      }
      const std::size_t k = L->realization_dim();
      CHECK(rank(Matrix::from_columns(flat, k * k, p)) == L->dim());
    }
  CHECK_FALSE(alg("G2", 0)->has_realization());
  CHECK_FALSE(alg("C2", 0, Isogeny::Adjoint)->has_realization());
}

TEST_CASE("ad matrix matches bracket") {
  std::mt19937_64 rng(7);
  for (auto t : {"A2", "C2", "G2"})
    for (std::uint32_t p : {0u, 7u}) {
      auto L = alg(t, p);
      for (int k = 0; k < 20; ++k) {
        auto x = random_element(L, rng), y = random_element(L, rng);
        CHECK(ad_matrix(x).apply(y.coords()) == bracket(x, y).coords());
        CHECK(bracket(x, y) == bracket(y, x).scaled(Scalar(-1)));
      }
    }
}

TEST_CASE("nilpotency and centralizers") {
  auto L = alg("A1", 0);
  CHECK(is_nilpotent(e(L, 0)));
  CHECK(centralizer(e(L, 0)).size() == 1);
  auto h = LieElement::basis(L, 0);
  CHECK_FALSE(is_nilpotent(h));
  CHECK(centralizer(h).size() == 1);
  auto S = alg("C2", 0);
  auto reg = e(S, 0) + e(S, 1);
  CHECK(is_nilpotent(reg));
  CHECK(centralizer(reg).size() == 2);  // rank of sp4
  auto G = alg("G2", 7);
  CHECK(is_nilpotent(e(G, 0) + e(G, 1)));
  CHECK(centralizer(e(G, 0) + e(G, 1)).size() == 2);
  CHECK_FALSE(is_nilpotent(LieElement::basis(G, 0)));
  auto gl = LieAlgebra::build(RootDatum::general_linear(2), CoeffField(0));
  // The identity is ad-nilpotent but not nilpotent.
  CHECK_FALSE(is_nilpotent(LieElement::basis(gl, 0) + LieElement::basis(gl, 1)));
}

TEST_CASE("gradings") {
  auto L = alg("A1", 0);
  auto g = grading(*L, Cocharacter{{1}});
  CHECK(g.dim(-2) == 1);
  CHECK(g.dim(0) == 1);
  CHECK(g.dim(2) == 1);
  auto z = grading(*L, Cocharacter{{0}});
  CHECK(z.slices.size() == 1);
  CHECK(z.dim(0) == 3);
  // sp4 with phi = 2 rho^vee = (3, 4): simple roots weight 2, a1+a2 weight 4, 2a1+a2 weight 6.
  auto S = alg("C2", 0);
  auto gs = grading(*S, Cocharacter{{3, 4}});
  CHECK(gs.dim(0) == 2);
  CHECK(gs.dim(2) == 2);
  CHECK(gs.dim(-2) == 2);
  CHECK(gs.dim(4) == 1);
  CHECK(gs.dim(6) == 1);
  CHECK(gs.dim(-6) == 1);
  CHECK(gs.sum_of(3).size() == 2);
}

TEST_CASE("grading conservation and bracket compatibility") {
  std::mt19937_64 rng(11);
  for (auto t : {"A2", "C2", "G2", "B3"}) {
    auto L = alg(t, 0);
    for (int k = 0; k < 10; ++k) {
      Cocharacter phi;
      std::uniform_int_distribution<int> d(-3, 3);
      for (std::size_t i = 0; i < L->datum().lattice_rank(); ++i) phi.coords.push_back(d(rng));
      auto g = grading(*L, phi);
      std::size_t total = 0;
      for (auto& [w, idx] : g.slices) total += idx.size();
      CHECK(total == L->dim());
      for (std::size_t i = 0; i < L->dim(); ++i)
        for (std::size_t j = 0; j < L->dim(); ++j)
          for (auto [m, v] : L->basis_bracket(i, j)) CHECK(g.weight_of(m) == g.weight_of(i) + g.weight_of(j));
    }
  }
}

TEST_CASE("invariant forms") {
  for (std::uint32_t p : {2u, 3u, 5u, 0u}) {
    auto gl = LieAlgebra::build(RootDatum::general_linear(3), CoeffField(p));
    auto f = invariant_form(*gl);
    CHECK(f.from_trace);
    CHECK(is_nondegenerate(f));
  }
  // Centre of sl_3 in characteristic 3 lies in the radical.
  CHECK_FALSE(is_nondegenerate(invariant_form(*alg("A2", 3))));
  CHECK_FALSE(is_nondegenerate(invariant_form(*alg("A1", 2))));
  CHECK(is_nondegenerate(invariant_form(*alg("C2", 3))));
  CHECK(is_nondegenerate(invariant_form(*alg("G2", 7))));
  CHECK(is_nondegenerate(invariant_form(*alg("B3", 5, Isogeny::Adjoint))));
  for (auto t : {"A2", "C2", "B2", "G2", "D4"})
    for (auto fl : {Isogeny::SimplyConnected, Isogeny::Adjoint}) {
      auto L = alg(t, 0, fl);
      auto f = invariant_form(*L);
      CHECK_MESSAGE(is_ad_invariant(*L, f), t);
      CHECK(f.gram == f.gram.transpose());
    }
}

TEST_CASE("invariant form pairs g(i) with g(-i) only") {
  for (auto t : {"C2", "G2", "A3"}) {
    auto L = alg(t, 0);
    auto f = invariant_form(*L);
    auto g = grading(*L, Cocharacter{IntVec(L->datum().lattice_rank(), 1)});
    for (std::size_t i = 0; i < L->dim(); ++i)
      for (std::size_t j = 0; j < L->dim(); ++j)
        if (g.weight_of(i) + g.weight_of(j) != 0) CHECK(f.gram(i, j).is_zero());
  }
}

TEST_CASE("jordan decomposition examples") {
  auto gl = LieAlgebra::build(RootDatum::general_linear(2), CoeffField(5));
  // x = [[1,1],[0,2]]: distinct eigenvalues, so x is semisimple.
  auto x = *from_matrix(gl, Matrix::from_ints({{1, 1}, {0, 2}}, 5));
  auto jd = jordan_decompose(x);
  CHECK(jd.s == x);
  CHECK(jd.n.is_zero());
  auto glq = LieAlgebra::build(RootDatum::general_linear(2), CoeffField(0));
  auto y = *from_matrix(glq, Matrix::from_ints({{2, 1}, {0, 2}}));
  auto jy = jordan_decompose(y);
  CHECK(realize(jy.s) == Matrix::from_ints({{2, 0}, {0, 2}}));
  CHECK(realize(jy.n) == Matrix::from_ints({{0, 1}, {0, 0}}));
  // p-th root step: (t-1)^2 t over F_2.
  auto gl3 = LieAlgebra::build(RootDatum::general_linear(3), CoeffField(2));
  auto z = *from_matrix(gl3, Matrix::from_ints({{1, 1, 0}, {0, 1, 0}, {0, 0, 0}}, 2));
  auto jz = jordan_decompose(z);
  CHECK(realize(jz.s) == Matrix::from_ints({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}, 2));
  auto S = alg("C2", 0);
  auto nil = e(S, 0) + e(S, 3);
  CHECK(jordan_decompose(nil).s.is_zero());
  auto hh = LieElement::basis(S, 0).scaled(Scalar(3)) + LieElement::basis(S, 1);
  CHECK(jordan_decompose(hh).n.is_zero());
  CHECK_THROWS(jordan_decompose(e(alg("G2", 0), 0)));
}

TEST_CASE("jordan decomposition properties") {
  std::mt19937_64 rng(3);
  std::vector<LieAlgebraPtr> algs{LieAlgebra::build(RootDatum::general_linear(3), CoeffField(3)),
                                  LieAlgebra::build(RootDatum::general_linear(3), CoeffField(2)), alg("C2", 0),
                                  alg("C2", 5), alg("B2", 7), alg("A2", 3)};
  for (const auto& L : algs)
    for (int k = 0; k < 25; ++k) {
      // Sparse elements produce repeated eigenvalues often.
      Vec v(L->dim(), L->coeff().zero());
      std::uniform_int_distribution<std::size_t> pick(0, L->dim() - 1);
      std::uniform_int_distribution<int> val(-2, 2);
      for (int j = 0; j < 3; ++j) v[pick(rng)] = L->coeff().from_int(val(rng));
      LieElement x(L, v);
      auto jd = jordan_decompose(x);
      CHECK(jd.s + jd.n == x);
      CHECK(bracket(jd.s, jd.n).is_zero());
      CHECK(realize(jd.n).pow(L->realization_dim()).is_zero());
      CHECK(is_squarefree(minimal_polynomial(realize(jd.s))));
    }
}

TEST_CASE("lambda map") {
  auto sl2 = alg("A1", 0);
  CHECK(lambda_map(Matrix::identity(2), sl2).is_zero());
  // [[1,1],[0,1]] minus (tr/2) I is [[0,1],[0,0]] = e.
  CHECK(lambda_map(Matrix::from_ints({{1, 1}, {0, 1}}), sl2) == e(sl2, 0));
  auto sp = alg("C2", 5);
  CHECK(lambda_map(Matrix::identity(4, 5), sp).is_zero());
  auto gl = LieAlgebra::build(RootDatum::general_linear(3), CoeffField(5));
  CHECK(lambda_map(Matrix::identity(3, 5), gl).is_zero());
  CHECK_THROWS_AS(lambda_map(Matrix::identity(3, 3), alg("A2", 3)), std::domain_error);
}

TEST_CASE("lambda map equivariance and nilpotent image of unipotents") {
  std::mt19937_64 rng(2024);
  for (auto L : {alg("C2", 5), LieAlgebra::build(RootDatum::general_linear(3), CoeffField(5)), alg("B2", 7)}) {
    const auto& d = L->datum();
    const std::uint32_t p = L->characteristic();
    std::uniform_int_distribution<std::size_t> root(0, d.num_roots() - 1), pos(0, d.num_positive() - 1);
    std::uniform_int_distribution<int> val(0, static_cast<int>(p) - 1);
    auto word = [&](bool positive_only) {
      Matrix g = Matrix::identity(L->realization_dim(), p);
      for (int k = 0; k < 6; ++k)
        g = g * root_element_matrix(*L, positive_only ? pos(rng) : root(rng), L->coeff().from_int(val(rng)));
      return g;
    };
    const int pairs = L->id().rfind("C2", 0) == 0 ? 1000 : 100;
    for (int k = 0; k < pairs; ++k) {
      Matrix h = word(false), g = word(false);
      Matrix hinv = *inverse(h);
      CHECK(realize(lambda_map(h * g * hinv, L)) == h * realize(lambda_map(g, L)) * hinv);
    }
    for (int k = 0; k < 50; ++k) {
      Matrix h = word(false), u = word(true);
      CHECK(is_nilpotent(lambda_map(h * u * *inverse(h), L)));
    }
  }
}

TEST_CASE("root elements act by automorphisms") {
  std::mt19937_64 rng(5);
  for (auto t : {"C2", "G2", "B2"}) {
    auto L = alg(t, 7);
    for (std::size_t r = 0; r < L->datum().num_roots(); ++r) {
      Matrix A = root_element_ad(*L, r, L->coeff().from_int(3));
      auto x = random_element(L, rng), y = random_element(L, rng);
      LieElement ax(L, A.apply(x.coords())), ay(L, A.apply(y.coords()));
      CHECK(LieElement(L, A.apply(bracket(x, y).coords())) == bracket(ax, ay));
      if (L->has_realization()) {
        Matrix u = root_element_matrix(*L, r, L->coeff().from_int(3));
        CHECK(realize(ax) == u * realize(x) * *inverse(u));
      }
    }
  }
  // Divided powers make sense in characteristic 2 and 3.
  auto g3 = alg("G2", 3);
  CHECK(root_element_ad(*g3, 0, Scalar::mod(1, 3)).rows() == 14);
}

TEST_CASE("json round trip") {
  std::mt19937_64 rng(1);
  auto L = alg("C2", 0);
  auto x = random_element(L, rng).scaled(Scalar::fraction(1, 3));
  auto j = x.to_json();
  CHECK(j["algebra_id"] == "C2.sc/Q");
  CHECK(LieElement::from_json(L, j) == x);
  CHECK_THROWS(LieElement::from_json(alg("C2", 3), j));
}

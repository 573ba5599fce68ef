#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "nilorb/rootdata.hpp"

using namespace nilorb;

namespace {

// |W| from the classical formulas.
std::size_t weyl_order(char t, int n) {
  std::size_t f = 1;
  for (int i = 2; i <= n + (t == 'A'); ++i) f *= i;
  switch (t) {
    case 'A': return f;
    case 'B':
    case 'C': return f << n;
    case 'D': return f << (n - 1);
    case 'G': return 12;
    case 'F': return 1152;
    case 'E': return n == 6 ? 51840 : 0;
  }
  return 0;
}

std::size_t root_count(char t, int n) {
  switch (t) {
    case 'A': return n * (n + 1);
    case 'B':
    case 'C': return 2 * n * n;
    case 'D': return 2 * n * (n - 1);
    case 'G': return 12;
    case 'F': return 48;
    case 'E': return n == 6 ? 72 : n == 7 ? 126 : 240;
  }
  return 0;
}

}  // namespace

TEST_CASE("cartan matrices") {
  CHECK(cartan_matrix({'C', 2}) == IntMatrix{{2, -1}, {-2, 2}});
  CHECK(cartan_matrix({'B', 2}) == IntMatrix{{2, -2}, {-1, 2}});
  CHECK(cartan_matrix({'G', 2}) == IntMatrix{{2, -1}, {-3, 2}});
  CHECK(cartan_matrix({'A', 1}) == IntMatrix{{2}});
  auto e6 = cartan_matrix({'E', 6});
  CHECK(e6[1][3] == -1);
  CHECK(e6[0][2] == -1);
  CHECK(e6[1][2] == 0);
  CHECK_THROWS(parse_cartan_type("D3"));
  CHECK_THROWS(parse_cartan_type("Q2"));
}

TEST_CASE("root counts for every type") {
  const char* types[] = {"A1", "A2", "A3", "A5", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "G2", "F4", "E6", "E7", "E8"};
  for (auto t : types) {
    auto c = parse_cartan_type(t)[0];
    for (auto f : {Isogeny::SimplyConnected, Isogeny::Adjoint}) {
      auto d = RootDatum::build(t, f);
      CHECK_MESSAGE(d.num_roots() == root_count(c.type, c.rank), t);
      // <alpha, alpha^vee> = 2 and the Cartan matrix is recovered.
      for (std::size_t i = 0; i < d.num_roots(); ++i) CHECK(d.pairing(i, i) == 2);
      for (std::size_t i = 0; i < d.rank(); ++i)
        for (std::size_t j = 0; j < d.rank(); ++j) CHECK(d.pairing(i, j) == d.cartan()[i][j]);
    }
  }
}

TEST_CASE("C2 roots and lengths") {
  auto d = RootDatum::build("C2");
  REQUIRE(d.num_roots() == 8);
  CHECK(d.length2(0) == 2);  // alpha_1 short
  CHECK(d.length2(1) == 4);
  CHECK(d.root_coeffs(0) == IntVec{1, 0});
  CHECK(d.root_coeffs(1) == IntVec{0, 1});
  CHECK(d.root_coeffs(2) == IntVec{1, 1});
  CHECK(d.root_coeffs(3) == IntVec{2, 1});
  CHECK(d.negative(3) == 7);
  CHECK(d.root_coeffs(7) == IntVec{-2, -1});
  // sc: characters are rows of the Cartan matrix, coroots unit vectors.
  CHECK(d.root(0) == IntVec{2, -1});
  CHECK(d.coroot(1) == IntVec{0, 1});
  // coroot of the long root 2a1+a2 is a1^v + a2^v
  CHECK(d.coroot(3) == IntVec{1, 1});
  CHECK(d.coroot(2) == IntVec{1, 2});
}

TEST_CASE("general linear datum") {
  auto d = RootDatum::general_linear(3);
  CHECK(d.num_roots() == 6);
  CHECK(d.lattice_rank() == 3);
  std::set<IntVec> roots(d.roots().begin(), d.roots().end());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) {
        IntVec e(3, 0);
        e[i] = 1;
        e[j] = -1;
        CHECK(roots.count(e) == 1);
      }
  CHECK(d.central_cocharacters() == std::vector<IntVec>{{1, 1, 1}});
  for (std::size_t i = 0; i < d.num_roots(); ++i) CHECK(d.root(i) == d.coroot(i));
}

TEST_CASE("weyl group orders") {
  for (auto t : {"A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"}) {
    auto c = parse_cartan_type(t)[0];
    auto d = RootDatum::build(t);
    CHECK_MESSAGE(weyl_group_elements(d).size() == weyl_order(c.type, c.rank), t);
  }
  CHECK(weyl_group_elements(RootDatum::build("A1xA2")).size() == 12);
  CHECK_THROWS(weyl_group_elements(RootDatum::build("E7")));
}

TEST_CASE("default norm is W-invariant and positive definite") {
  for (auto t : {"A1", "A2", "C2", "B3", "G2", "A1xA1"}) {
    for (auto f : {Isogeny::SimplyConnected, Isogeny::Adjoint}) {
      auto d = RootDatum::build(t, f, 1);
      auto n = default_norm(d);
      CHECK(n.is_positive_definite());
      for (const auto& w : weyl_group_elements(d)) {
        Matrix m = Matrix::from_ints(w.cochar);
        CHECK(m.transpose() * n.gram * m == n.gram);
      }
    }
  }
  auto g = RootDatum::general_linear(3);
  auto ng = default_norm(g);
  CHECK(ng.is_positive_definite());
  for (const auto& w : weyl_group_elements(g)) {
    Matrix m = Matrix::from_ints(w.cochar);
    CHECK(m.transpose() * ng.gram * m == ng.gram);
  }
}

TEST_CASE("A1 norm values") {
  auto sc = RootDatum::build("A1");
  auto ad = RootDatum::build("A1", Isogeny::Adjoint);
  // Roots +-2 on the coroot: 4 + 4.
  CHECK(default_norm(sc).norm2({1}) == Scalar(8));
  // Adjoint: roots +-1 on omega^vee; alpha^vee = 2 omega^vee.
  CHECK(default_norm(ad).norm2({1}) == Scalar(2));
  CHECK(default_norm(ad).norm2({2}) == default_norm(sc).norm2({1}));
  // Pullback along the isogeny X_*(sc) -> X_*(ad), 1 |-> 2.
  CHECK(norms_agree(pullback_norm(default_norm(ad), {{2}}), default_norm(sc)));
}

TEST_CASE("good and very good primes") {
  auto a2 = RootDatum::build("A2");
  CHECK(is_good_prime(a2, 3));
  CHECK_FALSE(is_very_good_prime(a2, 3));
  CHECK(is_very_good_prime(a2, 2));
  auto c2 = RootDatum::build("C2");
  CHECK_FALSE(is_good_prime(c2, 2));
  CHECK(is_very_good_prime(c2, 3));
  auto g2 = RootDatum::build("G2");
  CHECK_FALSE(is_good_prime(g2, 3));
  CHECK(is_good_prime(g2, 5));
  auto e8 = RootDatum::build("E8");
  CHECK_FALSE(is_good_prime(e8, 5));
  CHECK(is_good_prime(e8, 7));
  CHECK(is_very_good_prime(e8, 0));
  CHECK_FALSE(is_good_prime(RootDatum::build("A1xB2"), 2));
  CHECK_FALSE(is_very_good_prime(RootDatum::general_linear(4), 2));
}

TEST_CASE("dominant conjugate") {
  auto d = RootDatum::build("A2");
  Cocharacter phi{{-1, 0}};
  auto dom = dominant_conjugate(d, phi);
  for (std::size_t i = 0; i < d.rank(); ++i) CHECK(d.pairing(i, dom) >= 0);
  CHECK(dom == Cocharacter{{1, 1}});  // highest coroot
  CHECK(Cocharacter{{2, 4}}.primitive_part() == Cocharacter{{1, 2}});
}

TEST_CASE("C2 norm by hand") {
  // Roots in sc character coordinates: +-(2,-1), +-(-2,2), +-(0,1), +-(2,0).
  // gram(e1,e1) = 2(4+4+0+4), gram(e2,e2) = 2(1+4+1+0), gram(e1,e2) = 2(-2-4+0+0).
  auto n = default_norm(RootDatum::build("C2"));
  CHECK(n.gram == Matrix::from_ints({{24, -12}, {-12, 12}}));
  CHECK(n.norm2({0, 0}) == Scalar(0));
}

TEST_CASE("good and bad primes") {
  auto a4 = RootDatum::build("A4");
  CHECK(is_good_prime(a4, 5));
  CHECK_FALSE(is_very_good_prime(a4, 5));
  auto g2 = RootDatum::build("G2");
  CHECK(is_very_good_prime(g2, 5));
  CHECK(weyl_group_elements(g2).size() == 12);
}

TEST_CASE("very good implies good") {
  for (auto t : {"A1", "A4", "B3", "C2", "D4", "G2", "F4", "E6", "E7", "E8", "A2xG2"}) {
    auto d = RootDatum::build(t);
    for (std::uint32_t p = 2; p <= 100; ++p)
      if (is_prime(p) && is_very_good_prime(d, p)) CHECK(is_good_prime(d, p));
  }
}

TEST_CASE("reflections permute roots and coroots") {
  for (auto t : {"A3", "B3", "C3", "G2", "F4", "D4"})
    for (auto f : {Isogeny::SimplyConnected, Isogeny::Adjoint}) {
      auto d = RootDatum::build(t, f, 1);
      std::set<IntVec> roots(d.roots().begin(), d.roots().end()), coroots(d.coroots().begin(), d.coroots().end());
      for (std::size_t i = 0; i < d.rank(); ++i) {
        auto s = simple_reflection(d, i);
        Matrix m = Matrix::from_ints(s.cochar);
        CHECK(m * m == Matrix::identity(d.lattice_rank()));
        for (std::size_t k = 0; k < d.num_roots(); ++k) {
          CHECK(coroots.count(apply_matrix(s.cochar, d.coroot(k))) == 1);
          CHECK(apply_matrix(s.cochar, d.coroot(k)) == d.coroot(s.root_perm[k]));
          // Dual action on characters: alpha -> alpha - <alpha, a_i^v> a_i.
          IntVec a = d.root(k);
          const auto c = dot(a, d.coroot(i));
          for (std::size_t j = 0; j < a.size(); ++j) a[j] -= c * d.root(i)[j];
          CHECK(a == d.root(s.root_perm[k]));
        }
      }
    }
}

TEST_CASE("json shape") {
  auto j = RootDatum::build("C2").to_json();
  CHECK(j["type"] == "C2");
  CHECK(j["roots"].size() == 8);
  CHECK(j["cartan"] == nlohmann::json::parse("[[2,-1],[-2,2]]"));
}

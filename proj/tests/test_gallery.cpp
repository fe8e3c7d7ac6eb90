#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "unicoh/gallery.hpp"
#include "unicoh/linalg.hpp"

using namespace unicoh;

TEST_CASE("u_n_on_torus shapes and expected classes") {
  GalleryCase c2 = u_n_on_torus(2);
  CHECK(c2.generators.size() == 1);
  CHECK(*c2.expected_class == 1);

  GalleryCase c3 = u_n_on_torus(3);
  CHECK(c3.generators.size() == 3);
  CHECK(*c3.expected_class == 2);

  for (int n = 2; n <= 5; ++n) {
    GalleryCase c = u_n_on_torus(n);
    CHECK(nilpotency_class(c.lattice_group()) == n - 1);
    CHECK(nilpotency_class(c.h1_group()) == n - 1);
  }
}

TEST_CASE("faithfulness witness: H^{1,1} action of each tau is nontrivial") {
  for (int n = 2; n <= 4; ++n) {
    GalleryCase c = u_n_on_torus(n);
    Hodge h(c.torus);
    for (const auto& g : c.generators) CHECK(!h.action_pq(g, 1, 1).is_identity());
  }
}

TEST_CASE("affine_example matches U(k+1,Z)") {
  for (auto [n, kappa] : std::vector<std::pair<int, int>>{{3, 1}, {5, 2}, {4, 3}}) {
    GalleryCase c = affine_example(n, kappa);
    const int k = n - kappa;
    REQUIRE(c.affine.has_value());
    GroupPresentation img = affine_to_unipotent(*c.affine);
    CHECK(img.ambient_dim == k + 1);
    CHECK(nilpotency_class(img) == k);
    CHECK(*c.expected_class == k);

    // generator set equals the tau generators of U(k+1, Z) up to the block map
    GroupPresentation u;
    u.ambient_dim = k + 1;
    for (int i = 0; i < k + 1; ++i)
      for (int j = i + 1; j < k + 1; ++j)
        u.generators.push_back(Mat::identity(k + 1) + Mat::unit(k + 1, i, j));
    // every embedded generator is one of the tau's
    for (const Mat& m : img.generators) {
      bool match = false;
      for (const Mat& t : u.generators) match = match || (m == t);
      CHECK(match);
    }
  }
  CHECK_THROWS_AS(affine_example(3, 3), Error);
}

TEST_CASE("eisenstein descent check") {
  CHECK(eisenstein_quotient_check(2));
  CHECK(eisenstein_quotient_check(3));
  // sanity: -omega has quasi-unipotent order 6
  Mat scalar = -eisenstein_mult(1);
  CHECK(quasi_unipotent_order(scalar) == 6);
  GalleryCase c = eisenstein_case(2);
  CHECK(c.metadata.at("descent_check") == "pass");
}

TEST_CASE("fuzz corpus determinism") {
  GalleryCase a = random_unipotent_group(3, 3, 777);
  GalleryCase b = random_unipotent_group(3, 3, 777);
  REQUIRE(a.generators.size() == b.generators.size());
  for (size_t i = 0; i < a.generators.size(); ++i)
    CHECK(a.generators[i].mat == b.generators[i].mat);
  GalleryCase c = random_unipotent_group(3, 3, 778);
  bool all_equal = true;
  for (size_t i = 0; i < a.generators.size(); ++i)
    all_equal = all_equal && (a.generators[i].mat == c.generators[i].mat);
  CHECK(!all_equal);
}

TEST_CASE("fuzz generators satisfy the constructive guarantees") {
  for (int n = 1; n <= 4; ++n) {
    for (uint64_t seed = 1; seed <= 8; ++seed) {
      GalleryCase c = random_unipotent_group(n, 3, seed);
      for (const auto& g : c.generators) {
        CHECK(is_unipotent(g.mat));
        CHECK(g.mat.is_integer());
        CHECK(g.mat * c.torus.j == c.torus.j * g.mat);
      }
      // the group itself is unipotent: the Lie closure exists
      CHECK_NOTHROW(lie_closure(c.lattice_group()));
    }
  }
}

TEST_CASE("n = 1 fuzz groups are trivial on H^1") {
  GalleryCase c = random_unipotent_group(1, 2, 5);
  for (const auto& g : c.generators) CHECK(g.mat.is_identity());
}

TEST_CASE("random words stay in the group and unipotent") {
  GalleryCase c = random_unipotent_group(3, 2, 99);
  SeededRng rng(4);
  for (int t = 0; t < 10; ++t) {
    TorusAutomorphism w = random_word(rng, c, 4);
    CHECK(is_unipotent(w.mat));
    CHECK(w.mat * c.torus.j == c.torus.j * w.mat);
  }
}

TEST_CASE("affine subtorus cases reduce translations mod 1") {
  AffineGroupPresentation aff = random_affine_subtorus_case(3, 1, 4, 21);
  CHECK(aff.mod_lattice);
  CHECK(aff.linear_dim == 6);
  for (const auto& g : aff.generators) {
    CHECK(is_unipotent(g.linear));
    for (const Rat& t : g.translation) {
      CHECK(t >= 0);
      CHECK(t < 1);
    }
    // translations supported in the subtorus (first 2 n' coordinates)
    for (size_t i = 2; i < g.translation.size(); ++i) CHECK(g.translation[i] == 0);
  }
}

TEST_CASE("weight-n affine commutators vanish for stable proper subtorus cases") {
  for (int n = 2; n <= 4; ++n) {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      AffineGroupPresentation aff = random_affine_subtorus_case(n, n - 1, 3, seed);
      CHECK(affine_lcs_trivial(aff, n));
    }
  }
}

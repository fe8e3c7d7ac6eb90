#include "unicoh/gallery.hpp"

#include <numeric>

#include "unicoh/errors.hpp"
#include "unicoh/linalg.hpp"

namespace unicoh {

GroupPresentation GalleryCase::lattice_group() const {
  GroupPresentation g;
  g.ambient_dim = torus.lattice_rank();
  for (const auto& a : generators) g.generators.push_back(a.mat);
  return g;
}

GroupPresentation GalleryCase::h1_group() const {
  GroupPresentation g;
  g.ambient_dim = torus.lattice_rank();
  for (const auto& a : generators) g.generators.push_back(a.h1_action());
  return g;
}

TorusAutomorphism tau_on_product(int n, int i, int j) {
  require(i != j && i >= 0 && j >= 0 && i < n && j < n, Errc::BadParameters, "tau indices");
  Mat m = Mat::identity(2 * n);
  m.at(2 * i, 2 * j) = GaussRat(1);
  m.at(2 * i + 1, 2 * j + 1) = GaussRat(1);
  return TorusAutomorphism{m, std::nullopt};
}

GalleryCase u_n_on_torus(int n) {
  require(n >= 2, Errc::BadParameters, "u_n_on_torus needs n >= 2");
  GalleryCase c;
  c.name = "u_" + std::to_string(n);
  c.torus = square_torus(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c.generators.push_back(tau_on_product(n, i, j));
  c.expected_class = n - 1;
  c.metadata["construction"] = "U(n,Z) acting on E^n by coordinate additions";
  for (const auto& g : c.generators) validate_automorphism(c.torus, g);
  return c;
}

GalleryCase affine_example(int n, int kappa) {
  require(n >= 2 && kappa >= 1 && kappa <= n - 1, Errc::BadParameters,
          "affine_example needs 1 <= kappa <= n-1");
  const int k = n - kappa;
  AffineGroupPresentation aff;
  aff.linear_dim = k;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      aff.generators.push_back(
          AffineGen{Mat::identity(k) + Mat::unit(k, i, j), std::vector<Rat>(size_t(k), Rat(0))});
  for (int i = 0; i < k; ++i) {
    std::vector<Rat> t(size_t(k), Rat(0));
    t[i] = 1;
    aff.generators.push_back(AffineGen{Mat::identity(k), t});
  }
  GalleryCase c;
  c.name = "affine_" + std::to_string(n) + "_" + std::to_string(kappa);
  c.torus = square_torus(k);
  c.affine = aff;
  c.expected_class = k;
  c.metadata["construction"] =
      "Z^{n-kappa} x| U(n-kappa,Z), block-embedded into U(n-kappa+1,Z)";
  return c;
}

Mat eisenstein_mult(int n) {
  Mat w = Mat::zero(2 * n, 2 * n);
  for (int b = 0; b < n; ++b) {
    w.at(2 * b, 2 * b + 1) = GaussRat(Rat(-1));
    w.at(2 * b + 1, 2 * b) = GaussRat(1);
    w.at(2 * b + 1, 2 * b + 1) = GaussRat(Rat(-1));
  }
  return w;
}

bool eisenstein_quotient_check(int n) {
  require(n >= 2, Errc::BadParameters, "eisenstein_quotient_check needs n >= 2");
  Mat scalar = -eisenstein_mult(n); // -omega as a lattice matrix
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Mat t = tau_on_product(n, i, j).mat;
      if (scalar * t != t * scalar) return false;
    }
  // (-omega) has multiplicative order exactly 6
  if (quasi_unipotent_order(scalar) != 6) return false;
  Mat p = scalar;
  for (int k = 1; k < 6; ++k) {
    if (p.is_identity()) return false;
    p = p * scalar;
  }
  return p.is_identity();
}

GalleryCase eisenstein_case(int n) {
  GalleryCase c = u_n_on_torus(n);
  c.name = "eisenstein_" + std::to_string(n);
  c.metadata["construction"] =
      "U(n,Z) on the Eisenstein lattice; descent to the -omega quotient checked on the lattice";
  c.metadata["descent_check"] = eisenstein_quotient_check(n) ? "pass" : "fail";
  return c;
}

TorusAutomorphism full_jordan_automorphism(int n) {
  Mat m = Mat::identity(2 * n);
  for (int i = 0; i + 1 < n; ++i) {
    m.at(2 * i, 2 * (i + 1)) = GaussRat(1);
    m.at(2 * i + 1, 2 * (i + 1) + 1) = GaussRat(1);
  }
  return TorusAutomorphism{m, std::nullopt};
}

namespace {

/// Elementary J-commuting block matrix I + E_ij (x) (a I + b J0), i != j.
Mat elementary_block(int n, int i, int j, long a, long b) {
  Mat m = Mat::identity(2 * n);
  m.at(2 * i, 2 * j) = GaussRat(Rat(a));
  m.at(2 * i + 1, 2 * j + 1) = GaussRat(Rat(a));
  m.at(2 * i, 2 * j + 1) = GaussRat(Rat(-b));
  m.at(2 * i + 1, 2 * j) = GaussRat(Rat(b));
  return m;
}

} // namespace

GalleryCase random_unipotent_group(int n, int generators, uint64_t seed) {
  require(n >= 1 && generators >= 1, Errc::BadParameters, "random_unipotent_group parameters");
  SeededRng rng(seed);
  GalleryCase c;
  c.name = "fuzz_n" + std::to_string(n) + "_g" + std::to_string(generators) + "_s" +
           std::to_string(seed);
  c.torus = square_torus(n);
  c.metadata["seed"] = std::to_string(seed);

  // random flag order on the factors
  std::vector<int> order(static_cast<size_t>(n), 0);
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.range(0, i)]);
  std::vector<int> pos(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;

  // common conjugator: a short product of elementary block matrices
  Mat conj = Mat::identity(2 * n);
  if (n > 1) {
    const int factors = n + 2;
    for (int f = 0; f < factors; ++f) {
      int i = int(rng.range(0, n - 1));
      int j = int(rng.range(0, n - 2));
      if (j >= i) ++j;
      conj = conj * elementary_block(n, i, j, rng.range(-1, 1), rng.range(-1, 1));
    }
  }
  auto cinv = inverse(conj);
  require(cinv.has_value(), Errc::Internal, "conjugator not invertible");

  for (int g = 0; g < generators; ++g) {
    Mat u = Mat::identity(2 * n);
    if (n > 1) {
      const int len = int(rng.range(1, 3));
      for (int t = 0; t < len; ++t) {
        int i = int(rng.range(0, n - 1));
        int j = int(rng.range(0, n - 2));
        if (j >= i) ++j;
        if (pos[i] > pos[j]) std::swap(i, j); // upper along the flag
        u = u * elementary_block(n, i, j, rng.range(-3, 3), rng.range(-3, 3));
      }
    }
    TorusAutomorphism a{conj * u * *cinv, std::nullopt};
    validate_automorphism(c.torus, a);
    require(is_unipotent(a.mat), Errc::Internal, "fuzz generator must be unipotent");
    c.generators.push_back(std::move(a));
  }
  return c;
}

AffineGroupPresentation random_affine_subtorus_case(int n, int n_prime, int generators,
                                                    uint64_t seed) {
  require(n >= 2 && n_prime >= 1 && n_prime < n, Errc::BadParameters,
          "subtorus case needs 1 <= n' < n");
  SeededRng rng(seed);
  AffineGroupPresentation aff;
  aff.linear_dim = 2 * n;
  aff.mod_lattice = true;
  for (int g = 0; g < generators; ++g) {
    // linear part: upper-triangular along the identity flag, so the span of
    // the first factors (the subtorus) stays stable
    Mat u = Mat::identity(2 * n);
    const int len = int(rng.range(0, 2));
    for (int t = 0; t < len && n > 1; ++t) {
      int i = int(rng.range(0, n - 2));
      int j = int(rng.range(i + 1, n - 1));
      u = u * elementary_block(n, i, j, rng.range(-2, 2), rng.range(-2, 2));
    }
    std::vector<Rat> tr(size_t(2 * n), Rat(0));
    if (rng.range(0, 1) == 1 || len == 0) {
      int coord = int(rng.range(0, 2 * n_prime - 1));
      tr[coord] = rat_mod1(Rat(rng.range(1, 5), rng.range(2, 7)));
    }
    aff.generators.push_back(AffineGen{std::move(u), std::move(tr)});
  }
  validate_affine_group(aff);
  return aff;
}

HermitianClass random_hermitian_class(SeededRng& rng, int n, int bound) {
  Mat b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      b.at(i, j) = GaussRat(Rat(rng.range(-bound, bound)), Rat(rng.range(-bound, bound)));
  return HermitianClass{b + b.conj_transpose()};
}

HermitianClass random_kahler_class(SeededRng& rng, int n, int bound) {
  Mat b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      b.at(i, j) = GaussRat(Rat(rng.range(-bound, bound)), Rat(rng.range(-bound, bound)));
  HermitianClass c{b * b.conj_transpose() + Mat::identity(n)};
  require(is_kahler(c), Errc::Internal, "constructed class must be PD");
  return c;
}

TorusAutomorphism random_word(SeededRng& rng, const GalleryCase& c, int max_len) {
  require(!c.generators.empty(), Errc::BadParameters, "case has no generators");
  TorusAutomorphism w = identity_automorphism(c.torus);
  const int len = int(rng.range(1, std::max(1, max_len)));
  for (int t = 0; t < len; ++t) {
    const auto& g = c.generators[size_t(rng.range(0, long(c.generators.size()) - 1))];
    w = compose(w, g);
  }
  return w;
}

} // namespace unicoh

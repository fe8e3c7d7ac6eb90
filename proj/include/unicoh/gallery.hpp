#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "unicoh/group.hpp"
#include "unicoh/hodge.hpp"

namespace unicoh {

/// Deterministic RNG facade: all draws go through explicit modulo reduction
/// so corpora regenerate bit-identically from the seed on any platform.
class SeededRng {
public:
  explicit SeededRng(uint64_t seed) : eng_(seed) {}
  uint64_t raw() { return eng_(); }
  /// Uniform-ish integer in [lo, hi] (modulo reduction, deterministic).
  long range(long lo, long hi) {
    return lo + long(eng_() % uint64_t(hi - lo + 1));
  }

private:
  std::mt19937_64 eng_;
};

struct GalleryCase {
  std::string name;
  TorusModel torus;
  std::vector<TorusAutomorphism> generators;
  std::optional<AffineGroupPresentation> affine; // set by affine_example
  std::optional<int> expected_class;             // stated invariant, when known
  std::map<std::string, std::string> metadata;

  /// Lattice-level matrix group of the case.
  GroupPresentation lattice_group() const;
  /// Pullback representation on H^1 (transposes).
  GroupPresentation h1_group() const;
};

/// tau_ij acting on the lattice (Z^2)^n of a product of elliptic curves.
TorusAutomorphism tau_on_product(int n, int i, int j);

/// The U(n,Z) action on E^n by coordinate additions; expected nilpotency
/// class n-1.
GalleryCase u_n_on_torus(int n);

/// Z^{n-kappa} x| U(n-kappa, Z) as an affine presentation over the integers;
/// expected class n-kappa via the block embedding into U(n-kappa+1, Z).
GalleryCase affine_example(int n, int kappa);

/// Multiplication by the primitive third root of unity on Z[omega]:
/// [[0,-1],[1,-1]] per factor.
Mat eisenstein_mult(int n);

/// Verifies the computable content of the Eisenstein quotient construction:
/// the scalar -omega I_n commutes with every U(n,Z) generator image on the
/// lattice, and (-omega) has multiplicative order exactly 6.
bool eisenstein_quotient_check(int n);
GalleryCase eisenstein_case(int n);

/// The automorphism of E^n whose H^{1,0} pullback is a single full Jordan
/// block; saturates the H^{1,1} growth bound at 2(n-1).
TorusAutomorphism full_jordan_automorphism(int n);

/// Seeded random unipotent J-commuting automorphism group on E^n: products
/// of elementary block matrices upper-triangular along a random flag, all
/// conjugated by a common random J-commuting unimodular matrix. The whole
/// group is unipotent by construction.
GalleryCase random_unipotent_group(int n, int generators, uint64_t seed);

/// Random affine presentation on the lattice of E^n whose linear parts
/// stabilize the proper subtorus spanned by the first n_prime factors and
/// whose translations are rational points of that subtorus (mod 1).
AffineGroupPresentation random_affine_subtorus_case(int n, int n_prime, int generators,
                                                    uint64_t seed);

HermitianClass random_hermitian_class(SeededRng& rng, int n, int bound);
HermitianClass random_kahler_class(SeededRng& rng, int n, int bound);

/// Random element of the group as a word in the generators.
TorusAutomorphism random_word(SeededRng& rng, const GalleryCase& c, int max_len);

} // namespace unicoh

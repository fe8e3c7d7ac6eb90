#pragma once

#include <optional>
#include <vector>

#include "unicoh/matrix.hpp"

namespace unicoh {

/// Compact complex torus presented in lattice coordinates: the lattice is
/// Z^{2n} and J is a rational complex structure with J^2 = -I whose +/-i
/// eigenspaces each have dimension n.
struct TorusModel {
  int n = 0; // complex dimension
  Mat j;     // 2n x 2n

  int lattice_rank() const { return 2 * n; }
};

/// Throws BadComplexStructure if the invariants fail.
void validate_torus(const TorusModel& t);

/// Holomorphic torus automorphism: integer matrix on the lattice commuting
/// with J, plus an optional rational translation taken mod Z^{2n}.
/// Translations act trivially on cohomology.
struct TorusAutomorphism {
  Mat mat;
  std::optional<std::vector<Rat>> translation;

  /// Pullback on H^1 in the dual lattice basis (contravariant: the H^1
  /// matrix of g.h is h1 of h times h1 of g).
  Mat h1_action() const { return mat.transpose(); }
};

/// Throws BadParameters / BadComplexStructure on invariant violation.
void validate_automorphism(const TorusModel& t, const TorusAutomorphism& g);

TorusAutomorphism compose(const TorusAutomorphism& a, const TorusAutomorphism& b);
TorusAutomorphism identity_automorphism(const TorusModel& t);

/// Reduce a rational to [0, 1).
Rat rat_mod1(const Rat& r);

/// Bases of the eigenspaces of the transposed complex structure acting on
/// the dual lattice: V^{1,0*} (eigenvalue +i, i.e. phi(Jv) = i phi(v)) and
/// V^{0,1*} = conjugate. Columns are coordinate vectors in the dual basis,
/// echelon-canonical with leading coordinate normalized to 1.
std::pair<Mat, Mat> hodge_split(const TorusModel& t);

/// Square elliptic curve block [[0,-1],[1,0]] repeated n times.
TorusModel square_torus(int n);

} // namespace unicoh

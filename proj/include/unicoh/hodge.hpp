#pragma once

#include <vector>

#include "unicoh/combinat.hpp"
#include "unicoh/linalg.hpp"
#include "unicoh/torus.hpp"

namespace unicoh {

/// Element of H^{p,q}(T, C) in the monomial basis phi_S ^ phibar_T induced
/// by the Hodge split; coordinate index is s * C(n,q) + t with S, T running
/// over lexicographic subsets.
struct HodgeClass {
  int n = 0, p = 0, q = 0;
  std::vector<GaussRat> coords;

  static HodgeClass zero(int n, int p, int q);
  static HodgeClass one(int n); // the unit in H^{0,0}

  int dim() const { return int(coords.size()); }
  bool is_zero() const;

  HodgeClass operator+(const HodgeClass& o) const;
  HodgeClass operator-(const HodgeClass& o) const;
  HodgeClass operator*(const GaussRat& s) const;
  bool operator==(const HodgeClass& o) const = default;

  HodgeClass conjugate() const;
  /// p == q and fixed by conjugation.
  bool is_real() const;
};

/// Wedge/cup product; zero class of the right degree on overflow.
HodgeClass cup(const HodgeClass& a, const HodgeClass& b);

/// (1,1)-classes as n x n Hermitian matrices. On a torus, nef <=> PSD and
/// Kahler <=> PD.
struct HermitianClass {
  Mat h; // n x n, H = H^dagger
};

void validate_hermitian(const HermitianClass& c);
bool is_nef(const HermitianClass& c);
bool is_kahler(const HermitianClass& c);

/// Fixed torus with its Hodge split and the degree bookkeeping every
/// cohomology computation needs.
class Hodge {
public:
  explicit Hodge(TorusModel t);

  const TorusModel& torus() const { return torus_; }
  int n() const { return torus_.n; }
  const Mat& phi10() const { return phi10_; }
  const Mat& phi01() const { return phi01_; }

  /// Matrix A of the pullback g^* on H^{1,0}: M^T Phi = Phi A.
  Mat pullback_h10(const TorusAutomorphism& g) const;

  /// Matrix of g^* on H^{p,q} in the monomial basis (wedge^p A tensor
  /// wedge^q conj(A)). Contravariant in g.
  Mat action_pq(const TorusAutomorphism& g, int p, int q) const;

  HodgeClass hermitian_to_class(const HermitianClass& c) const;
  HermitianClass class_to_hermitian(const HodgeClass& c) const;

  /// Value of a (n,n)-class against the fundamental class, normalized so
  /// that the n-fold self-intersection of the identity Hermitian class is 1.
  Rat eval_top(const HodgeClass& c) const;

  /// Mixed intersection of exactly n (1,1)-classes; symmetric multilinear,
  /// equals det(H) on the diagonal. Computed by wedge expansion.
  Rat intersection_number(const std::vector<HermitianClass>& classes) const;

  /// Independent oracle: polarization of the determinant,
  ///   D(H_1..H_n) = (1/n!) sum_{S nonempty} (-1)^{n-|S|} det(sum_{i in S} H_i).
  Rat intersection_number_polarized(const std::vector<HermitianClass>& classes) const;

  /// A^* H A congruence transport of a Hermitian class along g (A = pullback
  /// matrix on H^{1,0}); matches action_pq(g,1,1) on the class side.
  HermitianClass pullback_hermitian(const TorusAutomorphism& g, const HermitianClass& c) const;

  HodgeClass apply(const Mat& action, const HodgeClass& c) const;
  HodgeClass pullback(const TorusAutomorphism& g, const HodgeClass& c) const;

private:
  TorusModel torus_;
  Mat phi10_, phi01_;
  GaussRat top_gauss_; // top-monomial coefficient of class(I)^n
};

/// Exterior power matrix: entries are minors det(A[S,S']).
Mat wedge_matrix(const Mat& a, int k);

/// Kronecker product; parallel over output columns with a serial reference.
Mat kron(const Mat& a, const Mat& b);
Mat kron_serial(const Mat& a, const Mat& b);

/// Basis of the real points H^{p,p}(T, R) inside H^{p,p}, with exact
/// rational coordinates for real classes. Canonical order: diagonal pairs
/// (S,S) first as encountered, then for S < T the symmetric and the
/// i-skew combination.
class RealStructure {
public:
  RealStructure(const Hodge& hodge, int p);

  int dim() const { return int(basis_.size()); }
  int p() const { return p_; }
  const std::vector<HodgeClass>& basis() const { return basis_; }

  /// Rational coordinates of a real class (throws if the class is not real).
  std::vector<GaussRat> to_coords(const HodgeClass& c) const;
  HodgeClass from_coords(const std::vector<GaussRat>& v) const;

  /// Matrix of g^* on the real points, rational entries.
  Mat real_action(const Hodge& hodge, const TorusAutomorphism& g) const;
  /// Same, from an H^{p,p} action matrix.
  Mat real_action_of(const Mat& complex_action) const;

private:
  int n_, p_;
  std::vector<HodgeClass> basis_;
  // basis element k is supported on monomial pair (s_idx, t_idx):
  struct Support {
    int st;      // index of (S,T)
    int ts;      // index of (T,S)
    int kind;    // 0: diagonal, 1: symmetric u, 2: skew v
  };
  std::vector<Support> support_;
};

} // namespace unicoh

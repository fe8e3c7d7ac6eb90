#pragma once

#include <memory>
#include <vector>

#include "unicoh/linalg.hpp"
#include "unicoh/matrix.hpp"

namespace unicoh {

/// Finitely generated group of integer matrices, given by generators.
struct GroupPresentation {
  int ambient_dim = 0;
  std::vector<Mat> generators;
};

/// Integrality and unimodularity of every generator.
void validate_group(const GroupPresentation& g);
bool all_generators_unipotent(const GroupPresentation& g);

/// Affine map x -> A x + b. Composition (A,b)(A',b') = (AA', Ab' + b).
struct AffineGen {
  Mat linear;
  std::vector<Rat> translation;
};

/// Finitely generated unipotent affine group. With mod_lattice set the
/// translation parts live on the torus R^k / Z^k and are reduced mod 1.
struct AffineGroupPresentation {
  int linear_dim = 0;
  std::vector<AffineGen> generators;
  bool mod_lattice = false;
};

void validate_affine_group(const AffineGroupPresentation& g);
AffineGen affine_identity(int k);
AffineGen affine_compose(const AffineGen& a, const AffineGen& b, bool mod_lattice);
AffineGen affine_inverse(const AffineGen& a, bool mod_lattice);
bool affine_is_identity(const AffineGen& a);

/// Block embedding f(x) = Ax + b  <->  [[A, b], [0, 1]]. Verifies on every
/// generator pair that composition maps to matrix product.
GroupPresentation affine_to_unipotent(const AffineGroupPresentation& g);

/// Rational matrix Lie algebra spanned by nilpotent matrices, closed under
/// the commutator bracket.
struct NilpotentLieAlgebra {
  int ambient_dim = 0;
  std::vector<Mat> basis;

  int dim() const { return int(basis.size()); }
};

Mat bracket(const Mat& x, const Mat& y);
bool is_nilpotent(const Mat& x);

/// Smallest bracket-closed subspace containing the logarithms of the
/// generators; the Lie algebra of the Zariski closure. Throws NotUnipotent
/// if a generator is not unipotent or if the generated algebra fails to be
/// nilpotent (which certifies the group itself is not unipotent).
NilpotentLieAlgebra lie_closure(const GroupPresentation& g);

int lie_nilpotency_class(const NilpotentLieAlgebra& l);
int lie_derived_length(const NilpotentLieAlgebra& l);

/// Nilpotency class / derived length of the group, computed on the Lie
/// algebra of its Zariski closure (finite-index invariance makes this equal
/// to the value for the discrete group).
int nilpotency_class(const GroupPresentation& g);
int derived_length(const GroupPresentation& g);

/// Same computations for matrix groups over the rationals (e.g. induced
/// representations on cohomology, which need not be integral in the chosen
/// basis).
NilpotentLieAlgebra lie_closure_mats(int ambient_dim, const std::vector<Mat>& gens);
int nilpotency_class_mats(int ambient_dim, const std::vector<Mat>& gens);
int derived_length_mats(int ambient_dim, const std::vector<Mat>& gens);

/// Exhaustive enumeration of left-normed generator commutators
/// [g_{i_1}, ..., g_{i_w}]: true iff all of them are the identity, i.e. the
/// group is nilpotent of class < w. Branches where the running commutator
/// collapses to the identity are pruned exactly.
bool lcs_oracle(const GroupPresentation& g, int weight);
bool lcs_oracle_serial(const GroupPresentation& g, int weight);

/// Affine variant: all weight-w left-normed commutators of the affine
/// generators are the identity (translations compared mod 1 when the
/// presentation is mod_lattice).
bool affine_lcs_trivial(const AffineGroupPresentation& g, int weight);

// ---------------------------------------------------------------------------
// Commutator words and the finite-sum decomposition of Id - g
// ---------------------------------------------------------------------------

struct CommWord;
using WordPtr = std::shared_ptr<const CommWord>;

struct CommWord {
  enum class Kind { Gen, GenInv, Comm, Prod };
  Kind kind;
  int gen = -1;
  WordPtr a, b;

  static WordPtr make_gen(int i);
  static WordPtr make_gen_inv(int i);
  static WordPtr make_comm(WordPtr x, WordPtr y);
  static WordPtr make_prod(WordPtr x, WordPtr y);
};

/// Commutator weight: generators weigh 1, [x,y] adds, products take the min.
int word_weight(const CommWord& w);
WordPtr word_inverse(const WordPtr& w);
Mat word_eval(const CommWord& w, const std::vector<Mat>& gens);

/// One signed product h_1 (Id - g_1) ... h_k (Id - g_k).
struct GammaTerm {
  int sign = 1;
  std::vector<std::pair<Mat, Mat>> factors; // (h_i, g_i)
};

/// The inductive decomposition of Id - eval(w) as a signed sum of products
/// of at least weight(w) factors h (Id - g).
std::vector<GammaTerm> gamma_decomposition(const CommWord& w, const std::vector<Mat>& gens);

/// Builds the decomposition for a word presenting an element of the l-th
/// lower central subgroup (weight >= l+1 required, MalformedWord otherwise),
/// then verifies the identity sum = Id - eval(w) exactly in End(M) and that
/// every term has k >= l+1 factors.
bool gamma_decomposition_check(const std::vector<Mat>& gens, const CommWord& w, int l);

/// h_1 (Id - g_1) ... h_m (Id - g_m) for already-represented operators
/// (e.g. pullbacks on H^1 of a torus). Zero whenever m >= dim T and the
/// operators generate a unipotent group.
Mat annihilation_product(const std::vector<Mat>& h_ops, const std::vector<Mat>& g_ops);

/// Flag-triviality check: if every element of s restricts to the identity
/// on the column span of w and induces the identity on the quotient, all
/// elements commute; returns false when the hypothesis fails.
bool flag_abelian_check(const std::vector<Mat>& s, const Mat& w);

} // namespace unicoh

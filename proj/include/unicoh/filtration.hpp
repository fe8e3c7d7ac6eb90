#pragma once

#include <string>

#include "unicoh/growth.hpp"

namespace unicoh {

/// The invariant ladder L_0 = 1, L_{i+1} = L_i . M_{i+1} with each level
/// fixed exactly by the group and exhibited as a dominant term of
/// L_i (g^m)^* omega (the nef-limit certificate is the dominant index).
struct InvariantChain {
  std::vector<HodgeClass> levels;        // L_0 .. L_n
  std::vector<HermitianClass> witnesses; // M_1 .. M_n
  std::vector<int> dominant_k;           // dominant expansion index per level
  HermitianClass omega;                  // base Kahler class
};

InvariantChain build_chain_cyclic(const Hodge& h, const TorusAutomorphism& g,
                                  const HermitianClass& omega);

/// Multi-generator variant: cycles dominant-term extraction over the
/// generators until a jointly fixed class appears at each level. Raises
/// LChainNotFound when the iteration fails to stabilize within max_rounds
/// (0 picks a dimension-based default).
InvariantChain build_chain_group(const Hodge& h, const std::vector<TorusAutomorphism>& gens,
                                 const HermitianClass& omega, int max_rounds = 0);

/// The invariant subspaces of the ladder: N^i in degree (i,i) and F_i, F'_i inside
/// H^{1,1}, all as column bases over the canonical real coordinates.
struct FiltrationSpaces {
  int n = 0;
  std::vector<Mat> nspace; // N^0 .. N^n, per-degree real coordinates
  std::vector<Mat> f;      // F_0 .. F_n
  std::vector<Mat> fprime; // index 1 .. n used; [0] stays empty

  int dim_f(int i) const { return f[i].cols(); }
  int dim_fprime(int i) const { return fprime[i].cols(); }
};

FiltrationSpaces compute_spaces(const Hodge& h, const InvariantChain& chain);

/// Gram matrix of Q(M, M') = L_i M M' c_1 ... c_{n-i-2} in the canonical
/// real basis of H^{1,1}; exact symmetric rational matrix.
Mat quadratic_form_gram(const Hodge& h, const InvariantChain& chain, int i,
                        const std::vector<HermitianClass>& kahler_tuple);

/// Basis of the primitive hyperplane P = {M : L_i M c_1 ... c_{n-i-1} = 0}.
Mat primitive_space(const Hodge& h, const InvariantChain& chain, int i,
                    const std::vector<HermitianClass>& kahler_tuple);

/// B^T G B for a column basis B: the form restricted to a subspace.
Mat restrict_form(const Mat& gram, const Mat& basis);

struct SSequenceResult {
  std::vector<int> s; // s_1 > s_2 > ... > s_r
  int r = 0;
  bool trivially_acting = false;
  bool checks_pass = true;
  std::vector<std::string> failures;
};

/// The strictly decreasing level sequence of the expansion classes, with all
/// structural postconditions verified exactly: membership windows, strict
/// decrease, one-dimensional jumps, and positive proportionality of
/// omega_{2j} to the chain witness.
SSequenceResult s_sequence(const Hodge& h, const TorusAutomorphism& g,
                           const InvariantChain& chain, const FiltrationSpaces& spaces,
                           const HermitianClass& omega);

/// Smallest i with (g^* - Id) H^{1,1} inside F_i; 0 when g acts trivially.
int h_level(const Hodge& h, const TorusAutomorphism& g, const FiltrationSpaces& spaces);

/// Documented positive-definite family spanning the Hermitian classes;
/// quantifiers over Kahler tuples are discharged on it (inner approximation
/// for inequality-type conditions).
std::vector<HermitianClass> kahler_test_family(int n);

/// Minimal witness scale s with L_{j-1}(s M_j omega + c^2) pairing
/// nonnegatively against every family tuple, or nullopt when some tuple
/// admits no compensation (the membership is existential in the witness, so
/// any finite scale certifies it). Throws NotInFj when c is not in F_j.
std::optional<Rat> primitive_root_scale(const Hodge& h, const InvariantChain& chain,
                                        const FiltrationSpaces& spaces, int j,
                                        const HermitianClass& c);

/// W_j membership. With fixed_witness_scale set, decides the inequality for
/// that specific multiple of the chain witness instead of the existential
/// form.
bool primitive_root_membership(const Hodge& h, const InvariantChain& chain,
                               const FiltrationSpaces& spaces, int j, const HermitianClass& c,
                               std::optional<Rat> fixed_witness_scale = std::nullopt);

// --- shared real-subspace helpers (column bases over exact scalars) ---
Mat subspace_sum(const Mat& a, const Mat& b);
Mat subspace_intersection(const Mat& a, const Mat& b);
/// {x : map x in span(target)}
Mat preimage_mod(const Mat& map, const Mat& target);

} // namespace unicoh

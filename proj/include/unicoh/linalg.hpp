#pragma once

#include <map>
#include <vector>

#include "unicoh/matrix.hpp"

namespace unicoh {

/// Inertia triple of a Hermitian (or real symmetric) form.
struct Inertia {
  int n_plus = 0;
  int n_zero = 0;
  int n_minus = 0;
  bool operator==(const Inertia&) const = default;
};

/// True iff (M - I)^dim == 0, i.e. all eigenvalues equal 1.
bool is_unipotent(const Mat& m);

/// Nilpotent X with exp(X) = M, via the finite series log(I+N).
Mat unipotent_log(const Mat& m);

/// Finite exponential series of a nilpotent matrix.
Mat nilpotent_exp(const Mat& x);

/// Jordan block sizes of a unipotent matrix, recovered from the rank
/// sequence of (M - I)^k. Returned as {size -> count}, sizes descending sum
/// to the dimension.
std::map<int, int, std::greater<int>> jordan_profile_unipotent(const Mat& m);

/// Largest Jordan block of a unipotent matrix (1 for the identity).
int max_jordan_block(const Mat& m);

/// Smallest N >= 1 with M^N unipotent, for an integer matrix invertible over
/// the integers whose characteristic polynomial is a product of cyclotomics.
/// Throws NotQuasiUnipotent otherwise.
unsigned long quasi_unipotent_order(const Mat& m);

/// Exact congruence inertia of a Hermitian matrix (symmetric real allowed),
/// 1x1 pivots preferred, 2x2 off-diagonal pivots when the active diagonal is
/// entirely zero.
Inertia inertia(const Mat& h);

bool is_positive_semidefinite(const Mat& h);
bool is_positive_definite(const Mat& h);

// --- integer polynomial helpers (ascending coefficients) ---

using IntPoly = std::vector<Int>;

/// Characteristic polynomial det(xI - M) by Faddeev-LeVerrier; exact.
std::vector<Rat> charpoly(const Mat& m);

IntPoly cyclotomic(unsigned long d);

/// Euler's totient by trial division.
unsigned long euler_phi(unsigned long d);

/// Multiplicities {d -> m} with p = prod Phi_d^m, or empty optional if p has
/// a non-cyclotomic factor. p must be monic.
std::optional<std::map<unsigned long, int>> cyclotomic_profile(const IntPoly& p);

} // namespace unicoh

#pragma once

#include <optional>

#include "unicoh/hodge.hpp"

namespace unicoh {

/// The classes omega_j = (g^* - Id)^j omega with the reconstruction identity
/// (g^m)^* omega = sum_j C(m,j) omega_j verified internally.
struct ExpansionRecord {
  std::vector<HodgeClass> omega_classes; // omega_0 .. omega_{top_index}, then a zero
  int top_index = 0;

  const HodgeClass& omega(int j) const;
};

ExpansionRecord expansion_classes(const Hodge& h, const TorusAutomorphism& g,
                                  const HermitianClass& omega);

/// Largest Jordan block of the H^{p,q} action minus one: the exact degree k
/// with |(g^m)^*| ~ m^k on that piece.
int growth_exponent(const Hodge& h, const TorusAutomorphism& g, int p, int q);

struct GrowthEntry {
  int p = 0, q = 0;
  int exponent = 0;
  int bound = 0; // (p' + q')(n - 1)
  bool pass = false;
  std::optional<int> pp_bound; // 2p(n-1) - 2 on H^{p,p}, p >= 2
  bool pp_pass = true;
};

struct GrowthReport {
  std::vector<GrowthEntry> entries; // sorted by (p, q)
  int h11_exponent = 0;
  bool h11_even = false;
  bool all_pass = false;
};

/// Checks the polynomial growth bounds on every Hodge piece: the general
/// (p'+q')(n-1) bound, evenness on H^{1,1}, and the improved 2p(n-1)-2
/// bound on H^{p,p} for p >= 2.
GrowthReport verify_growth_bounds(const Hodge& h, const TorusAutomorphism& g);

/// Entrywise max-norm of the m-th power of the H^{p,q} action.
Rat norm_growth_sample(const Hodge& h, const TorusAutomorphism& g, int p, int q,
                       unsigned long m);

/// Slope of log-norm over m = 2^4 .. 2^12, rounded to the nearest integer;
/// a redundant numeric cross-check of growth_exponent.
int growth_slope_estimate(const Hodge& h, const TorusAutomorphism& g, int p, int q);

/// Top expansion index for a generic Kahler class: samples seeded Kahler
/// classes until the index stabilizes across two samples (cap 5).
int generic_h11_top_index(const Hodge& h, const TorusAutomorphism& g, unsigned long seed);

} // namespace unicoh

#include "unicoh/growth.hpp"

#include <random>

#include "unicoh/errors.hpp"

namespace unicoh {

const HodgeClass& ExpansionRecord::omega(int j) const {
  require(j >= 0, Errc::BadParameters, "negative expansion index");
  if (j < int(omega_classes.size())) return omega_classes[j];
  return omega_classes.back(); // trailing zero class
}

ExpansionRecord expansion_classes(const Hodge& h, const TorusAutomorphism& g,
                                  const HermitianClass& omega) {
  require(is_unipotent(g.mat), Errc::NotUnipotent, "expansion_classes");
  require(is_kahler(omega), Errc::NotKahler, "expansion_classes");
  Mat action = h.action_pq(g, 1, 1);
  ExpansionRecord rec;
  HodgeClass cur = h.hermitian_to_class(omega);
  while (!cur.is_zero()) {
    rec.omega_classes.push_back(cur);
    cur = h.apply(action, cur) - cur;
    require(int(rec.omega_classes.size()) <= h.n() * h.n() + 1, Errc::Internal,
            "expansion fails to terminate");
  }
  rec.omega_classes.push_back(cur); // the final zero
  rec.top_index = int(rec.omega_classes.size()) - 2;

  // reconstruction identity (g^m)^* omega = sum_j C(m,j) omega_j
  Mat power = Mat::identity(action.rows());
  for (int m = 0; m <= rec.top_index + 2; ++m) {
    HodgeClass sum = HodgeClass::zero(h.n(), 1, 1);
    for (int j = 0; j <= std::min(m, rec.top_index); ++j)
      sum = sum + rec.omega_classes[j] * GaussRat(Rat(binomial_z(m, j)));
    require(h.apply(power, rec.omega_classes[0]) == sum, Errc::Internal,
            "binomial reconstruction failed");
    power = power * action;
  }
  return rec;
}

int growth_exponent(const Hodge& h, const TorusAutomorphism& g, int p, int q) {
  require(is_unipotent(g.mat), Errc::NotUnipotent, "growth_exponent");
  Mat action = h.action_pq(g, p, q);
  return max_jordan_block(action) - 1;
}

GrowthReport verify_growth_bounds(const Hodge& h, const TorusAutomorphism& g) {
  require(is_unipotent(g.mat), Errc::NotUnipotent, "verify_growth_bounds");
  const int n = h.n();
  GrowthReport rep;
  rep.all_pass = true;
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      GrowthEntry e;
      e.p = p;
      e.q = q;
      e.exponent = growth_exponent(h, g, p, q);
      int pp = std::min(p, n - p), qq = std::min(q, n - q);
      e.bound = (pp + qq) * (n - 1);
      e.pass = e.exponent <= e.bound;
      if (p == q && p >= 2) {
        e.pp_bound = 2 * p * (n - 1) - 2;
        e.pp_pass = e.exponent <= *e.pp_bound;
      }
      if (p == 1 && q == 1) {
        rep.h11_exponent = e.exponent;
        rep.h11_even = (e.exponent % 2 == 0);
      }
      rep.all_pass = rep.all_pass && e.pass && e.pp_pass;
      rep.entries.push_back(e);
    }
  rep.all_pass = rep.all_pass && rep.h11_even;
  return rep;
}

Rat norm_growth_sample(const Hodge& h, const TorusAutomorphism& g, int p, int q,
                       unsigned long m) {
  require(m >= 1, Errc::BadParameters, "m must be >= 1");
  Mat action = h.action_pq(g, p, q);
  return action.pow(m).max_abs_entry();
}

namespace {

// log2 of a positive rational within +-1, via limb counts
long log2_approx(const Rat& r) {
  require(r > 0, Errc::Internal, "log2 of a nonpositive value");
  long num = long(mpz_sizeinbase(r.get_num().get_mpz_t(), 2));
  long den = long(mpz_sizeinbase(r.get_den().get_mpz_t(), 2));
  return num - den;
}

} // namespace

int growth_slope_estimate(const Hodge& h, const TorusAutomorphism& g, int p, int q) {
  Mat action = h.action_pq(g, p, q);
  // norms at m = 2^4 .. 2^12 by repeated squaring of the power
  Mat power = action.pow(16);
  std::vector<long> logs;
  logs.push_back(log2_approx(power.max_abs_entry() + 1));
  for (int k = 5; k <= 12; ++k) {
    power = power * power;
    logs.push_back(log2_approx(power.max_abs_entry() + 1));
  }
  // slope per octave, averaged over the upper half where the top term dominates
  double acc = 0;
  int cnt = 0;
  for (size_t i = logs.size() / 2; i + 1 < logs.size(); ++i) {
    acc += double(logs[i + 1] - logs[i]);
    ++cnt;
  }
  double slope = (cnt > 0) ? acc / cnt : 0.0;
  return int(slope + 0.5);
}

int generic_h11_top_index(const Hodge& h, const TorusAutomorphism& g, unsigned long seed) {
  std::mt19937_64 rng(seed);
  const int n = h.n();
  auto sample = [&]() {
    Mat b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        b.at(i, j) = GaussRat(Rat(long(rng() % 7) - 3), Rat(long(rng() % 7) - 3));
    return HermitianClass{b * b.conj_transpose() + Mat::identity(n)};
  };
  int best = -1;
  int prev = -2;
  for (int trial = 0; trial < 5; ++trial) {
    int top = expansion_classes(h, g, sample()).top_index;
    best = std::max(best, top);
    if (top == prev) break; // stabilized across two independent samples
    prev = top;
  }
  return best;
}

} // namespace unicoh

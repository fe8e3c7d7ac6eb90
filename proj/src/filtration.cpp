#include "unicoh/filtration.hpp"

#include "unicoh/errors.hpp"

namespace unicoh {

// ---------------------------------------------------------------------------
// Subspace helpers
// ---------------------------------------------------------------------------

Mat subspace_sum(const Mat& a, const Mat& b) {
  if (a.cols() == 0) return column_space(b);
  if (b.cols() == 0) return column_space(a);
  return column_space(a.hcat(b));
}

Mat subspace_intersection(const Mat& a, const Mat& b) {
  if (a.cols() == 0 || b.cols() == 0) return Mat(a.rows(), 0);
  Mat k = kernel_basis(a.hcat(-b));
  Mat result(a.rows(), k.cols());
  for (int c = 0; c < k.cols(); ++c)
    for (int i = 0; i < a.rows(); ++i) {
      GaussRat acc;
      for (int j = 0; j < a.cols(); ++j) acc += a.at(i, j) * k.at(j, c);
      result.at(i, c) = std::move(acc);
    }
  return column_space(result);
}

Mat preimage_mod(const Mat& map, const Mat& target) {
  if (target.cols() == 0) return kernel_basis(map);
  Mat k = kernel_basis(map.hcat(target));
  Mat xs(map.cols(), k.cols());
  for (int c = 0; c < k.cols(); ++c)
    for (int i = 0; i < map.cols(); ++i) xs.at(i, c) = k.at(i, c);
  return column_space(xs);
}

// ---------------------------------------------------------------------------
// Chain construction
// ---------------------------------------------------------------------------

namespace {

void check_chain_inputs(const Hodge& h, const HermitianClass& omega) {
  require(omega.h.rows() == h.n(), Errc::BadParameters, "Kahler class size mismatch");
  require(is_kahler(omega), Errc::NotKahler, "chain construction needs a Kahler base class");
}

} // namespace

InvariantChain build_chain_cyclic(const Hodge& h, const TorusAutomorphism& g,
                                  const HermitianClass& omega) {
  require(is_unipotent(g.mat), Errc::NotUnipotent, "build_chain_cyclic");
  check_chain_inputs(h, omega);
  ExpansionRecord rec = expansion_classes(h, g, omega);
  InvariantChain chain;
  chain.omega = omega;
  chain.levels.push_back(HodgeClass::one(h.n()));
  for (int i = 0; i < h.n(); ++i) {
    int k_max = -1;
    for (int k = 0; k <= rec.top_index; ++k)
      if (!cup(chain.levels.back(), rec.omega_classes[k]).is_zero()) k_max = k;
    if (k_max < 0) fail(Errc::ChainStalled, "no surviving expansion class at level " +
                                                 std::to_string(i));
    HodgeClass next = cup(chain.levels.back(), rec.omega_classes[k_max]);
    // exact invariance: maximality of k kills L_i omega_{k+1}
    require(h.pullback(g, next) == next, Errc::Internal, "chain level not invariant");
    chain.levels.push_back(next);
    chain.witnesses.push_back(h.class_to_hermitian(rec.omega_classes[k_max]));
    chain.dominant_k.push_back(k_max);
  }
  return chain;
}

InvariantChain build_chain_group(const Hodge& h, const std::vector<TorusAutomorphism>& gens,
                                 const HermitianClass& omega, int max_rounds) {
  check_chain_inputs(h, omega);
  for (const auto& g : gens)
    require(is_unipotent(g.mat), Errc::NotUnipotent, "build_chain_group");
  const int n = h.n();
  if (max_rounds <= 0) max_rounds = 4 * n * n + 8;
  std::vector<Mat> actions;
  for (const auto& g : gens) actions.push_back(h.action_pq(g, 1, 1));

  InvariantChain chain;
  chain.omega = omega;
  chain.levels.push_back(HodgeClass::one(n));
  const HodgeClass omega_class = h.hermitian_to_class(omega);

  for (int i = 0; i < n; ++i) {
    const HodgeClass& level = chain.levels.back();
    HodgeClass c = omega_class;
    bool stable = false;
    for (int round = 0; round < max_rounds && !stable; ++round) {
      stable = true;
      for (const Mat& act : actions) {
        HodgeClass moved = h.apply(act, c) - c;
        if (cup(level, moved).is_zero()) continue;
        // dominant term of L_i (g^m)^* c for this generator
        HodgeClass cur = c;
        HodgeClass best = c;
        int steps = 0;
        while (true) {
          cur = h.apply(act, cur) - cur;
          if (cur.is_zero()) break;
          if (!cup(level, cur).is_zero()) best = cur;
          require(++steps <= n * n + 1, Errc::Internal, "unipotent expansion runaway");
        }
        c = best;
        stable = false;
        break;
      }
    }
    if (!stable)
      fail(Errc::LChainNotFound, "no jointly fixed dominant class at level " + std::to_string(i));
    HodgeClass next = cup(level, c);
    if (next.is_zero()) fail(Errc::ChainStalled, "chain level vanished at " + std::to_string(i));
    for (const auto& g : gens)
      require(h.pullback(g, next) == next, Errc::Internal, "group chain level not invariant");
    chain.levels.push_back(next);
    chain.witnesses.push_back(h.class_to_hermitian(c));
    chain.dominant_k.push_back(-1); // joint extraction, no single expansion index
  }
  return chain;
}

// ---------------------------------------------------------------------------
// Spaces
// ---------------------------------------------------------------------------

namespace {

/// Spanning bases of the subspaces generated by k-fold products of real
/// (1,1) classes, degree by degree.
std::vector<std::vector<HodgeClass>> product_spans(const Hodge& h, int up_to) {
  RealStructure r1(h, 1);
  std::vector<std::vector<HodgeClass>> spans(size_t(up_to) + 1);
  spans[0] = {HodgeClass::one(h.n())};
  for (int k = 1; k <= up_to; ++k) {
    RealStructure rk(h, k);
    SpanBuilder sb(rk.dim());
    for (const HodgeClass& prev : spans[k - 1])
      for (const HodgeClass& b : r1.basis()) {
        HodgeClass prod = cup(prev, b);
        if (prod.is_zero()) continue;
        if (sb.add(rk.to_coords(prod))) spans[k].push_back(prod);
      }
  }
  return spans;
}

} // namespace

FiltrationSpaces compute_spaces(const Hodge& h, const InvariantChain& chain) {
  const int n = h.n();
  require(int(chain.levels.size()) == n + 1, Errc::InvalidChain, "chain has wrong length");
  require(chain.levels[0] == HodgeClass::one(n), Errc::InvalidChain, "chain must start at 1");
  for (int i = 0; i <= n; ++i)
    require(!chain.levels[i].is_zero(), Errc::InvalidChain, "chain level is zero");

  FiltrationSpaces out;
  out.n = n;
  std::vector<RealStructure> reals;
  reals.reserve(size_t(n) + 1);
  for (int i = 0; i <= n; ++i) reals.emplace_back(h, i);
  RealStructure& r1 = reals[1];
  auto spans = product_spans(h, n);

  // N^i: kernel of the pairing against (n-i)-fold products of (1,1) classes
  out.nspace.resize(size_t(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const auto& opp = spans[n - i];
    Mat pairing(int(opp.size()), reals[i].dim());
    for (int row = 0; row < int(opp.size()); ++row)
      for (int col = 0; col < reals[i].dim(); ++col)
        pairing.at(row, col) = GaussRat(h.eval_top(cup(reals[i].basis()[col], opp[row])));
    out.nspace[i] = kernel_basis(pairing);
  }

  // F_i = preimage of N^{i+1} under multiplication by L_i
  out.f.resize(size_t(n) + 1);
  for (int i = 0; i < n; ++i) {
    Mat mult(reals[i + 1].dim(), r1.dim());
    for (int col = 0; col < r1.dim(); ++col)
      mult.set_col(col, reals[i + 1].to_coords(cup(chain.levels[i], r1.basis()[col])));
    out.f[i] = preimage_mod(mult, out.nspace[i + 1]);
  }
  out.f[n] = Mat::identity(r1.dim());

  // F'_i = F_{i-1} + {c in F_i : L_{i-1} c d in N^{i+1} for all d in F_i}
  out.fprime.resize(size_t(n) + 1);
  out.fprime[0] = Mat(r1.dim(), 0);
  for (int i = 1; i <= n; ++i) {
    if (i == n) {
      out.fprime[n] = Mat::identity(r1.dim());
      continue;
    }
    const Mat& fi = out.f[i];
    const int fdim = fi.cols();
    if (fdim == 0) {
      out.fprime[i] = out.f[i - 1];
      continue;
    }
    std::vector<HodgeClass> fbasis;
    for (int c = 0; c < fdim; ++c) fbasis.push_back(r1.from_coords(fi.col(c)));
    std::vector<HodgeClass> half; // L_{i-1} . (basis of F_i)
    for (const auto& b : fbasis) half.push_back(cup(chain.levels[i - 1], b));
    Mat cut(r1.dim(), 0);
    bool first = true;
    for (int d = 0; d < fdim; ++d) {
      Mat a(reals[i + 1].dim(), fdim);
      for (int j = 0; j < fdim; ++j)
        a.set_col(j, reals[i + 1].to_coords(cup(half[j], fbasis[d])));
      Mat xd = preimage_mod(a, out.nspace[i + 1]); // in F_i coordinates
      cut = first ? xd : subspace_intersection(cut, xd);
      first = false;
      if (cut.cols() == 0) break;
    }
    // back to ambient coordinates
    Mat ambient(r1.dim(), cut.cols());
    for (int c = 0; c < cut.cols(); ++c)
      for (int row = 0; row < r1.dim(); ++row) {
        GaussRat acc;
        for (int j = 0; j < fdim; ++j) acc += fi.at(row, j) * cut.at(j, c);
        ambient.at(row, c) = std::move(acc);
      }
    out.fprime[i] = subspace_sum(out.f[i - 1], ambient);
    require(out.fprime[i].cols() - out.f[i - 1].cols() <= 1, Errc::InvalidChain,
            "dim F'_i / F_{i-1} exceeds 1");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quadratic forms
// ---------------------------------------------------------------------------

Mat quadratic_form_gram(const Hodge& h, const InvariantChain& chain, int i,
                        const std::vector<HermitianClass>& kahler_tuple) {
  const int n = h.n();
  require(i >= 0 && i <= n - 2, Errc::BadDegree, "Q is defined for 0 <= i <= n-2");
  require(int(kahler_tuple.size()) == n - i - 2, Errc::BadDegree,
          "Q wants n-i-2 Kahler classes");
  for (const auto& c : kahler_tuple) require(is_kahler(c), Errc::NotKahler, "Q tuple entry");
  RealStructure r1(h, 1);
  HodgeClass weight = chain.levels[i];
  for (const auto& c : kahler_tuple) weight = cup(weight, h.hermitian_to_class(c));
  const int d = r1.dim();
  // cache L_i c_1..c_{n-i-2} B_a, then pair with B_b
  std::vector<HodgeClass> partial(d);
  for (int a = 0; a < d; ++a) partial[a] = cup(weight, r1.basis()[a]);
  Mat gram(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) {
      Rat v = h.eval_top(cup(partial[a], r1.basis()[b]));
      gram.at(a, b) = GaussRat(v);
      gram.at(b, a) = GaussRat(v);
    }
  return gram;
}

Mat primitive_space(const Hodge& h, const InvariantChain& chain, int i,
                    const std::vector<HermitianClass>& kahler_tuple) {
  const int n = h.n();
  require(i >= 0 && i <= n - 1, Errc::BadDegree, "P is defined for 0 <= i <= n-1");
  require(int(kahler_tuple.size()) == n - i - 1, Errc::BadDegree,
          "P wants n-i-1 Kahler classes");
  RealStructure r1(h, 1);
  HodgeClass weight = chain.levels[i];
  for (const auto& c : kahler_tuple) weight = cup(weight, h.hermitian_to_class(c));
  Mat row(1, r1.dim());
  for (int a = 0; a < r1.dim(); ++a)
    row.at(0, a) = GaussRat(h.eval_top(cup(weight, r1.basis()[a])));
  return kernel_basis(row);
}

Mat restrict_form(const Mat& gram, const Mat& basis) {
  return basis.transpose() * gram * basis;
}

// ---------------------------------------------------------------------------
// s-sequence, H-levels, primitive roots
// ---------------------------------------------------------------------------

namespace {

int membership_level(const FiltrationSpaces& spaces, const std::vector<GaussRat>& coords) {
  for (int i = 0; i <= spaces.n; ++i)
    if (in_span(spaces.f[i], coords)) return i;
  return spaces.n;
}

} // namespace

SSequenceResult s_sequence(const Hodge& h, const TorusAutomorphism& g,
                           const InvariantChain& chain, const FiltrationSpaces& spaces,
                           const HermitianClass& omega) {
  require(is_unipotent(g.mat), Errc::NotUnipotent, "s_sequence");
  SSequenceResult res;
  if (h.action_pq(g, 1, 1).is_identity()) {
    res.trivially_acting = true;
    return res;
  }
  ExpansionRecord rec = expansion_classes(h, g, omega);
  RealStructure r1(h, 1);
  const int n = h.n();
  auto fail_check = [&](const std::string& msg) {
    res.checks_pass = false;
    res.failures.push_back(msg);
  };

  int prev_s = n; // s_0 = n
  for (int j = 1;; ++j) {
    const HodgeClass& odd = rec.omega(2 * j - 1);
    if (odd.is_zero()) {
      res.r = j - 1;
      // a nontrivially acting element has unbounded Kahler orbits, so the
      // expansion of any Kahler class must reach weight 1
      if (res.r == 0) fail_check("empty sequence for a nontrivially acting element");
      break;
    }
    auto odd_coords = r1.to_coords(odd);
    int s = membership_level(spaces, odd_coords);
    res.s.push_back(s);
    if (!(s < prev_s && s >= 1)) fail_check("s_" + std::to_string(j) + " fails strict decrease");
    prev_s = s;
    if (in_span(spaces.fprime[s], odd_coords))
      fail_check("omega_{2j-1} lies in F'_{s_j} at j=" + std::to_string(j));
    const HodgeClass& even = rec.omega(2 * j);
    if (even.is_zero()) {
      fail_check("omega_{2j} vanished before omega_{2j-1} at j=" + std::to_string(j));
      res.r = j;
      break;
    }
    auto even_coords = r1.to_coords(even);
    if (!in_span(spaces.fprime[s], even_coords))
      fail_check("omega_{2j} outside F'_{s_j} at j=" + std::to_string(j));
    if (in_span(spaces.f[s - 1], even_coords))
      fail_check("omega_{2j} inside F_{s_j - 1} at j=" + std::to_string(j));
    if (spaces.dim_fprime(s) - spaces.dim_f(s - 1) != 1)
      fail_check("dim F'_{s_j}/F_{s_j-1} != 1 at j=" + std::to_string(j));

    // positive proportionality to the chain witness modulo F_{s-1}, certified
    // by intersection numbers against omega powers
    HodgeClass kahler_power = HodgeClass::one(n);
    HodgeClass omega_class = h.hermitian_to_class(chain.omega);
    for (int t = 0; t < n - s; ++t) kahler_power = cup(kahler_power, omega_class);
    Rat den = h.eval_top(cup(chain.levels[s], kahler_power));
    Rat num = h.eval_top(cup(cup(chain.levels[s - 1], even), kahler_power));
    if (den <= 0)
      fail_check("degenerate denominator in proportionality certificate at j=" +
                 std::to_string(j));
    else if (num <= 0)
      fail_check("omega_{2j} not positively proportional to M_{s_j} at j=" + std::to_string(j));
    if (2 * j > 2 * n) {
      fail_check("expansion fails to terminate");
      break;
    }
  }
  if (res.r > n - 1) fail_check("r exceeds n-1");
  return res;
}

int h_level(const Hodge& h, const TorusAutomorphism& g, const FiltrationSpaces& spaces) {
  RealStructure r1(h, 1);
  Mat shift = r1.real_action(h, g) - Mat::identity(r1.dim());
  for (int i = 0; i <= spaces.n; ++i) {
    bool inside = true;
    for (int c = 0; c < shift.cols() && inside; ++c)
      inside = in_span(spaces.f[i], shift.col(c));
    if (inside) return i;
  }
  return spaces.n;
}

std::vector<HermitianClass> kahler_test_family(int n) {
  std::vector<HermitianClass> fam;
  fam.push_back(HermitianClass{Mat::identity(n)});
  for (int a = 0; a < n; ++a) {
    Mat m = Mat::identity(n);
    m.at(a, a) = GaussRat(2);
    fam.push_back(HermitianClass{m});
  }
  const GaussRat half(Rat(1, 2));
  const GaussRat ihalf(Rat(0), Rat(1, 2));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      Mat m = Mat::identity(n);
      m.at(a, b) = half;
      m.at(b, a) = half;
      fam.push_back(HermitianClass{m});
      Mat k = Mat::identity(n);
      k.at(a, b) = ihalf;
      k.at(b, a) = -ihalf;
      fam.push_back(HermitianClass{k});
    }
  for (const auto& c : fam) require(is_kahler(c), Errc::Internal, "family entry not PD");
  return fam;
}

std::optional<Rat> primitive_root_scale(const Hodge& h, const InvariantChain& chain,
                                        const FiltrationSpaces& spaces, int j,
                                        const HermitianClass& c) {
  const int n = h.n();
  require(j >= 1 && j <= n - 1, Errc::BadDegree, "W_j is defined for 1 <= j <= n-1");
  RealStructure r1(h, 1);
  HodgeClass cclass = h.hermitian_to_class(c);
  if (!in_span(spaces.f[j], r1.to_coords(cclass))) fail(Errc::NotInFj, "class not in F_j");

  // witness ray from the chain certificate: L_j omega lies in Nef(L_j)\{0};
  // the scale of the witness is part of the existential and gets computed
  HodgeClass compensator = cup(chain.levels[j - 1],
                               cup(h.hermitian_to_class(chain.witnesses[j - 1]),
                                   h.hermitian_to_class(chain.omega)));
  HodgeClass square = cup(chain.levels[j - 1], cup(cclass, cclass));

  auto fam = kahler_test_family(n);
  const int arity = n - j - 1;
  Rat scale(0);
  std::vector<int> pick(size_t(std::max(arity, 0)), 0);
  while (true) {
    HodgeClass comp_prod = compensator;
    HodgeClass sq_prod = square;
    for (int t = 0; t < arity; ++t) {
      HodgeClass k = h.hermitian_to_class(fam[pick[t]]);
      comp_prod = cup(comp_prod, k);
      sq_prod = cup(sq_prod, k);
    }
    Rat t1 = h.eval_top(comp_prod);
    Rat t2 = h.eval_top(sq_prod);
    if (t2 < 0) {
      if (t1 <= 0) return std::nullopt; // nothing compensates on this tuple
      Rat needed = -t2 / t1;
      if (needed > scale) scale = needed;
    }
    int t = arity - 1;
    while (t >= 0 && pick[t] == int(fam.size()) - 1) --t;
    if (t < 0) break;
    ++pick[t];
    for (int u = t + 1; u < arity; ++u) pick[u] = pick[t];
  }
  if (scale == 0) scale = 1;
  return scale;
}

bool primitive_root_membership(const Hodge& h, const InvariantChain& chain,
                               const FiltrationSpaces& spaces, int j, const HermitianClass& c,
                               std::optional<Rat> fixed_witness_scale) {
  auto scale = primitive_root_scale(h, chain, spaces, j, c);
  if (!scale) return false;
  if (fixed_witness_scale) return *scale <= *fixed_witness_scale;
  return true;
}

} // namespace unicoh

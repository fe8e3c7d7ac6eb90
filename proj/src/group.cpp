#include "unicoh/group.hpp"

#include <atomic>

#include "unicoh/errors.hpp"
#include "unicoh/torus.hpp"

namespace unicoh {

void validate_group(const GroupPresentation& g) {
  require(g.ambient_dim >= 1, Errc::BadParameters, "ambient dimension must be positive");
  for (size_t i = 0; i < g.generators.size(); ++i) {
    const Mat& m = g.generators[i];
    require(m.rows() == g.ambient_dim && m.cols() == g.ambient_dim, Errc::BadParameters,
            "generator " + std::to_string(i) + " has wrong shape");
    require(m.is_integer(), Errc::BadParameters,
            "generator " + std::to_string(i) + " is not integral");
    GaussRat d = det(m);
    require(d == GaussRat(1) || d == GaussRat(Rat(-1)), Errc::BadParameters,
            "generator " + std::to_string(i) + " is not invertible over the integers");
  }
}

bool all_generators_unipotent(const GroupPresentation& g) {
  for (const Mat& m : g.generators)
    if (!is_unipotent(m)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Affine groups
// ---------------------------------------------------------------------------

void validate_affine_group(const AffineGroupPresentation& g) {
  require(g.linear_dim >= 1, Errc::BadParameters, "linear dimension must be positive");
  for (size_t i = 0; i < g.generators.size(); ++i) {
    const AffineGen& a = g.generators[i];
    require(a.linear.rows() == g.linear_dim && a.linear.cols() == g.linear_dim,
            Errc::BadParameters, "affine generator " + std::to_string(i) + " has wrong shape");
    require(int(a.translation.size()) == g.linear_dim, Errc::BadParameters,
            "affine generator " + std::to_string(i) + " has wrong translation length");
    if (!is_unipotent(a.linear))
      fail(Errc::NotUnipotent, "affine generator " + std::to_string(i) + " linear part");
  }
}

AffineGen affine_identity(int k) {
  return AffineGen{Mat::identity(k), std::vector<Rat>(size_t(k), Rat(0))};
}

AffineGen affine_compose(const AffineGen& a, const AffineGen& b, bool mod_lattice) {
  AffineGen r;
  r.linear = a.linear * b.linear;
  const int k = a.linear.rows();
  r.translation.assign(size_t(k), Rat(0));
  for (int i = 0; i < k; ++i) {
    GaussRat acc;
    for (int j = 0; j < k; ++j) acc += a.linear.at(i, j) * GaussRat(b.translation[j]);
    Rat t = acc.re + a.translation[i];
    r.translation[i] = mod_lattice ? rat_mod1(t) : t;
  }
  return r;
}

AffineGen affine_inverse(const AffineGen& a, bool mod_lattice) {
  auto inv = inverse(a.linear);
  require(inv.has_value(), Errc::BadParameters, "affine linear part not invertible");
  AffineGen r;
  r.linear = *inv;
  const int k = a.linear.rows();
  r.translation.assign(size_t(k), Rat(0));
  for (int i = 0; i < k; ++i) {
    GaussRat acc;
    for (int j = 0; j < k; ++j) acc += r.linear.at(i, j) * GaussRat(a.translation[j]);
    Rat t = -acc.re;
    r.translation[i] = mod_lattice ? rat_mod1(t) : t;
  }
  return r;
}

bool affine_is_identity(const AffineGen& a) {
  if (!a.linear.is_identity()) return false;
  for (const Rat& t : a.translation)
    if (t != 0) return false;
  return true;
}

GroupPresentation affine_to_unipotent(const AffineGroupPresentation& g) {
  validate_affine_group(g);
  const int k = g.linear_dim;
  auto embed = [&](const AffineGen& a) {
    Mat m = Mat::identity(k + 1);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) m.at(i, j) = a.linear.at(i, j);
      m.at(i, k) = GaussRat(a.translation[i]);
    }
    return m;
  };
  // isomorphism onto the image: composition maps to matrix product
  for (const AffineGen& a : g.generators)
    for (const AffineGen& b : g.generators) {
      Mat lhs = embed(affine_compose(a, b, g.mod_lattice));
      Mat rhs = embed(a) * embed(b);
      require(lhs == rhs, Errc::Internal, "block embedding failed to be multiplicative");
    }
  GroupPresentation out;
  out.ambient_dim = k + 1;
  for (const AffineGen& a : g.generators) out.generators.push_back(embed(a));
  return out;
}

// ---------------------------------------------------------------------------
// Lie algebra of the Zariski closure
// ---------------------------------------------------------------------------

Mat bracket(const Mat& x, const Mat& y) { return x * y - y * x; }

bool is_nilpotent(const Mat& x) {
  if (!x.is_square()) return false;
  Mat p = x;
  for (int k = 1; k <= x.rows(); ++k) {
    if (p.is_zero()) return true;
    if (k < x.rows()) p = p * x;
  }
  return false;
}

namespace {

std::vector<GaussRat> flatten(const Mat& m) {
  std::vector<GaussRat> v;
  v.reserve(size_t(m.rows()) * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
  return v;
}

/// Span of matrices inside the N x N matrix space.
class MatSpan {
public:
  explicit MatSpan(int n) : sb_(n * n) {}
  bool add(const Mat& m) {
    if (!sb_.add(flatten(m))) return false;
    basis_.push_back(m);
    return true;
  }
  const std::vector<Mat>& basis() const { return basis_; }
  int dim() const { return int(basis_.size()); }

private:
  SpanBuilder sb_;
  std::vector<Mat> basis_;
};

std::vector<Mat> bracket_span(int n, const std::vector<Mat>& a, const std::vector<Mat>& b) {
  MatSpan out(n);
  for (const Mat& x : a)
    for (const Mat& y : b) out.add(bracket(x, y));
  return out.basis();
}

} // namespace

NilpotentLieAlgebra lie_closure_mats(int ambient_dim, const std::vector<Mat>& gens) {
  MatSpan span(ambient_dim);
  for (size_t i = 0; i < gens.size(); ++i) {
    if (!is_unipotent(gens[i])) fail(Errc::NotUnipotent, "generator " + std::to_string(i));
    Mat x = unipotent_log(gens[i]);
    if (!x.is_zero()) span.add(x);
  }
  // close under brackets; every unordered pair of the growing basis is seen
  for (size_t a = 1; a < span.basis().size(); ++a)
    for (size_t b = 0; b < a; ++b) span.add(bracket(span.basis()[a], span.basis()[b]));
  NilpotentLieAlgebra out{ambient_dim, span.basis()};
  for (const Mat& x : out.basis)
    if (!is_nilpotent(x))
      fail(Errc::NotUnipotent, "generated group is not unipotent (non-nilpotent log algebra)");
  return out;
}

int nilpotency_class_mats(int ambient_dim, const std::vector<Mat>& gens) {
  return lie_nilpotency_class(lie_closure_mats(ambient_dim, gens));
}

int derived_length_mats(int ambient_dim, const std::vector<Mat>& gens) {
  return lie_derived_length(lie_closure_mats(ambient_dim, gens));
}

NilpotentLieAlgebra lie_closure(const GroupPresentation& g) {
  validate_group(g);
  return lie_closure_mats(g.ambient_dim, g.generators);
}

int lie_nilpotency_class(const NilpotentLieAlgebra& l) {
  std::vector<Mat> cur = l.basis;
  int p = 0;
  while (!cur.empty()) {
    cur = bracket_span(l.ambient_dim, l.basis, cur);
    ++p;
    require(p <= l.ambient_dim * l.ambient_dim, Errc::NotUnipotent,
            "lower central series does not terminate");
  }
  return p;
}

int lie_derived_length(const NilpotentLieAlgebra& l) {
  std::vector<Mat> cur = l.basis;
  int p = 0;
  while (!cur.empty()) {
    cur = bracket_span(l.ambient_dim, cur, cur);
    ++p;
    require(p <= l.ambient_dim * l.ambient_dim, Errc::NotUnipotent,
            "derived series does not terminate");
  }
  return p;
}

int nilpotency_class(const GroupPresentation& g) { return lie_nilpotency_class(lie_closure(g)); }

int derived_length(const GroupPresentation& g) { return lie_derived_length(lie_closure(g)); }

// ---------------------------------------------------------------------------
// Left-normed commutator enumeration
// ---------------------------------------------------------------------------

namespace {

struct Elt {
  Mat m, inv;
};

// depth-first over [c, g_{i}] extensions; returns false on a nonvanishing
// weight-`weight` commutator
bool lcs_dfs(const std::vector<Elt>& gens, const Elt& c, int depth, int weight,
             std::atomic<bool>* abort) {
  if (abort && abort->load(std::memory_order_relaxed)) return false;
  if (c.m.is_identity()) return true; // all further extensions stay trivial
  if (depth == weight) return false;  // nontrivial commutator of full weight
  for (const Elt& g : gens) {
    Elt next;
    next.m = c.m * g.m * c.inv * g.inv;
    if (next.m.is_identity()) continue;
    next.inv = g.m * c.m * g.inv * c.inv;
    if (!lcs_dfs(gens, next, depth + 1, weight, abort)) {
      if (abort) abort->store(true, std::memory_order_relaxed);
      return false;
    }
  }
  return true;
}

std::vector<Elt> prepare_elts(const GroupPresentation& g) {
  std::vector<Elt> gens;
  gens.reserve(g.generators.size());
  for (const Mat& m : g.generators) {
    auto inv = inverse(m);
    require(inv.has_value(), Errc::BadParameters, "generator not invertible");
    gens.push_back({m, *inv});
  }
  return gens;
}

} // namespace

bool lcs_oracle_serial(const GroupPresentation& g, int weight) {
  require(weight >= 1, Errc::BadParameters, "weight must be >= 1");
  validate_group(g);
  std::vector<Elt> gens = prepare_elts(g);
  for (const Elt& e : gens)
    if (!lcs_dfs(gens, e, 1, weight, nullptr)) return false;
  return true;
}

bool lcs_oracle(const GroupPresentation& g, int weight) {
  require(weight >= 1, Errc::BadParameters, "weight must be >= 1");
  validate_group(g);
  std::vector<Elt> gens = prepare_elts(g);
  std::atomic<bool> bad{false};
#ifdef UNICOH_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < long(gens.size()); ++i) {
    if (bad.load(std::memory_order_relaxed)) continue;
    if (!lcs_dfs(gens, gens[i], 1, weight, &bad)) bad.store(true, std::memory_order_relaxed);
  }
#else
  for (size_t i = 0; i < gens.size() && !bad.load(); ++i)
    if (!lcs_dfs(gens, gens[i], 1, weight, &bad)) bad.store(true);
#endif
  return !bad.load();
}

bool affine_lcs_trivial(const AffineGroupPresentation& g, int weight) {
  require(weight >= 1, Errc::BadParameters, "weight must be >= 1");
  validate_affine_group(g);
  struct AElt {
    AffineGen a, inv;
  };
  std::vector<AElt> gens;
  for (const AffineGen& a : g.generators) gens.push_back({a, affine_inverse(a, g.mod_lattice)});
  const bool mod = g.mod_lattice;

  // recursive lambda over the left-normed tree, pruned at identities
  auto dfs = [&](auto&& self, const AElt& c, int depth) -> bool {
    if (affine_is_identity(c.a)) return true;
    if (depth == weight) return false;
    for (const AElt& h : gens) {
      AElt next;
      next.a = affine_compose(affine_compose(c.a, h.a, mod), affine_compose(c.inv, h.inv, mod), mod);
      next.inv = affine_compose(affine_compose(h.a, c.a, mod), affine_compose(h.inv, c.inv, mod), mod);
      if (!self(self, next, depth + 1)) return false;
    }
    return true;
  };
  for (const AElt& e : gens)
    if (!dfs(dfs, e, 1)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Commutator words and Id - g decompositions
// ---------------------------------------------------------------------------

WordPtr CommWord::make_gen(int i) {
  auto w = std::make_shared<CommWord>();
  w->kind = Kind::Gen;
  w->gen = i;
  return w;
}

WordPtr CommWord::make_gen_inv(int i) {
  auto w = std::make_shared<CommWord>();
  w->kind = Kind::GenInv;
  w->gen = i;
  return w;
}

WordPtr CommWord::make_comm(WordPtr x, WordPtr y) {
  auto w = std::make_shared<CommWord>();
  w->kind = Kind::Comm;
  w->a = std::move(x);
  w->b = std::move(y);
  return w;
}

WordPtr CommWord::make_prod(WordPtr x, WordPtr y) {
  auto w = std::make_shared<CommWord>();
  w->kind = Kind::Prod;
  w->a = std::move(x);
  w->b = std::move(y);
  return w;
}

int word_weight(const CommWord& w) {
  switch (w.kind) {
    case CommWord::Kind::Gen:
    case CommWord::Kind::GenInv: return 1;
    case CommWord::Kind::Comm: return word_weight(*w.a) + word_weight(*w.b);
    case CommWord::Kind::Prod: return std::min(word_weight(*w.a), word_weight(*w.b));
  }
  return 0;
}

WordPtr word_inverse(const WordPtr& w) {
  switch (w->kind) {
    case CommWord::Kind::Gen: return CommWord::make_gen_inv(w->gen);
    case CommWord::Kind::GenInv: return CommWord::make_gen(w->gen);
    case CommWord::Kind::Comm: return CommWord::make_comm(w->b, w->a);
    case CommWord::Kind::Prod:
      return CommWord::make_prod(word_inverse(w->b), word_inverse(w->a));
  }
  fail(Errc::MalformedWord, "unknown word node");
}

Mat word_eval(const CommWord& w, const std::vector<Mat>& gens) {
  switch (w.kind) {
    case CommWord::Kind::Gen:
    case CommWord::Kind::GenInv: {
      require(w.gen >= 0 && w.gen < int(gens.size()), Errc::MalformedWord,
              "generator index out of range");
      if (w.kind == CommWord::Kind::Gen) return gens[w.gen];
      auto inv = inverse(gens[w.gen]);
      require(inv.has_value(), Errc::MalformedWord, "generator not invertible");
      return *inv;
    }
    case CommWord::Kind::Comm: {
      Mat a = word_eval(*w.a, gens);
      Mat b = word_eval(*w.b, gens);
      auto ai = inverse(a);
      auto bi = inverse(b);
      require(ai && bi, Errc::MalformedWord, "word value not invertible");
      return a * b * *ai * *bi;
    }
    case CommWord::Kind::Prod: return word_eval(*w.a, gens) * word_eval(*w.b, gens);
  }
  fail(Errc::MalformedWord, "unknown word node");
}

std::vector<GammaTerm> gamma_decomposition(const CommWord& w, const std::vector<Mat>& gens) {
  const int n = gens.empty() ? 0 : gens[0].rows();
  switch (w.kind) {
    case CommWord::Kind::Gen:
    case CommWord::Kind::GenInv: {
      GammaTerm t;
      t.sign = 1;
      t.factors.emplace_back(Mat::identity(n), word_eval(w, gens));
      return {t};
    }
    case CommWord::Kind::Comm: {
      // Id - aba^{-1}b^{-1} = ab (Id - b^{-1})(Id - a^{-1}) - ab (Id - a^{-1})(Id - b^{-1})
      Mat a = word_eval(*w.a, gens);
      Mat b = word_eval(*w.b, gens);
      Mat ab = a * b;
      auto ta = gamma_decomposition(*word_inverse(w.a), gens);
      auto tb = gamma_decomposition(*word_inverse(w.b), gens);
      std::vector<GammaTerm> out;
      auto emit = [&](const std::vector<GammaTerm>& first, const std::vector<GammaTerm>& second,
                      int outer_sign) {
        for (const GammaTerm& t1 : first)
          for (const GammaTerm& t2 : second) {
            GammaTerm t;
            t.sign = outer_sign * t1.sign * t2.sign;
            t.factors = t1.factors;
            t.factors[0].first = ab * t.factors[0].first;
            t.factors.insert(t.factors.end(), t2.factors.begin(), t2.factors.end());
            out.push_back(std::move(t));
          }
      };
      emit(tb, ta, 1);
      emit(ta, tb, -1);
      return out;
    }
    case CommWord::Kind::Prod: {
      // Id - gg' = (Id - g) + (Id - g') - (Id - g)(Id - g')
      auto ta = gamma_decomposition(*w.a, gens);
      auto tb = gamma_decomposition(*w.b, gens);
      std::vector<GammaTerm> out = ta;
      out.insert(out.end(), tb.begin(), tb.end());
      for (const GammaTerm& t1 : ta)
        for (const GammaTerm& t2 : tb) {
          GammaTerm t;
          t.sign = -t1.sign * t2.sign;
          t.factors = t1.factors;
          t.factors.insert(t.factors.end(), t2.factors.begin(), t2.factors.end());
          out.push_back(std::move(t));
        }
      return out;
    }
  }
  fail(Errc::MalformedWord, "unknown word node");
}

bool gamma_decomposition_check(const std::vector<Mat>& gens, const CommWord& w, int l) {
  require(!gens.empty(), Errc::BadParameters, "no generators");
  const int n = gens[0].rows();
  require(word_weight(w) >= l + 1, Errc::MalformedWord,
          "word weight below the requested central depth");
  auto terms = gamma_decomposition(w, gens);
  Mat sum = Mat::zero(n, n);
  for (const GammaTerm& t : terms) {
    require(int(t.factors.size()) >= l + 1, Errc::Internal, "term shorter than guaranteed");
    Mat prod = Mat::identity(n);
    for (const auto& [h, g] : t.factors) prod = prod * h * (Mat::identity(n) - g);
    sum = (t.sign > 0) ? (sum + prod) : (sum - prod);
  }
  return sum == Mat::identity(n) - word_eval(w, gens);
}

Mat annihilation_product(const std::vector<Mat>& h_ops, const std::vector<Mat>& g_ops) {
  require(h_ops.size() == g_ops.size(), Errc::BadParameters, "operator lists differ in length");
  require(!h_ops.empty(), Errc::BadParameters, "empty operator lists");
  const int n = h_ops[0].rows();
  Mat prod = Mat::identity(n);
  for (size_t i = 0; i < h_ops.size(); ++i)
    prod = prod * h_ops[i] * (Mat::identity(n) - g_ops[i]);
  return prod;
}

bool flag_abelian_check(const std::vector<Mat>& s, const Mat& w) {
  if (s.empty()) return true;
  const int n = s[0].rows();
  SpanBuilder wspan(n);
  for (int j = 0; j < w.cols(); ++j) wspan.add(w.col(j));
  for (const Mat& g : s) {
    // identity on W
    for (int j = 0; j < w.cols(); ++j) {
      std::vector<GaussRat> img(n);
      for (int i = 0; i < n; ++i) {
        GaussRat acc;
        for (int k = 0; k < n; ++k) acc += g.at(i, k) * w.at(k, j);
        img[i] = std::move(acc);
      }
      if (img != w.col(j)) return false;
    }
    // identity on V/W: (g - I) V inside W
    Mat shift = g - Mat::identity(n);
    for (int j = 0; j < n; ++j)
      if (!wspan.contains(shift.col(j))) return false;
  }
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j)
      require(s[i] * s[j] == s[j] * s[i], Errc::Internal,
              "flag-trivial set failed to commute");
  return true;
}

} // namespace unicoh

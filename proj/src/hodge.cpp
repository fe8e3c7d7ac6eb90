#include "unicoh/hodge.hpp"

#include "unicoh/errors.hpp"
#include "unicoh/kernels.hpp"

namespace unicoh {

HodgeClass HodgeClass::zero(int n, int p, int q) {
  HodgeClass c;
  c.n = n;
  c.p = p;
  c.q = q;
  c.coords.assign(size_t(binomial_ul(n, p)) * binomial_ul(n, q), GaussRat());
  return c;
}

HodgeClass HodgeClass::one(int n) {
  HodgeClass c = zero(n, 0, 0);
  c.coords[0] = GaussRat(1);
  return c;
}

bool HodgeClass::is_zero() const {
  for (const auto& z : coords)
    if (!z.is_zero()) return false;
  return true;
}

HodgeClass HodgeClass::operator+(const HodgeClass& o) const {
  require(n == o.n && p == o.p && q == o.q, Errc::BadDegree, "degree mismatch in +");
  HodgeClass r = *this;
  for (size_t k = 0; k < coords.size(); ++k) r.coords[k] += o.coords[k];
  return r;
}

HodgeClass HodgeClass::operator-(const HodgeClass& o) const {
  require(n == o.n && p == o.p && q == o.q, Errc::BadDegree, "degree mismatch in -");
  HodgeClass r = *this;
  for (size_t k = 0; k < coords.size(); ++k) r.coords[k] -= o.coords[k];
  return r;
}

HodgeClass HodgeClass::operator*(const GaussRat& s) const {
  HodgeClass r = *this;
  for (auto& z : r.coords) z *= s;
  return r;
}

HodgeClass HodgeClass::conjugate() const {
  HodgeClass r = zero(n, q, p);
  const auto& ss = subsets(n, p);
  const auto& ts = subsets(n, q);
  const int nq = int(ts.size());
  const int np = int(ss.size());
  const GaussRat sign((p * q) % 2 == 0 ? 1 : -1);
  for (int s = 0; s < np; ++s)
    for (int t = 0; t < nq; ++t) {
      const GaussRat& z = coords[size_t(s) * nq + t];
      if (z.is_zero()) continue;
      r.coords[size_t(t) * np + s] = sign * z.conj();
    }
  return r;
}

bool HodgeClass::is_real() const { return p == q && conjugate() == *this; }

HodgeClass cup(const HodgeClass& a, const HodgeClass& b) {
  require(a.n == b.n, Errc::BadDegree, "cup on different tori");
  const int n = a.n;
  HodgeClass r = HodgeClass::zero(n, a.p + b.p, a.q + b.q);
  if (a.p + b.p > n || a.q + b.q > n) return r; // degree overflow
  const auto& sa_list = subsets(n, a.p);
  const auto& ta_list = subsets(n, a.q);
  const auto& sb_list = subsets(n, b.p);
  const auto& tb_list = subsets(n, b.q);
  const int naq = int(ta_list.size());
  const int nbq = int(tb_list.size());
  const int nrq = int(binomial_ul(n, a.q + b.q));
  const int swap_sign = (a.q * b.p) % 2 == 0 ? 1 : -1;
  for (size_t sa = 0; sa < sa_list.size(); ++sa)
    for (size_t ta = 0; ta < ta_list.size(); ++ta) {
      const GaussRat& za = a.coords[sa * naq + ta];
      if (za.is_zero()) continue;
      for (size_t sb = 0; sb < sb_list.size(); ++sb) {
        int ssign = merge_sign(sa_list[sa], sb_list[sb]);
        if (ssign == 0) continue;
        for (size_t tb = 0; tb < tb_list.size(); ++tb) {
          const GaussRat& zb = b.coords[sb * nbq + tb];
          if (zb.is_zero()) continue;
          int tsign = merge_sign(ta_list[ta], tb_list[tb]);
          if (tsign == 0) continue;
          int s_idx = subset_index(n, merge_sets(sa_list[sa], sb_list[sb]));
          int t_idx = subset_index(n, merge_sets(ta_list[ta], tb_list[tb]));
          int sgn = ssign * tsign * swap_sign;
          GaussRat term = za * zb;
          if (sgn < 0) term = -term;
          r.coords[size_t(s_idx) * nrq + t_idx] += term;
        }
      }
    }
  return r;
}

void validate_hermitian(const HermitianClass& c) {
  require(c.h.is_hermitian(), Errc::NotHermitian, "class matrix is not Hermitian");
}

bool is_nef(const HermitianClass& c) {
  validate_hermitian(c);
  return is_positive_semidefinite(c.h);
}

bool is_kahler(const HermitianClass& c) {
  validate_hermitian(c);
  return is_positive_definite(c.h);
}

// ---------------------------------------------------------------------------

Mat wedge_matrix(const Mat& a, int k) {
  const int n = a.rows();
  const auto& idx = subsets(n, k);
  const int dim = int(idx.size());
  Mat w(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) w.at(r, c) = (k == 0) ? GaussRat(1) : det(a.submatrix(idx[r], idx[c]));
  return w;
}

static void kron_col(const Mat& a, const Mat& b, Mat& out, int ja) {
  for (int jb = 0; jb < b.cols(); ++jb) {
    const int j = ja * b.cols() + jb;
    for (int ia = 0; ia < a.rows(); ++ia) {
      const GaussRat& x = a.at(ia, ja);
      if (x.is_zero()) continue;
      for (int ib = 0; ib < b.rows(); ++ib) {
        const GaussRat& y = b.at(ib, jb);
        if (y.is_zero()) continue;
        out.at(ia * b.rows() + ib, j) = x * y;
      }
    }
  }
}

Mat kron_serial(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int ja = 0; ja < a.cols(); ++ja) kron_col(a, b, out, ja);
  return out;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
#ifdef UNICOH_HAVE_OPENMP
  if (kernels::parallel_enabled() && long(out.rows()) * out.cols() >= 24 * 24) {
#pragma omp parallel for schedule(dynamic)
    for (int ja = 0; ja < a.cols(); ++ja) kron_col(a, b, out, ja);
    return out;
  }
#endif
  for (int ja = 0; ja < a.cols(); ++ja) kron_col(a, b, out, ja);
  return out;
}

// ---------------------------------------------------------------------------

Hodge::Hodge(TorusModel t) : torus_(std::move(t)) {
  auto [p10, p01] = hodge_split(torus_);
  phi10_ = std::move(p10);
  phi01_ = std::move(p01);
  // normalize the fundamental class so that the n-fold self-intersection of
  // the identity Hermitian class equals det(I) = 1
  HodgeClass acc = HodgeClass::one(n());
  HodgeClass unit = hermitian_to_class(HermitianClass{Mat::identity(n())});
  for (int k = 0; k < n(); ++k) acc = cup(acc, unit);
  require(!acc.coords[0].is_zero(), Errc::Internal, "degenerate top normalizer");
  top_gauss_ = acc.coords[0];
}

Mat Hodge::pullback_h10(const TorusAutomorphism& g) const {
  auto a = solve(phi10_, g.mat.transpose() * phi10_);
  require(a.has_value(), Errc::BadParameters, "automorphism does not preserve H^{1,0}");
  return *a;
}

Mat Hodge::action_pq(const TorusAutomorphism& g, int p, int q) const {
  require(p >= 0 && p <= n() && q >= 0 && q <= n(), Errc::BadDegree, "degree out of range");
  Mat a = pullback_h10(g);
  Mat wp = wedge_matrix(a, p);
  Mat wq = wedge_matrix(a.conj(), q);
  return kron(wp, wq);
}

HodgeClass Hodge::hermitian_to_class(const HermitianClass& c) const {
  validate_hermitian(c);
  require(c.h.rows() == n(), Errc::BadDegree, "Hermitian matrix size mismatch");
  HodgeClass out = HodgeClass::zero(n(), 1, 1);
  for (int j = 0; j < n(); ++j)
    for (int k = 0; k < n(); ++k) out.coords[size_t(j) * n() + k] = GaussRat::i() * c.h.at(j, k);
  return out;
}

HermitianClass Hodge::class_to_hermitian(const HodgeClass& c) const {
  require(c.p == 1 && c.q == 1 && c.n == n(), Errc::BadDegree, "expected a (1,1)-class");
  Mat h(n(), n());
  for (int j = 0; j < n(); ++j)
    for (int k = 0; k < n(); ++k) h.at(j, k) = c.coords[size_t(j) * n() + k] / GaussRat::i();
  HermitianClass out{std::move(h)};
  validate_hermitian(out);
  return out;
}

Rat Hodge::eval_top(const HodgeClass& c) const {
  require(c.p == n() && c.q == n(), Errc::BadDegree, "eval_top wants a top class");
  GaussRat v = c.coords[0] / top_gauss_;
  require(v.im == 0, Errc::Internal, "top evaluation of a non-real class");
  return v.re;
}

Rat Hodge::intersection_number(const std::vector<HermitianClass>& classes) const {
  require(int(classes.size()) == n(), Errc::WrongArity, "intersection_number wants n classes");
  HodgeClass acc = HodgeClass::one(n());
  for (const auto& h : classes) acc = cup(acc, hermitian_to_class(h));
  return eval_top(acc);
}

Rat Hodge::intersection_number_polarized(const std::vector<HermitianClass>& classes) const {
  require(int(classes.size()) == n(), Errc::WrongArity, "polarized form wants n classes");
  const int m = n();
  Rat acc(0);
  for (unsigned long mask = 1; mask < (1UL << m); ++mask) {
    Mat s = Mat::zero(m, m);
    int bits = 0;
    for (int i = 0; i < m; ++i)
      if (mask & (1UL << i)) {
        s = s + classes[i].h;
        ++bits;
      }
    GaussRat d = det(s);
    require(d.im == 0, Errc::Internal, "Hermitian determinant must be real");
    if ((m - bits) % 2 == 0)
      acc += d.re;
    else
      acc -= d.re;
  }
  Rat fact(1);
  for (int k = 2; k <= m; ++k) fact *= k;
  return acc / fact;
}

HermitianClass Hodge::pullback_hermitian(const TorusAutomorphism& g, const HermitianClass& c) const {
  validate_hermitian(c);
  Mat a = pullback_h10(g);
  HermitianClass out{a * c.h * a.conj_transpose()};
  validate_hermitian(out);
  return out;
}

HodgeClass Hodge::apply(const Mat& action, const HodgeClass& c) const {
  require(action.cols() == c.dim(), Errc::BadDegree, "action/class dimension mismatch");
  HodgeClass out = HodgeClass::zero(c.n, c.p, c.q);
  for (int i = 0; i < action.rows(); ++i) {
    GaussRat acc;
    for (int j = 0; j < action.cols(); ++j) {
      if (action.at(i, j).is_zero() || c.coords[j].is_zero()) continue;
      acc += action.at(i, j) * c.coords[j];
    }
    out.coords[i] = std::move(acc);
  }
  return out;
}

HodgeClass Hodge::pullback(const TorusAutomorphism& g, const HodgeClass& c) const {
  return apply(action_pq(g, c.p, c.q), c);
}

// ---------------------------------------------------------------------------

RealStructure::RealStructure(const Hodge& hodge, int p) : n_(hodge.n()), p_(p) {
  const auto& sets = subsets(n_, p);
  const int np = int(sets.size());
  for (int s = 0; s < np; ++s) {
    for (int t = s; t < np; ++t) {
      HodgeClass x = HodgeClass::zero(n_, p, p);
      x.coords[size_t(s) * np + t] = GaussRat(1);
      HodgeClass xc = x.conjugate();
      if (t == s) {
        HodgeClass u = x + xc;
        if (!u.is_zero()) {
          basis_.push_back(u);
          support_.push_back({s * np + t, t * np + s, 0});
        } else {
          HodgeClass v = (x - xc) * GaussRat::i();
          basis_.push_back(v);
          support_.push_back({s * np + t, t * np + s, 0});
        }
      } else {
        basis_.push_back(x + xc);
        support_.push_back({s * np + t, t * np + s, 1});
        basis_.push_back((x - xc) * GaussRat::i());
        support_.push_back({s * np + t, t * np + s, 2});
      }
    }
  }
}

std::vector<GaussRat> RealStructure::to_coords(const HodgeClass& c) const {
  require(c.p == p_ && c.q == p_ && c.n == n_, Errc::BadDegree, "degree mismatch");
  std::vector<GaussRat> out(basis_.size());
  for (size_t k = 0; k < basis_.size(); ++k) {
    const GaussRat& z = c.coords[support_[k].st];
    switch (support_[k].kind) {
      case 0: out[k] = z / basis_[k].coords[support_[k].st]; break;
      case 1: out[k] = GaussRat(z.re); break;
      case 2: out[k] = GaussRat(z.im); break;
    }
  }
  // exact reconstruction doubles as the reality check
  HodgeClass back = from_coords(out);
  require(back == c, Errc::NotHermitian, "class is not a real (p,p)-class");
  return out;
}

HodgeClass RealStructure::from_coords(const std::vector<GaussRat>& v) const {
  require(v.size() == basis_.size(), Errc::BadDegree, "coordinate size mismatch");
  HodgeClass acc = HodgeClass::zero(n_, p_, p_);
  for (size_t k = 0; k < basis_.size(); ++k) {
    if (v[k].is_zero()) continue;
    acc = acc + basis_[k] * v[k];
  }
  return acc;
}

Mat RealStructure::real_action_of(const Mat& complex_action) const {
  Mat out(dim(), dim());
  for (int k = 0; k < dim(); ++k) {
    HodgeClass img = HodgeClass::zero(n_, p_, p_);
    for (int i = 0; i < complex_action.rows(); ++i) {
      GaussRat acc;
      for (int j = 0; j < complex_action.cols(); ++j) {
        if (complex_action.at(i, j).is_zero()) continue;
        if (basis_[k].coords[j].is_zero()) continue;
        acc += complex_action.at(i, j) * basis_[k].coords[j];
      }
      img.coords[i] = std::move(acc);
    }
    out.set_col(k, to_coords(img));
  }
  return out;
}

Mat RealStructure::real_action(const Hodge& hodge, const TorusAutomorphism& g) const {
  return real_action_of(hodge.action_pq(g, p_, p_));
}

} // namespace unicoh

#include "unicoh/matrix.hpp"

#include "unicoh/errors.hpp"
#include "unicoh/kernels.hpp"

namespace unicoh {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = GaussRat(1);
  return m;
}

Mat Mat::unit(int n, int i, int j) {
  Mat m(n, n);
  m.at(i, j) = GaussRat(1);
  return m;
}

Mat Mat::operator+(const Mat& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, Errc::Internal, "shape mismatch in +");
  Mat r(rows_, cols_);
  for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] + o.e_[k];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, Errc::Internal, "shape mismatch in -");
  Mat r(rows_, cols_);
  for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] - o.e_[k];
  return r;
}

Mat Mat::operator-() const {
  Mat r(rows_, cols_);
  for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = -e_[k];
  return r;
}

Mat Mat::operator*(const Mat& o) const { return kernels::mul(*this, o); }

Mat Mat::operator*(const GaussRat& s) const {
  Mat r(rows_, cols_);
  for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] * s;
  return r;
}

Mat Mat::transpose() const {
  Mat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Mat Mat::conj() const {
  Mat r(rows_, cols_);
  for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k].conj();
  return r;
}

Mat Mat::conj_transpose() const {
  Mat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).conj();
  return r;
}

Mat Mat::pow(unsigned long m) const {
  require(is_square(), Errc::Internal, "pow of non-square matrix");
  Mat acc = Mat::identity(rows_);
  Mat base = *this;
  while (m > 0) {
    if (m & 1UL) acc = acc * base;
    m >>= 1UL;
    if (m > 0) base = base * base;
  }
  return acc;
}

bool Mat::is_zero() const {
  for (const auto& z : e_)
    if (!z.is_zero()) return false;
  return true;
}

bool Mat::is_identity() const {
  if (!is_square()) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      if (i == j && at(i, j) != GaussRat(1)) return false;
      if (i != j && !at(i, j).is_zero()) return false;
    }
  return true;
}

bool Mat::is_real() const {
  for (const auto& z : e_)
    if (z.im != 0) return false;
  return true;
}

bool Mat::is_integer() const {
  for (const auto& z : e_)
    if (!z.is_integer()) return false;
  return true;
}

bool Mat::is_symmetric() const {
  if (!is_square() || !is_real()) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

bool Mat::is_hermitian() const {
  if (!is_square()) return false;
  for (int i = 0; i < rows_; ++i) {
    if (at(i, i).im != 0) return false;
    for (int j = i + 1; j < cols_; ++j)
      if (at(i, j) != at(j, i).conj()) return false;
  }
  return true;
}

Mat Mat::submatrix(const std::vector<int>& rs, const std::vector<int>& cs) const {
  Mat r(int(rs.size()), int(cs.size()));
  for (size_t i = 0; i < rs.size(); ++i)
    for (size_t j = 0; j < cs.size(); ++j) r.at(int(i), int(j)) = at(rs[i], cs[j]);
  return r;
}

Mat Mat::col_range(int c0, int c1) const {
  Mat r(rows_, c1 - c0);
  for (int i = 0; i < rows_; ++i)
    for (int j = c0; j < c1; ++j) r.at(i, j - c0) = at(i, j);
  return r;
}

Mat Mat::hcat(const Mat& o) const {
  require(rows_ == o.rows_, Errc::Internal, "row mismatch in hcat");
  Mat r(rows_, cols_ + o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
  }
  return r;
}

std::vector<GaussRat> Mat::col(int j) const {
  std::vector<GaussRat> v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

void Mat::set_col(int j, const std::vector<GaussRat>& v) {
  require(int(v.size()) == rows_, Errc::Internal, "column size mismatch");
  for (int i = 0; i < rows_; ++i) at(i, j) = v[i];
}

Rat Mat::max_abs_entry() const {
  Rat best(0);
  for (const auto& z : e_) {
    Rat a = abs(z.re) + abs(z.im);
    if (a > best) best = a;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Exact elimination
// ---------------------------------------------------------------------------

Echelon rref(Mat m) {
  Echelon ech;
  const int rows = m.rows(), cols = m.cols();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i) {
      if (!m.at(i, c).is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    GaussRat inv = GaussRat(1) / m.at(r, c);
    for (int j = c; j < cols; ++j) m.at(r, j) *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      GaussRat f = m.at(i, c);
      for (int j = c; j < cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    ech.pivots.push_back(c);
    ++r;
  }
  ech.rank = r;
  ech.mat = std::move(m);
  return ech;
}

int rank(const Mat& m) { return rref(m).rank; }

Mat kernel_basis(const Mat& m) {
  Echelon ech = rref(m);
  const int cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (int p : ech.pivots) is_pivot[p] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Mat basis(cols, int(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    int fc = free_cols[k];
    basis.at(fc, int(k)) = GaussRat(1);
    for (int r = 0; r < ech.rank; ++r) basis.at(ech.pivots[r], int(k)) = -ech.mat.at(r, fc);
  }
  return basis;
}

std::optional<Mat> solve(const Mat& a, const Mat& b) {
  require(a.rows() == b.rows(), Errc::Internal, "shape mismatch in solve");
  Echelon ech = rref(a.hcat(b));
  // full column rank in the A-part required
  if (ech.rank != a.cols()) return std::nullopt;
  for (int r = 0; r < ech.rank; ++r)
    if (ech.pivots[r] >= a.cols()) return std::nullopt; // inconsistent row
  // also inconsistent if any nonzero row beyond rank rows in B-part; rref
  // leaves those rows zero, and pivot in B-part was excluded above.
  Mat x(a.cols(), b.cols());
  for (int r = 0; r < ech.rank; ++r)
    for (int j = 0; j < b.cols(); ++j) x.at(ech.pivots[r], j) = ech.mat.at(r, a.cols() + j);
  // inconsistent systems can still reach here with full A-rank; reject them
  if (a * x != b) return std::nullopt;
  return x;
}

std::optional<Mat> inverse(const Mat& m) {
  require(m.is_square(), Errc::Internal, "inverse of non-square matrix");
  auto x = solve(m, Mat::identity(m.rows()));
  return x;
}

GaussRat det(const Mat& m) {
  require(m.is_square(), Errc::Internal, "det of non-square matrix");
  Mat a = m;
  const int n = a.rows();
  GaussRat d(1);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (!a.at(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return GaussRat(0);
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(c, j));
      d = -d;
    }
    d *= a.at(c, c);
    GaussRat inv = GaussRat(1) / a.at(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (a.at(i, c).is_zero()) continue;
      GaussRat f = a.at(i, c) * inv;
      for (int j = c; j < n; ++j) a.at(i, j) -= f * a.at(c, j);
    }
  }
  return d;
}

Mat column_space(const Mat& m) {
  Echelon ech = rref(m.transpose());
  Mat basis(m.rows(), ech.rank);
  for (int r = 0; r < ech.rank; ++r)
    for (int i = 0; i < m.rows(); ++i) basis.at(i, r) = ech.mat.at(r, i);
  return basis;
}

bool in_span(const Mat& basis, const std::vector<GaussRat>& v) {
  SpanBuilder sb(basis.rows());
  for (int j = 0; j < basis.cols(); ++j) sb.add(basis.col(j));
  return sb.contains(v);
}

bool span_contains(const Mat& basis, const Mat& sub) {
  SpanBuilder sb(basis.rows());
  for (int j = 0; j < basis.cols(); ++j) sb.add(basis.col(j));
  for (int j = 0; j < sub.cols(); ++j)
    if (!sb.contains(sub.col(j))) return false;
  return true;
}

bool SpanBuilder::add(const std::vector<GaussRat>& v) {
  require(int(v.size()) == dim_, Errc::Internal, "vector size mismatch in span");
  std::vector<GaussRat> w = v;
  for (size_t r = 0; r < rows_.size(); ++r) {
    const GaussRat& lead = w[pivots_[r]];
    if (lead.is_zero()) continue;
    GaussRat f = lead; // rows_ are normalized to pivot 1
    for (int j = 0; j < dim_; ++j) w[j] -= f * rows_[r][j];
  }
  int piv = -1;
  for (int j = 0; j < dim_; ++j)
    if (!w[j].is_zero()) {
      piv = j;
      break;
    }
  if (piv < 0) return false;
  GaussRat inv = GaussRat(1) / w[piv];
  for (int j = 0; j < dim_; ++j) w[j] *= inv;
  rows_.push_back(std::move(w));
  pivots_.push_back(piv);
  raw_.push_back(v);
  return true;
}

bool SpanBuilder::contains(const std::vector<GaussRat>& v) const {
  std::vector<GaussRat> w = v;
  for (size_t r = 0; r < rows_.size(); ++r) {
    const GaussRat& lead = w[pivots_[r]];
    if (lead.is_zero()) continue;
    GaussRat f = lead;
    for (int j = 0; j < dim_; ++j) w[j] -= f * rows_[r][j];
  }
  for (const auto& z : w)
    if (!z.is_zero()) return false;
  return true;
}

} // namespace unicoh

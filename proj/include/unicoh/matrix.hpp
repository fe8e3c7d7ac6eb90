#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "unicoh/scalar.hpp"

namespace unicoh {

/// Dense matrix over GaussRat, row-major. Immutable in spirit: the analysis
/// layers never mutate a matrix after it is fully built.
class Mat {
public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols) {}

  static Mat identity(int n);
  static Mat zero(int rows, int cols) { return Mat(rows, cols); }
  /// n x n matrix with a single 1 at (i, j).
  static Mat unit(int n, int i, int j);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  GaussRat& at(int i, int j) { return e_[size_t(i) * cols_ + j]; }
  const GaussRat& at(int i, int j) const { return e_[size_t(i) * cols_ + j]; }

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator-() const;
  Mat operator*(const Mat& o) const; // dispatches to kernels::mul
  Mat operator*(const GaussRat& s) const;
  friend Mat operator*(const GaussRat& s, const Mat& m) { return m * s; }
  bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat transpose() const;
  Mat conj() const;
  Mat conj_transpose() const;
  Mat pow(unsigned long m) const;

  bool is_square() const { return rows_ == cols_; }
  bool is_zero() const;
  bool is_identity() const;
  bool is_real() const;
  bool is_integer() const;
  bool is_symmetric() const;
  bool is_hermitian() const;

  Mat submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;
  /// Columns [c0, c1) as a new matrix.
  Mat col_range(int c0, int c1) const;
  Mat hcat(const Mat& o) const;
  std::vector<GaussRat> col(int j) const;
  void set_col(int j, const std::vector<GaussRat>& v);

  /// Largest |entry| measured as a rational (max of |re|+|im|).
  Rat max_abs_entry() const;

private:
  int rows_, cols_;
  std::vector<GaussRat> e_;
};

/// Row echelon data produced by exact Gauss elimination.
struct Echelon {
  Mat mat;                 // reduced row echelon form
  std::vector<int> pivots; // pivot column per nonzero row
  int rank = 0;
};

Echelon rref(Mat m);

int rank(const Mat& m);

/// Basis of the right kernel {x : M x = 0}, as matrix columns in echelon order.
Mat kernel_basis(const Mat& m);

/// Solve A X = B exactly; std::nullopt if inconsistent or underdetermined
/// columns are present (A must have full column rank for a unique solution).
std::optional<Mat> solve(const Mat& a, const Mat& b);

/// Inverse of a square matrix; std::nullopt if singular.
std::optional<Mat> inverse(const Mat& m);

GaussRat det(const Mat& m);

/// Span utilities: vectors are matrix columns throughout.

/// Column space basis of m (echelonized, canonical order).
Mat column_space(const Mat& m);

/// True iff v lies in the column span of basis.
bool in_span(const Mat& basis, const std::vector<GaussRat>& v);

/// True iff every column of sub lies in the column span of basis.
bool span_contains(const Mat& basis, const Mat& sub);

/// Incremental span builder: exact rank tracking while new vectors arrive.
class SpanBuilder {
public:
  explicit SpanBuilder(int dim) : dim_(dim) {}
  /// Adds v to the span; returns true if the dimension grew.
  bool add(const std::vector<GaussRat>& v);
  bool contains(const std::vector<GaussRat>& v) const;
  int dim() const { return int(rows_.size()); }
  int ambient_dim() const { return dim_; }
  /// The accumulated vectors in insertion order (not reduced).
  const std::vector<std::vector<GaussRat>>& raw() const { return raw_; }

private:
  int dim_;
  // reduced rows with their pivot positions
  std::vector<std::vector<GaussRat>> rows_;
  std::vector<int> pivots_;
  std::vector<std::vector<GaussRat>> raw_;
};

} // namespace unicoh

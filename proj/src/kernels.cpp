#include "unicoh/kernels.hpp"

#include <atomic>

#include "unicoh/errors.hpp"

#ifdef UNICOH_HAVE_OPENMP
#include <omp.h>
#endif

namespace unicoh::kernels {

namespace {
std::atomic<bool> g_parallel{true};

// Below this many output cells the OpenMP fork costs more than it saves.
constexpr long kParallelCellThreshold = 24 * 24;
} // namespace

void set_parallel_enabled(bool on) { g_parallel.store(on); }
bool parallel_enabled() { return g_parallel.load(); }

int max_threads() {
#ifdef UNICOH_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

static void mul_row(const Mat& a, const Mat& b, Mat& out, int i) {
  const int n = a.cols();
  const int cols = b.cols();
  for (int j = 0; j < cols; ++j) {
    GaussRat acc;
    for (int k = 0; k < n; ++k) {
      const GaussRat& x = a.at(i, k);
      if (x.is_zero()) continue;
      const GaussRat& y = b.at(k, j);
      if (y.is_zero()) continue;
      acc += x * y;
    }
    out.at(i, j) = std::move(acc);
  }
}

Mat mul_serial(const Mat& a, const Mat& b) {
  require(a.cols() == b.rows(), Errc::Internal, "dimension mismatch in product");
  Mat out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) mul_row(a, b, out, i);
  return out;
}

Mat mul_parallel(const Mat& a, const Mat& b) {
  require(a.cols() == b.rows(), Errc::Internal, "dimension mismatch in product");
  Mat out(a.rows(), b.cols());
#ifdef UNICOH_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < a.rows(); ++i) mul_row(a, b, out, i);
#else
  for (int i = 0; i < a.rows(); ++i) mul_row(a, b, out, i);
#endif
  return out;
}

Mat mul(const Mat& a, const Mat& b) {
#ifdef UNICOH_HAVE_OPENMP
  const long cells = long(a.rows()) * b.cols();
  if (g_parallel.load() && cells >= kParallelCellThreshold && max_threads() > 1)
    return mul_parallel(a, b);
#endif
  return mul_serial(a, b);
}

} // namespace unicoh::kernels

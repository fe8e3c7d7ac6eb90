// Timing comparison of the OpenMP kernels against their serial references:
// exact matrix products, Kronecker assembly of Hodge actions, and the
// left-normed commutator enumeration. Results of both variants are compared
// for equality as a side effect.

#include <chrono>
#include <cstdio>
#include <random>

#include "unicoh/gallery.hpp"
#include "unicoh/kernels.hpp"

using namespace unicoh;
using Clock = std::chrono::steady_clock;

namespace {

double secs(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Mat random_mat(std::mt19937_64& rng, int n, int denom_bound) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.at(i, j) = GaussRat(Rat(long(rng() % 41) - 20, long(rng() % uint64_t(denom_bound)) + 1),
                            Rat(long(rng() % 9) - 4));
  return m;
}

template <typename F>
double time_best_of(int reps, F&& f) {
  double best = 1e18;
  for (int r = 0; r < reps; ++r) {
    auto t0 = Clock::now();
    f();
    best = std::min(best, secs(t0));
  }
  return best;
}

} // namespace

int main() {
  std::printf("threads available: %d\n\n", kernels::max_threads());
  std::mt19937_64 rng(271828);

  std::printf("%-34s %10s %10s %8s\n", "kernel", "serial[s]", "openmp[s]", "speedup");

  for (int n : {48, 96, 160}) {
    Mat a = random_mat(rng, n, 6);
    Mat b = random_mat(rng, n, 6);
    Mat out_s, out_p;
    double ts = time_best_of(3, [&] { out_s = kernels::mul_serial(a, b); });
    double tp = time_best_of(3, [&] { out_p = kernels::mul_parallel(a, b); });
    if (out_s != out_p) {
      std::printf("mismatch in mul at n=%d\n", n);
      return 1;
    }
    std::printf("mul %dx%d rational%18s %10.4f %10.4f %7.2fx\n", n, n, "", ts, tp, ts / tp);
  }

  {
    Hodge h(square_torus(4));
    TorusAutomorphism g = full_jordan_automorphism(4);
    Mat a = h.pullback_h10(g);
    Mat wp = wedge_matrix(a, 2);
    Mat wq = wedge_matrix(a.conj(), 2);
    // blow the operands up to visible cost by squaring entries repeatedly
    for (int i = 0; i < wp.rows(); ++i)
      for (int j = 0; j < wp.cols(); ++j) wp.at(i, j) += GaussRat(Rat(7, 3));
    Mat out_s, out_p;
    double ts = time_best_of(5, [&] { out_s = kron_serial(wp, wq); });
    double tp = time_best_of(5, [&] { out_p = kron(wp, wq); });
    if (out_s != out_p) {
      std::printf("mismatch in kron\n");
      return 1;
    }
    std::printf("%-34s %10.4f %10.4f %7.2fx\n", "kron 6x6 (x) 6x6 (H^{2,2} shape)", ts, tp,
                ts / tp);
  }

  {
    GroupPresentation u;
    u.ambient_dim = 6;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j)
        u.generators.push_back(Mat::identity(6) + Mat::unit(6, i, j));
    bool rs = true, rp = true;
    double ts = time_best_of(2, [&] { rs = lcs_oracle_serial(u, 6); });
    double tp = time_best_of(2, [&] { rp = lcs_oracle(u, 6); });
    if (rs != rp) {
      std::printf("mismatch in lcs_oracle\n");
      return 1;
    }
    std::printf("%-34s %10.4f %10.4f %7.2fx\n", "lcs_oracle U(6,Z) weight 6", ts, tp, ts / tp);
  }

  std::printf("\nall kernel pairs agreed\n");
  return 0;
}

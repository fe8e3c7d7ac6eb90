#pragma once

#include "unicoh/matrix.hpp"

namespace unicoh::kernels {

/// Serial reference product. Kept as the oracle the parallel kernel is
/// checked against; also the fallback when OpenMP is absent.
Mat mul_serial(const Mat& a, const Mat& b);

/// OpenMP product, parallel over output rows. Every output cell is computed
/// by exactly one thread with the same left-to-right summation as the serial
/// kernel, so results are bit-identical to mul_serial.
Mat mul_parallel(const Mat& a, const Mat& b);

/// Dispatch used by Mat::operator*: parallel above a size threshold.
Mat mul(const Mat& a, const Mat& b);

/// Process-wide switch (used by tests and the benchmark).
void set_parallel_enabled(bool on);
bool parallel_enabled();

int max_threads();

} // namespace unicoh::kernels

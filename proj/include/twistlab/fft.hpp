#pragma once
#include "twistlab/core.hpp"

namespace twistlab::fft {

// In-place unnormalized DFT of a contiguous array of length n.
// sign = -1: X_k = sum_j x_j e^{-2 pi i jk/n}; sign = +1 uses e^{+...}.
void dft(cplx* data, int n, int sign);

// Same, applied to `count` arrays laid out with the given stride between
// consecutive elements and `dist` between consecutive arrays.
void dft_many(cplx* data, int n, int count, int stride, int dist, int sign);

}  // namespace twistlab::fft

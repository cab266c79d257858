#pragma once

#include <complex>
#include <vector>

namespace subdiff {

using cvector = std::vector<std::complex<double>>;

/// In-place radix-2 Cooley-Tukey. Length must be a power of two.
/// inverse=true applies the conjugate transform and the 1/n factor.
void fft_inplace(cvector& data, bool inverse);

/// Transform along each axis of a row-major n^d array, d in {1,2,3}.
void fft_nd(cvector& data, int n, int dim, bool inverse);

bool is_power_of_two(int n);

} // namespace subdiff

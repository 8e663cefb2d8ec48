#ifndef IPLR_FFT_HPP
#define IPLR_FFT_HPP

#include <complex>
#include <vector>

// Just enough FFT machinery for the fast component-by-component search:
// a radix-2 transform and the circular cross-correlation built on it.

namespace iplr {

// In-place radix-2 transform; a.size() must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse);

// c[j] = sum_i a[i] * b[(i + j) mod M] for j in [0, M), M = a.size().
// M is arbitrary (the search uses M = b^m - 1); internally the correlation
// is zero-padded to a power of two.
std::vector<double> circular_correlation(const std::vector<double>& a,
                                         const std::vector<double>& b);

// Quadratic reference used to validate the transform-based version.
std::vector<double> circular_correlation_direct(const std::vector<double>& a,
                                                const std::vector<double>& b);

}  // namespace iplr

#endif

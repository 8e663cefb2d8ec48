#include "iplr/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace iplr {

void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
  const size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("fft size must be a power of two");
  }
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang =
        2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1 : -1);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = a[i + k];
        std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    for (auto& x : a) x /= static_cast<double>(n);
  }
}

std::vector<double> circular_correlation_direct(const std::vector<double>& a,
                                                const std::vector<double>& b) {
  const size_t m = a.size();
  if (b.size() != m) throw std::invalid_argument("length mismatch");
  std::vector<double> c(m, 0.0);
  for (size_t j = 0; j < m; ++j) {
    double s = 0.0;
    for (size_t i = 0; i < m; ++i) s += a[i] * b[(i + j) % m];
    c[j] = s;
  }
  return c;
}

std::vector<double> circular_correlation(const std::vector<double>& a,
                                         const std::vector<double>& b) {
  const size_t m = a.size();
  if (b.size() != m) throw std::invalid_argument("length mismatch");
  if (m == 0) return {};
  if (m < 32) return circular_correlation_direct(a, b);

  // Correlation against the doubled sequence turns the wrap-around into a
  // plain linear convolution: reverse a, convolve with b.b, read the middle.
  size_t n = 1;
  while (n < 3 * m) n <<= 1;
  std::vector<std::complex<double>> fa(n), fb(n);
  for (size_t i = 0; i < m; ++i) fa[i] = a[m - 1 - i];
  for (size_t i = 0; i < m; ++i) fb[i] = fb[i + m] = b[i];
  fft_inplace(fa, false);
  fft_inplace(fb, false);
  for (size_t i = 0; i < n; ++i) fa[i] *= fb[i];
  fft_inplace(fa, true);
  std::vector<double> c(m);
  for (size_t j = 0; j < m; ++j) c[j] = fa[m - 1 + j].real();
  return c;
}

}  // namespace iplr

#include "axim/dft.hpp"

#include <bit>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace axim {

namespace {

using cd = std::complex<double>;

void fft_pow2(std::vector<cd>& v, bool inverse) {
  const std::size_t n = v.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(v[i], v[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / double(len);
    const cd wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cd w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cd u = v[i + k];
        const cd t = v[i + k + len / 2] * w;
        v[i + k] = u + t;
        v[i + k + len / 2] = u - t;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    for (cd& x : v) x /= double(n);
  }
}

// Chirp value exp(sign * i * pi * k^2 / n), with k^2 reduced mod 2n since
// the chirp has period 2n in k^2.
cd chirp(std::int64_t k, std::int64_t n, double sign) {
  const std::int64_t m = (k * k) % (2 * n);
  const double ang = sign * std::numbers::pi * double(m) / double(n);
  return {std::cos(ang), std::sin(ang)};
}

void fft_bluestein(std::vector<cd>& v, bool inverse) {
  const std::int64_t n = static_cast<std::int64_t>(v.size());
  const double sign = inverse ? 1.0 : -1.0;
  std::size_t m = std::bit_ceil(static_cast<std::size_t>(2 * n - 1));
  std::vector<cd> a(m, cd{});
  std::vector<cd> b(m, cd{});
  for (std::int64_t k = 0; k < n; ++k) {
    const cd w = chirp(k, n, sign);
    a[k] = v[k] * w;
    b[k] = std::conj(w);
    if (k > 0) b[m - k] = std::conj(w);
  }
  fft_pow2(a, false);
  fft_pow2(b, false);
  for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
  fft_pow2(a, true);
  for (std::int64_t k = 0; k < n; ++k) v[k] = a[k] * chirp(k, n, sign);
  if (inverse) {
    for (cd& x : v) x /= double(n);
  }
}

}  // namespace

void fft_inplace(std::vector<cd>& v, bool inverse) {
  if (v.empty()) throw std::invalid_argument("fft_inplace: empty input");
  if (v.size() == 1) return;
  if (std::has_single_bit(v.size())) {
    fft_pow2(v, inverse);
  } else {
    fft_bluestein(v, inverse);
  }
}

}  // namespace axim

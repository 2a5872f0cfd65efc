#include "axim/bmode.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <stdexcept>

#include "axim/dft.hpp"

namespace axim {

Image envelope(const Image& rf) {
  const int n = rf.rows();
  Image env(rf.rows(), rf.cols());
  std::vector<std::complex<double>> buf(static_cast<std::size_t>(n));
  for (int j = 0; j < rf.cols(); ++j) {
    auto col = rf.column(j);
    for (int i = 0; i < n; ++i) buf[i] = col[i];
    fft_inplace(buf, false);
    // analytic-signal weights: keep DC (and Nyquist when even), double the
    // positive frequencies, zero the negative ones
    for (int i = 1; i < (n + 1) / 2; ++i) buf[i] *= 2.0;
    for (int i = n / 2 + 1; i < n; ++i) buf[i] = 0.0;
    fft_inplace(buf, true);
    auto out = env.column(j);
    for (int i = 0; i < n; ++i) out[i] = std::abs(buf[i]);
  }
  return env;
}

GrayImage bmode_render(const Image& rf, double dynamic_range_db) {
  if (!(dynamic_range_db > 0.0)) {
    throw std::invalid_argument("bmode_render: dynamic range must be positive");
  }
  Image env = envelope(rf);
  const double peak = max_abs(env);
  if (!(peak > 0.0)) throw std::invalid_argument("bmode_render: zero image");
  GrayImage out;
  out.rows = rf.rows();
  out.cols = rf.cols();
  out.pixels.assign(static_cast<std::size_t>(rf.size()), 0);
  for (int i = 0; i < rf.rows(); ++i) {
    for (int j = 0; j < rf.cols(); ++j) {
      const double db = 20.0 * std::log10(env.at(i, j) / peak);  // env==0 -> -inf
      const double clamped = std::max(db, -dynamic_range_db);
      const double scaled = 255.0 * (clamped + dynamic_range_db) / dynamic_range_db;
      out.pixels[std::size_t(i) * out.cols + j] =
          static_cast<std::uint8_t>(std::lround(std::clamp(scaled, 0.0, 255.0)));
    }
  }
  return out;
}

void write_pgm(const std::string& path, const GrayImage& img) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_pgm: cannot open " + path);
  os << "P5\n" << img.cols << " " << img.rows << "\n255\n";
  os.write(reinterpret_cast<const char*>(img.pixels.data()),
           static_cast<std::streamsize>(img.pixels.size()));
  if (!os) throw std::runtime_error("write_pgm: write failed for " + path);
}

}  // namespace axim

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "axim/image.hpp"

namespace axim {

// 8-bit grayscale raster, row-major (display order).
struct GrayImage {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(int i, int j) const { return pixels[std::size_t(i) * cols + j]; }
};

// Per-column envelope of an RF image: magnitude of the analytic signal
// along the axial (row) direction.
Image envelope(const Image& rf);

// Envelope detection, normalization to the global maximum, log compression
// to [-dynamic_range_db, 0] dB, linear mapping to [0, 255]. Pixel 0
// corresponds to -dynamic_range_db dB or below.
GrayImage bmode_render(const Image& rf, double dynamic_range_db);

// Binary PGM (P5, maxval 255).
void write_pgm(const std::string& path, const GrayImage& img);

}  // namespace axim

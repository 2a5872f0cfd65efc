#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "axim/axial.hpp"
#include "axim/image.hpp"

namespace axim {

// Parameters of the depth-varying Gaussian-cosine kernel family. The
// lateral width is narrowest at the focal depth (the image center row) and
// widens toward the top and bottom edges.
struct KernelParams {
  int row_radius = 9;    // m_r: kernel is (2*row_radius+1) rows
  int col_radius = 50;   // n_r
  int image_rows = 2480; // m_t: number of depth rows, one kernel each
  double f0 = 3.0e6;     // center frequency, Hz
  double fs = 20.0e6;    // sampling frequency, Hz
  std::optional<double> sigma_axial;        // default row_radius / 3
  std::optional<double> sigma_lateral_max;  // default col_radius / 3

  double axial_sd() const;
  double lateral_sd_max() const;
  // Lateral SD at 1-based row i_h: interpolates between the focal width
  // (axial_sd at the center row) and lateral_sd_max at the edges.
  double lateral_sd(int i_h) const;

  void validate() const;
};

// Normalized Gaussian window (1/(sigma*sqrt(2*pi))) * exp(-(x-mu)^2/(2 sigma^2)).
double gaussian_window(double x, double mu, double sigma);

// Kernel for 1-based depth row i_h: separable Gaussian envelope modulated
// axially by cos(2*pi*f0/fs*(i - center)).
Kernel make_kernel(const KernelParams& params, int i_h);

AxialKernelStack make_kernel_stack(const KernelParams& params, int image_cols);

// Synthetic tissue reflectivity: per-pixel i.i.d. standard normal draws
// scaled by the intensity map. Deterministic per seed.
struct TrfSpec {
  int rows = 0;
  int cols = 0;
  Image intensity_map;  // per-pixel scatterer SD scale, values in [0, 1]
  std::uint64_t seed = 0;
};

Image make_trf(const TrfSpec& spec);

// Bilinear upsampling of a coarse grid to rows x cols; used to build TRFs
// as interpolations of a coarse scatterer grid.
Image upsample_bilinear(const Image& coarse, int rows, int cols);

// Interpolation variant: unit-SD scatterers on a grid coarsened by
// `coarse` in both axes, bilinearly upsampled to full resolution, then
// modulated by the intensity map. coarse <= 1 reduces to make_trf.
Image make_interpolated_trf(int rows, int cols, const Image& intensity_map,
                            std::uint64_t seed, int coarse);

// x plus i.i.d. Gaussian noise with variance power(x) / 10^(snr_db/10).
Image add_awgn(const Image& x, double snr_db, std::uint64_t seed);

double nrmse(const Image& ref, const Image& est);

// 20*log10(max|ref| / rms(est - ref)); capped at 300 dB for identical images.
double psnr(const Image& ref, const Image& est);

// Built-in intensity maps: disks | wedge | gradient | points | phantom.
Image make_intensity_map(int rows, int cols, const std::string& name);

}  // namespace axim

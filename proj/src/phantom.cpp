#include "axim/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "axim/rng.hpp"

namespace axim {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

double KernelParams::axial_sd() const {
  if (sigma_axial) return *sigma_axial;
  return (row_radius > 0 ? row_radius : 1) / 3.0;
}

double KernelParams::lateral_sd_max() const {
  if (sigma_lateral_max) return *sigma_lateral_max;
  return (col_radius > 0 ? col_radius : 1) / 3.0;
}

double KernelParams::lateral_sd(int i_h) const {
  const double s1 = axial_sd();
  const double s2 = lateral_sd_max();
  const double u = 2.0 * i_h / image_rows - 1.0;
  return std::sqrt(u * u * (s2 * s2 - s1 * s1) + s1 * s1);
}

void KernelParams::validate() const {
  require(image_rows >= 1, "KernelParams: image_rows must be positive");
  require(row_radius >= 0 && col_radius >= 0, "KernelParams: radii must be nonnegative");
  require(f0 > 0.0 && f0 < fs / 2.0, "KernelParams: need 0 < f0 < fs/2");
  require(axial_sd() > 0.0 && lateral_sd_max() > 0.0, "KernelParams: SDs must be positive");
}

double gaussian_window(double x, double mu, double sigma) {
  require(sigma > 0.0, "gaussian_window: sigma must be positive");
  const double d = (x - mu) / sigma;
  return std::exp(-0.5 * d * d) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

Kernel make_kernel(const KernelParams& params, int i_h) {
  params.validate();
  require(1 <= i_h && i_h <= params.image_rows, "make_kernel: row index out of range");
  const int mk = 2 * params.row_radius + 1;
  const int nk = 2 * params.col_radius + 1;
  const double mu_z = params.row_radius + 1;  // kernel center, 1-based
  const double mu_x = params.col_radius + 1;
  const double sigma_z = params.axial_sd();
  const double sigma_x = params.lateral_sd(i_h);
  Kernel k(mk, nk);
  for (int j = 1; j <= nk; ++j) {
    const double lateral = gaussian_window(j, mu_x, sigma_x);
    for (int i = 1; i <= mk; ++i) {
      const double axial = gaussian_window(i, mu_z, sigma_z);
      const double carrier =
          std::cos(2.0 * std::numbers::pi * params.f0 / params.fs * (i - mu_z));
      k.at(i - 1, j - 1) = axial * lateral * carrier;
    }
  }
  return k;
}

AxialKernelStack make_kernel_stack(const KernelParams& params, int image_cols) {
  params.validate();
  AxialKernelStack stack(params.image_rows, image_cols, params.row_radius,
                         params.col_radius);
  for (int i_h = 1; i_h <= params.image_rows; ++i_h) {
    stack.set_kernel(i_h, make_kernel(params, i_h));
  }
  return stack;
}

Image make_trf(const TrfSpec& spec) {
  require(spec.rows >= 1 && spec.cols >= 1, "make_trf: dimensions must be positive");
  require(spec.intensity_map.rows() == spec.rows && spec.intensity_map.cols() == spec.cols,
          "make_trf: intensity map shape mismatch");
  CounterRng rng(spec.seed);
  Image out(spec.rows, spec.cols);
  double* po = out.data();
  const double* pm = spec.intensity_map.data();
  for (std::int64_t i = 0; i < out.size(); ++i) {
    po[i] = pm[i] * rng.normal(static_cast<std::uint64_t>(i));
  }
  return out;
}

Image upsample_bilinear(const Image& coarse, int rows, int cols) {
  require(rows >= 1 && cols >= 1, "upsample_bilinear: dimensions must be positive");
  Image out(rows, cols);
  const double si = rows > 1 ? double(coarse.rows() - 1) / (rows - 1) : 0.0;
  const double sj = cols > 1 ? double(coarse.cols() - 1) / (cols - 1) : 0.0;
  for (int j = 0; j < cols; ++j) {
    const double y = sj * j;
    const int j0 = std::min(static_cast<int>(y), coarse.cols() - 1);
    const int j1 = std::min(j0 + 1, coarse.cols() - 1);
    const double wj = y - j0;
    for (int i = 0; i < rows; ++i) {
      const double x = si * i;
      const int i0 = std::min(static_cast<int>(x), coarse.rows() - 1);
      const int i1 = std::min(i0 + 1, coarse.rows() - 1);
      const double wi = x - i0;
      out.at(i, j) = (1 - wi) * (1 - wj) * coarse.at(i0, j0) +
                     wi * (1 - wj) * coarse.at(i1, j0) +
                     (1 - wi) * wj * coarse.at(i0, j1) + wi * wj * coarse.at(i1, j1);
    }
  }
  return out;
}

Image make_interpolated_trf(int rows, int cols, const Image& intensity_map,
                            std::uint64_t seed, int coarse) {
  require(intensity_map.rows() == rows && intensity_map.cols() == cols,
          "make_interpolated_trf: intensity map shape mismatch");
  if (coarse <= 1) return make_trf({rows, cols, intensity_map, seed});
  const int cr = (rows + coarse - 1) / coarse;
  const int cc = (cols + coarse - 1) / coarse;
  Image unit(cr, cc);
  unit.fill(1.0);
  Image scatter = make_trf({cr, cc, unit, seed});
  Image fine = upsample_bilinear(scatter, rows, cols);
  double* pf = fine.data();
  const double* pm = intensity_map.data();
  for (std::int64_t i = 0; i < fine.size(); ++i) pf[i] *= pm[i];
  return fine;
}

Image add_awgn(const Image& x, double snr_db, std::uint64_t seed) {
  if (std::isinf(snr_db) && snr_db > 0.0) return x;  // infinite SNR: no noise
  require(std::isfinite(snr_db), "add_awgn: snr_db must be finite or +inf");
  const double power = sum_squares(x) / static_cast<double>(x.size());
  require(power > 0.0, "add_awgn: zero-power input cannot meet a finite SNR");
  const double sigma = std::sqrt(power / std::pow(10.0, snr_db / 10.0));
  CounterRng rng(seed);
  Image out = x;
  double* po = out.data();
  for (std::int64_t i = 0; i < out.size(); ++i) {
    po[i] += sigma * rng.normal(static_cast<std::uint64_t>(i));
  }
  return out;
}

double nrmse(const Image& ref, const Image& est) {
  require(ref.same_shape(est), "nrmse: shape mismatch");
  const double denom = norm2(ref);
  require(denom > 0.0, "nrmse: zero-norm reference");
  return norm2(est - ref) / denom;
}

double psnr(const Image& ref, const Image& est) {
  require(ref.same_shape(est), "psnr: shape mismatch");
  const double rms = norm2(est - ref) / std::sqrt(static_cast<double>(ref.size()));
  if (rms == 0.0) return 300.0;
  return 20.0 * std::log10(max_abs(ref) / rms);
}

namespace {

void paint_disk(Image& map, double ci, double cj, double radius, double value) {
  const int ilo = std::max(0, static_cast<int>(std::floor(ci - radius)));
  const int ihi = std::min(map.rows() - 1, static_cast<int>(std::ceil(ci + radius)));
  const int jlo = std::max(0, static_cast<int>(std::floor(cj - radius)));
  const int jhi = std::min(map.cols() - 1, static_cast<int>(std::ceil(cj + radius)));
  for (int j = jlo; j <= jhi; ++j) {
    for (int i = ilo; i <= ihi; ++i) {
      const double di = i - ci, dj = j - cj;
      if (di * di + dj * dj <= radius * radius) map.at(i, j) = value;
    }
  }
}

}  // namespace

Image make_intensity_map(int rows, int cols, const std::string& name) {
  require(rows >= 1 && cols >= 1, "make_intensity_map: dimensions must be positive");
  Image map(rows, cols);
  const double r = rows, c = cols;
  if (name == "gradient") {
    for (int j = 0; j < cols; ++j) {
      const double v = cols > 1 ? 0.05 + 0.95 * j / (cols - 1) : 0.5;
      for (int i = 0; i < rows; ++i) map.at(i, j) = v;
    }
  } else if (name == "disks") {
    map.fill(0.15);
    paint_disk(map, 0.25 * r, 0.30 * c, 0.12 * std::min(r, c), 0.9);
    paint_disk(map, 0.30 * r, 0.70 * c, 0.08 * std::min(r, c), 0.6);
    paint_disk(map, 0.60 * r, 0.45 * c, 0.16 * std::min(r, c), 0.0);  // anechoic
    paint_disk(map, 0.80 * r, 0.70 * c, 0.10 * std::min(r, c), 1.0);
  } else if (name == "wedge") {
    map.fill(0.1);
    for (int j = 0; j < cols; ++j) {
      const int depth = static_cast<int>(0.2 * r + 0.6 * r * j / c);
      for (int i = std::max(0, depth); i < std::min(rows, depth + rows / 5 + 1); ++i) {
        map.at(i, j) = 0.85;
      }
    }
  } else if (name == "points") {
    map.fill(0.05);
    for (int gi = 1; gi <= 4; ++gi) {
      for (int gj = 1; gj <= 3; ++gj) {
        map.at(static_cast<int>(gi * r / 5.0), static_cast<int>(gj * c / 4.0)) = 1.0;
      }
    }
  } else if (name == "phantom") {
    for (int j = 0; j < cols; ++j) {
      const double v = cols > 1 ? 0.15 + 0.25 * j / (cols - 1) : 0.25;
      for (int i = 0; i < rows; ++i) map.at(i, j) = v;
    }
    paint_disk(map, 0.22 * r, 0.32 * c, 0.13 * std::min(r, c), 0.95);
    paint_disk(map, 0.50 * r, 0.62 * c, 0.15 * std::min(r, c), 0.0);
    paint_disk(map, 0.78 * r, 0.38 * c, 0.10 * std::min(r, c), 0.7);
    for (int gi = 1; gi <= 3; ++gi) {
      map.at(static_cast<int>(gi * r / 4.0), static_cast<int>(0.85 * c)) = 1.0;
    }
  } else {
    throw std::invalid_argument("make_intensity_map: unknown map '" + name +
                                "' (expected gradient|disks|wedge|points|phantom)");
  }
  return map;
}

}  // namespace axim

#include "axim/axial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "axim/parallel.hpp"
#include "axim/rng.hpp"

namespace axim {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

AxialKernelStack::AxialKernelStack(int image_rows, int image_cols, int row_radius,
                                   int col_radius)
    : image_rows_(image_rows),
      image_cols_(image_cols),
      row_radius_(row_radius),
      col_radius_(col_radius) {
  require(image_rows >= 1 && image_cols >= 1, "AxialKernelStack: image dimensions must be positive");
  require(row_radius >= 0 && col_radius >= 0, "AxialKernelStack: radii must be nonnegative");
  planes_.assign(static_cast<std::size_t>(kernel_rows()) * kernel_cols() * image_rows_, 0.0);
}

Kernel AxialKernelStack::kernel(int i_h) const {
  require(1 <= i_h && i_h <= image_rows_, "AxialKernelStack::kernel: row index out of range");
  Kernel k(kernel_rows(), kernel_cols());
  for (int q = 0; q < kernel_cols(); ++q) {
    for (int p = 0; p < kernel_rows(); ++p) {
      k.at(p, q) = plane(p, q)[i_h - 1];
    }
  }
  return k;
}

void AxialKernelStack::set_kernel(int i_h, const Kernel& k) {
  require(1 <= i_h && i_h <= image_rows_, "AxialKernelStack::set_kernel: row index out of range");
  require(k.rows() == kernel_rows() && k.cols() == kernel_cols(),
          "AxialKernelStack::set_kernel: kernel must be " + std::to_string(kernel_rows()) +
              "x" + std::to_string(kernel_cols()) + ", got " + std::to_string(k.rows()) +
              "x" + std::to_string(k.cols()));
  for (int q = 0; q < kernel_cols(); ++q) {
    for (int p = 0; p < kernel_rows(); ++p) {
      plane_mut(p, q)[i_h - 1] = k.at(p, q);
    }
  }
}

namespace {

void check_padded_shape(const AxialKernelStack& st, const Image& padded) {
  require(padded.rows() == st.padded_rows() && padded.cols() == st.padded_cols(),
          "axial_convolve: input must be " + std::to_string(st.padded_rows()) + "x" +
              std::to_string(st.padded_cols()) + ", got " + std::to_string(padded.rows()) +
              "x" + std::to_string(padded.cols()));
}

void check_image_shape(const AxialKernelStack& st, const Image& image) {
  require(image.rows() == st.image_rows() && image.cols() == st.image_cols(),
          "axial_convolve_adjoint: input must be " + std::to_string(st.image_rows()) + "x" +
              std::to_string(st.image_cols()) + ", got " + std::to_string(image.rows()) +
              "x" + std::to_string(image.cols()));
}

struct NoCount {
  void add(std::uint64_t) {}
};
struct DoCount {
  std::uint64_t n = 0;
  void add(std::uint64_t k) { n += k; }
};

// Output element (i, j) accumulates kernel contributions in fixed
// kernel-major (p outer, q inner) order, matching the valid-convolution
// reference path bit for bit. Columns are independent work units.
template <class Counter>
Image axial_forward_impl(const AxialKernelStack& st, const Image& padded, int threads,
                         Counter& counter) {
  check_padded_shape(st, padded);
  const int mt = st.image_rows(), nt = st.image_cols();
  const int mk = st.kernel_rows(), nk = st.kernel_cols();
  Image out(mt, nt);
  parallel_for(nt, threads, [&](std::int64_t jb, std::int64_t je) {
    for (std::int64_t j = jb; j < je; ++j) {
      double* ocol = out.column(static_cast<int>(j)).data();
      for (int p = 0; p < mk; ++p) {
        const int roff = mk - 1 - p;
        for (int q = 0; q < nk; ++q) {
          const double* coeff = st.plane(p, q).data();
          const double* xcol =
              padded.column(static_cast<int>(j) + nk - 1 - q).data() + roff;
          for (int i = 0; i < mt; ++i) ocol[i] += coeff[i] * xcol[i];
          counter.add(static_cast<std::uint64_t>(mt));
        }
      }
    }
  });
  return out;
}

}  // namespace

Image axial_convolve(const AxialKernelStack& stack, const Image& padded, int threads) {
  NoCount nc;
  return axial_forward_impl(stack, padded, threads, nc);
}

Image axial_convolve_counted(const AxialKernelStack& stack, const Image& padded,
                             std::uint64_t& multiplies) {
  DoCount dc;
  Image out = axial_forward_impl(stack, padded, 1, dc);
  multiplies = dc.n;
  return out;
}

Image axial_convolve_adjoint(const AxialKernelStack& stack, const Image& image,
                             int threads) {
  check_image_shape(stack, image);
  const int mt = stack.image_rows(), nt = stack.image_cols();
  const int mk = stack.kernel_rows(), nk = stack.kernel_cols();
  Image out(stack.padded_rows(), stack.padded_cols());
  // Gather form: each padded column is written by exactly one work unit,
  // accumulating contributions in fixed (q, p) order, so results are
  // bit-identical at every thread count.
  parallel_for(stack.padded_cols(), threads, [&](std::int64_t jb, std::int64_t je) {
    for (std::int64_t jp = jb; jp < je; ++jp) {
      double* ocol = out.column(static_cast<int>(jp)).data();
      const int qlo = std::max(0, nk - 1 - static_cast<int>(jp));
      const int qhi = std::min(nk - 1, nk - 1 - static_cast<int>(jp) + nt - 1);
      for (int q = qlo; q <= qhi; ++q) {
        const double* rcol = image.column(static_cast<int>(jp) - (nk - 1) + q).data();
        for (int p = 0; p < mk; ++p) {
          const double* coeff = stack.plane(p, q).data();
          double* dst = ocol + (mk - 1 - p);
          for (int i = 0; i < mt; ++i) dst[i] += coeff[i] * rcol[i];
        }
      }
    }
  });
  return out;
}

SparseOperator materialize_axial(const AxialKernelStack& stack) {
  const std::int64_t padded =
      static_cast<std::int64_t>(stack.padded_rows()) * stack.padded_cols();
  require(padded <= 4096, "materialize_axial: padded size " + std::to_string(padded) +
                              " exceeds the 4096 guard");
  const int mt = stack.image_rows(), nt = stack.image_cols();
  const int mk = stack.kernel_rows(), nk = stack.kernel_cols();
  const int mp = stack.padded_rows();
  std::vector<SparseEntry> entries;
  for (int ih = 0; ih < mt; ++ih) {
    for (int j = 0; j < nt; ++j) {
      const std::int64_t row = static_cast<std::int64_t>(j) * mt + ih;
      for (int p = 0; p < mk; ++p) {
        for (int q = 0; q < nk; ++q) {
          const double v = stack.plane(p, q)[ih];
          if (v == 0.0) continue;
          const std::int64_t rp = ih + mk - 1 - p;
          const std::int64_t cp = j + nk - 1 - q;
          entries.push_back({row, cp * mp + rp, v});
        }
      }
    }
  }
  return SparseOperator(static_cast<std::int64_t>(mt) * nt, padded, std::move(entries));
}

ForwardModel::ForwardModel(AxialKernelStack stack_in, PadMode mode)
    : stack(std::move(stack_in)),
      pad(pad_matrix_2d(stack.image_rows(), stack.image_cols(), stack.row_radius(),
                        stack.col_radius(), mode)),
      pad_mode(mode) {}

Image ForwardModel::apply(const Image& x, int threads) const {
  return axial_convolve(stack, pad.apply(x, stack.padded_rows(), stack.padded_cols()),
                        threads);
}

Image ForwardModel::apply_adjoint(const Image& r, int threads) const {
  return pad.apply_transpose(axial_convolve_adjoint(stack, r, threads),
                             stack.image_rows(), stack.image_cols());
}

Image ForwardModel::gradient(const Image& x, const Image& y, int threads) const {
  require(y.rows() == stack.image_rows() && y.cols() == stack.image_cols(),
          "ForwardModel::gradient: observation shape mismatch");
  return apply_adjoint(apply(x, threads) - y, threads);
}

Image ForwardModel::simulate(const Image& x, std::optional<double> snr_db,
                             std::uint64_t seed, int threads) const {
  Image clean = apply(x, threads);
  if (!snr_db) return clean;
  require(std::isfinite(*snr_db), "simulate: snr_db must be finite");
  const double signal_power = sum_squares(clean);
  require(signal_power > 0.0, "simulate: zero-signal image cannot meet a finite SNR");
  CounterRng rng(seed);
  Image noise(clean.rows(), clean.cols());
  double* pn = noise.data();
  for (std::int64_t i = 0; i < noise.size(); ++i) {
    pn[i] = rng.normal(static_cast<std::uint64_t>(i));
  }
  const double noise_power = sum_squares(noise);
  const double scale =
      std::sqrt(signal_power / (noise_power * std::pow(10.0, *snr_db / 10.0)));
  axpy(scale, noise, clean);
  return clean;
}

}  // namespace axim

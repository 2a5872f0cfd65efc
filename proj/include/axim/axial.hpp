#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "axim/image.hpp"
#include "axim/padding.hpp"
#include "axim/sparse.hpp"

namespace axim {

// Per-row kernel family: one (2*row_radius+1) x (2*col_radius+1) kernel per
// image row. Internally the kernels are stored as per-coefficient planes
// (for each kernel position, the coefficient as a contiguous function of
// the row index), which is what the matrix-free operators stream over.
class AxialKernelStack {
 public:
  AxialKernelStack(int image_rows, int image_cols, int row_radius, int col_radius);

  int image_rows() const { return image_rows_; }
  int image_cols() const { return image_cols_; }
  int row_radius() const { return row_radius_; }
  int col_radius() const { return col_radius_; }
  int kernel_rows() const { return 2 * row_radius_ + 1; }
  int kernel_cols() const { return 2 * col_radius_ + 1; }
  int padded_rows() const { return image_rows_ + 2 * row_radius_; }
  int padded_cols() const { return image_cols_ + 2 * col_radius_; }

  // Kernel for 1-based row index i_h in {1, ..., image_rows}.
  Kernel kernel(int i_h) const;
  void set_kernel(int i_h, const Kernel& k);

  // Coefficient (p, q) of every kernel, contiguous over the row index;
  // p, q are 0-based kernel coordinates.
  std::span<const double> plane(int p, int q) const {
    return {planes_.data() +
                static_cast<std::size_t>(q * kernel_rows() + p) * image_rows_,
            static_cast<std::size_t>(image_rows_)};
  }

 private:
  std::span<double> plane_mut(int p, int q) {
    return {planes_.data() +
                static_cast<std::size_t>(q * kernel_rows() + p) * image_rows_,
            static_cast<std::size_t>(image_rows_)};
  }

  int image_rows_;
  int image_cols_;
  int row_radius_;
  int col_radius_;
  std::vector<double> planes_;
};

// Axially-variant convolution: row i_h of the output is the valid
// convolution of kernel i_h with the row band i_h..i_h+2*row_radius of the
// padded input. Input must be padded_rows x padded_cols; output is
// image_rows x image_cols. Performs exactly kernel_rows * kernel_cols *
// image_rows * image_cols multiplies.
Image axial_convolve(const AxialKernelStack& stack, const Image& padded, int threads = 1);

// Adjoint of axial_convolve: accumulates, per row, the full convolution of
// the rotated kernel with that row into the matching padded row band.
// Input is image_rows x image_cols; output padded_rows x padded_cols.
Image axial_convolve_adjoint(const AxialKernelStack& stack, const Image& image,
                             int threads = 1);

// Same as axial_convolve but counts multiply-accumulates as they execute.
Image axial_convolve_counted(const AxialKernelStack& stack, const Image& padded,
                             std::uint64_t& multiplies);

// Exact sparse matrix of axial_convolve, built structurally from the kernel
// entries (independent of the matrix-free loops). Small instances only:
// padded_rows * padded_cols <= 4096.
SparseOperator materialize_axial(const AxialKernelStack& stack);

// Image formation model: observation = axial convolution of the padded
// reflectivity, plus optional white Gaussian noise.
struct ForwardModel {
  AxialKernelStack stack;
  SparseOperator pad;
  PadMode pad_mode;

  ForwardModel(AxialKernelStack stack, PadMode mode);

  Image apply(const Image& x, int threads = 1) const;          // H P x
  Image apply_adjoint(const Image& r, int threads = 1) const;  // P^T H^T r

  // Gradient of (1/2)||HPx - y||^2:  P^T H^T (HPx - y).
  Image gradient(const Image& x, const Image& y, int threads = 1) const;

  // H P x plus white Gaussian noise scaled so the realized SNR equals
  // snr_db exactly; nullopt means no noise. Deterministic per seed.
  Image simulate(const Image& x, std::optional<double> snr_db, std::uint64_t seed,
                 int threads = 1) const;
};

}  // namespace axim

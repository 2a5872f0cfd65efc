#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace axim {

// 2D real-valued image, stored column-major. The 0-based pixel (i, j)
// lives at data()[i + rows() * j]; equivalently the 1-based pixel (i, j)
// maps to linear index rows*(j-1)+i. Every operator in this library, the
// tensor file format, and all oracle comparisons use this vectorization.
class Image {
 public:
  Image() = default;
  Image(int rows, int cols);
  Image(int rows, int cols, std::vector<double> data);
  Image(int rows, int cols, std::initializer_list<double> column_major);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::int64_t size() const { return static_cast<std::int64_t>(rows_) * cols_; }
  bool same_shape(const Image& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }

  double& at(int i, int j) {
    return data_[static_cast<std::size_t>(i) +
                 static_cast<std::size_t>(rows_) * static_cast<std::size_t>(j)];
  }
  double at(int i, int j) const {
    return data_[static_cast<std::size_t>(i) +
                 static_cast<std::size_t>(rows_) * static_cast<std::size_t>(j)];
  }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::span<const double> values() const { return data_; }
  std::span<double> values() { return data_; }

  // Contiguous column j.
  std::span<const double> column(int j) const {
    return {data_.data() + static_cast<std::size_t>(rows_) * j,
            static_cast<std::size_t>(rows_)};
  }
  std::span<double> column(int j) {
    return {data_.data() + static_cast<std::size_t>(rows_) * j,
            static_cast<std::size_t>(rows_)};
  }

  void fill(double v);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Kernels are small images; the axial model additionally requires odd
// dimensions (2*m_r+1) x (2*n_r+1), checked where that matters.
using Kernel = Image;

// Inclusive 1-based row (or column) range [lo, hi] inside an ambient
// extent of `total` rows. Requires 1 <= lo <= hi <= total.
struct IndexRange {
  int lo = 1;
  int hi = 1;
  int total = 1;

  IndexRange() = default;
  IndexRange(int lo, int hi, int total);

  int width() const { return hi - lo + 1; }
};

double dot(const Image& a, const Image& b);
double sum_squares(const Image& a);
double norm2(const Image& a);
double norm1(const Image& a);
double max_abs(const Image& a);

Image operator+(const Image& a, const Image& b);
Image operator-(const Image& a, const Image& b);
Image operator*(double s, const Image& a);

// y += alpha * x
void axpy(double alpha, const Image& x, Image& y);

}  // namespace axim

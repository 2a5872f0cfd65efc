#include "axim/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace axim {

namespace {
void check_dims(int rows, int cols) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("Image dimensions must be positive, got " +
                                std::to_string(rows) + "x" + std::to_string(cols));
  }
}
}  // namespace

Image::Image(int rows, int cols) : rows_(rows), cols_(cols) {
  check_dims(rows, cols);
  data_.assign(static_cast<std::size_t>(size()), 0.0);
}

Image::Image(int rows, int cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  check_dims(rows, cols);
  if (static_cast<std::int64_t>(data_.size()) != size()) {
    throw std::invalid_argument("Image data length " + std::to_string(data_.size()) +
                                " does not match " + std::to_string(rows) + "x" +
                                std::to_string(cols));
  }
}

Image::Image(int rows, int cols, std::initializer_list<double> column_major)
    : Image(rows, cols, std::vector<double>(column_major)) {}

void Image::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

IndexRange::IndexRange(int lo, int hi, int total) : lo(lo), hi(hi), total(total) {
  if (!(1 <= lo && lo <= hi && hi <= total)) {
    throw std::invalid_argument("invalid index range [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "] in 1.." + std::to_string(total));
  }
}

namespace {
void check_same_shape(const Image& a, const Image& b, const char* what) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument(std::string(what) + ": shape mismatch " +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " vs " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
  }
}
}  // namespace

double dot(const Image& a, const Image& b) {
  check_same_shape(a, b, "dot");
  double s = 0.0;
  const double* pa = a.data();
  const double* pb = b.data();
  for (std::int64_t i = 0; i < a.size(); ++i) s += pa[i] * pb[i];
  return s;
}

double sum_squares(const Image& a) {
  double s = 0.0;
  const double* p = a.data();
  for (std::int64_t i = 0; i < a.size(); ++i) s += p[i] * p[i];
  return s;
}

double norm2(const Image& a) { return std::sqrt(sum_squares(a)); }

double norm1(const Image& a) {
  double s = 0.0;
  const double* p = a.data();
  for (std::int64_t i = 0; i < a.size(); ++i) s += std::abs(p[i]);
  return s;
}

double max_abs(const Image& a) {
  double m = 0.0;
  const double* p = a.data();
  for (std::int64_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(p[i]));
  return m;
}

Image operator+(const Image& a, const Image& b) {
  check_same_shape(a, b, "operator+");
  Image out = a;
  double* po = out.data();
  const double* pb = b.data();
  for (std::int64_t i = 0; i < a.size(); ++i) po[i] += pb[i];
  return out;
}

Image operator-(const Image& a, const Image& b) {
  check_same_shape(a, b, "operator-");
  Image out = a;
  double* po = out.data();
  const double* pb = b.data();
  for (std::int64_t i = 0; i < a.size(); ++i) po[i] -= pb[i];
  return out;
}

Image operator*(double s, const Image& a) {
  Image out = a;
  double* po = out.data();
  for (std::int64_t i = 0; i < a.size(); ++i) po[i] *= s;
  return out;
}

void axpy(double alpha, const Image& x, Image& y) {
  check_same_shape(x, y, "axpy");
  double* py = y.data();
  const double* px = x.data();
  for (std::int64_t i = 0; i < x.size(); ++i) py[i] += alpha * px[i];
}

}  // namespace axim

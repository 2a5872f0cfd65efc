#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "axim/axial.hpp"
#include "axim/image.hpp"

namespace axim {

// Binary tensor container: magic "AXIM", a 32-bit little-endian header
// length, a line-oriented key=value text header (ndim, dims, order, dtype,
// optional tag), then the payload as 64-bit little-endian IEEE-754 values
// in column-major order. Kernel stacks store dims [rows_in_image,
// kernel_rows, kernel_cols] with each kernel contiguous (column-major) in
// depth order.
struct TensorInfo {
  std::vector<std::int64_t> dims;
  std::string tag;  // empty when absent
};

void write_tensor(const std::string& path, const std::vector<std::int64_t>& dims,
                  const std::string& tag, const std::vector<double>& payload);
std::vector<double> read_tensor(const std::string& path, TensorInfo& info);

void write_image_tensor(const std::string& path, const Image& img, const std::string& tag);
Image read_image_tensor(const std::string& path, std::string* tag = nullptr);

void write_kernel_stack_tensor(const std::string& path, const AxialKernelStack& stack);
// The stack file does not carry the image width; callers supply it.
AxialKernelStack read_kernel_stack_tensor(const std::string& path, int image_cols);

}  // namespace axim

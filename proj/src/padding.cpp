#include "axim/padding.hpp"

#include <stdexcept>

namespace axim {

std::string to_string(PadMode mode) {
  switch (mode) {
    case PadMode::Zero: return "zero";
    case PadMode::Replicate: return "replicate";
    case PadMode::Symmetric: return "symmetric";
    case PadMode::Circular: return "circular";
  }
  throw std::logic_error("unreachable pad mode");
}

PadMode pad_mode_from_string(const std::string& name) {
  if (name == "zero") return PadMode::Zero;
  if (name == "replicate") return PadMode::Replicate;
  if (name == "symmetric") return PadMode::Symmetric;
  if (name == "circular") return PadMode::Circular;
  throw std::invalid_argument("unknown pad mode '" + name +
                              "' (expected zero|replicate|symmetric|circular)");
}

int pad_source_index(int len, int radius, PadMode mode, int pos) {
  if (pos >= radius && pos < radius + len) return pos - radius;
  switch (mode) {
    case PadMode::Zero:
      return -1;
    case PadMode::Replicate:
      return pos < radius ? 0 : len - 1;
    case PadMode::Symmetric:
      // head: (radius, ..., 2, 1); tail: (len, len-1, ...), edge repeated
      return pos < radius ? radius - pos - 1 : 2 * len + radius - pos - 1;
    case PadMode::Circular:
      return pos < radius ? len - radius + pos : pos - radius - len;
  }
  throw std::logic_error("unreachable pad mode");
}

SparseOperator pad_matrix_1d(int len, int radius, PadMode mode) {
  if (len < 1) throw std::invalid_argument("pad_matrix_1d: length must be positive");
  if (radius < 0) throw std::invalid_argument("pad_matrix_1d: radius must be nonnegative");
  if (mode != PadMode::Zero && radius > len) {
    throw std::invalid_argument("pad_matrix_1d: radius " + std::to_string(radius) +
                                " exceeds length " + std::to_string(len) + " for " +
                                to_string(mode) + " padding");
  }
  const int padded = len + 2 * radius;
  std::vector<SparseEntry> entries;
  entries.reserve(static_cast<std::size_t>(padded));
  for (int pos = 0; pos < padded; ++pos) {
    const int src = pad_source_index(len, radius, mode, pos);
    if (src >= 0) entries.push_back({pos, src, 1.0});
  }
  return SparseOperator(padded, len, std::move(entries));
}

SparseOperator pad_matrix_2d(int rows, int cols, int row_radius, int col_radius,
                             PadMode mode) {
  return kronecker(pad_matrix_1d(cols, col_radius, mode),
                   pad_matrix_1d(rows, row_radius, mode));
}

Image pad_image(const Image& a, int row_radius, int col_radius, PadMode mode) {
  if (row_radius < 0 || col_radius < 0) {
    throw std::invalid_argument("pad_image: radii must be nonnegative");
  }
  if (mode != PadMode::Zero && (row_radius > a.rows() || col_radius > a.cols())) {
    throw std::invalid_argument("pad_image: radius exceeds image extent for " +
                                to_string(mode) + " padding");
  }
  const int mp = a.rows() + 2 * row_radius;
  const int np = a.cols() + 2 * col_radius;

  // Columns first: pad every column along the row axis.
  Image tall(mp, a.cols());
  for (int j = 0; j < a.cols(); ++j) {
    for (int i = 0; i < mp; ++i) {
      const int src = pad_source_index(a.rows(), row_radius, mode, i);
      tall.at(i, j) = src < 0 ? 0.0 : a.at(src, j);
    }
  }
  // Then rows: pad every row along the column axis.
  Image out(mp, np);
  for (int j = 0; j < np; ++j) {
    const int src = pad_source_index(a.cols(), col_radius, mode, j);
    if (src < 0) continue;
    for (int i = 0; i < mp; ++i) out.at(i, j) = tall.at(i, src);
  }
  return out;
}

}  // namespace axim

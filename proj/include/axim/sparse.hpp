#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "axim/image.hpp"

namespace axim {

struct SparseEntry {
  std::int64_t row = 0;  // 0-based
  std::int64_t col = 0;  // 0-based
  double value = 0.0;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

// Immutable sparse matrix in canonical (row, col) sorted triple order.
// Construction sorts and rejects duplicate coordinates and out-of-bounds
// indices; applications iterate entries in canonical order so results are
// deterministic.
class SparseOperator {
 public:
  SparseOperator() = default;
  SparseOperator(std::int64_t nrows, std::int64_t ncols, std::vector<SparseEntry> entries);

  static SparseOperator identity(std::int64_t n);

  std::int64_t nrows() const { return nrows_; }
  std::int64_t ncols() const { return ncols_; }
  std::int64_t nnz() const { return static_cast<std::int64_t>(entries_.size()); }
  std::span<const SparseEntry> entries() const { return entries_; }

  std::vector<double> apply(std::span<const double> v) const;
  std::vector<double> apply_transpose(std::span<const double> v) const;

  // Image-shaped mat-vec on the column-major vectorization; output shape
  // must be supplied since the flat vector does not determine it.
  Image apply(const Image& v, int out_rows, int out_cols) const;
  Image apply_transpose(const Image& v, int out_rows, int out_cols) const;

  SparseOperator transposed() const;

 private:
  std::int64_t nrows_ = 0;
  std::int64_t ncols_ = 0;
  std::vector<SparseEntry> entries_;
};

SparseOperator kronecker(const SparseOperator& a, const SparseOperator& b);

// Exact matrix form of an arbitrary linear operator on in_rows x in_cols
// images, probed column by column with standard basis images. Guarded to
// at most 4096 columns.
SparseOperator materialize_operator(const std::function<Image(const Image&)>& op,
                                    int in_rows, int in_cols);

// Plain-text triple format: header `sparse <nrows> <ncols> <nnz>`, then one
// `row col value` line per entry with 1-based indices.
void write_sparse_text(std::ostream& os, const SparseOperator& a);
SparseOperator read_sparse_text(std::istream& is);

}  // namespace axim

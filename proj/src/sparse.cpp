#include "axim/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace axim {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

SparseOperator::SparseOperator(std::int64_t nrows, std::int64_t ncols,
                               std::vector<SparseEntry> entries)
    : nrows_(nrows), ncols_(ncols), entries_(std::move(entries)) {
  require(nrows >= 1 && ncols >= 1, "SparseOperator: dimensions must be positive");
  std::sort(entries_.begin(), entries_.end(), [](const SparseEntry& a, const SparseEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const SparseEntry& e = entries_[i];
    require(0 <= e.row && e.row < nrows_ && 0 <= e.col && e.col < ncols_,
            "SparseOperator: entry (" + std::to_string(e.row) + ", " +
                std::to_string(e.col) + ") out of bounds");
    require(i == 0 || entries_[i - 1].row != e.row || entries_[i - 1].col != e.col,
            "SparseOperator: duplicate entry at (" + std::to_string(e.row) + ", " +
                std::to_string(e.col) + ")");
  }
}

SparseOperator SparseOperator::identity(std::int64_t n) {
  std::vector<SparseEntry> entries;
  entries.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) entries.push_back({i, i, 1.0});
  return SparseOperator(n, n, std::move(entries));
}

std::vector<double> SparseOperator::apply(std::span<const double> v) const {
  require(static_cast<std::int64_t>(v.size()) == ncols_,
          "SparseOperator::apply: vector length " + std::to_string(v.size()) +
              " does not match ncols " + std::to_string(ncols_));
  std::vector<double> out(static_cast<std::size_t>(nrows_), 0.0);
  for (const SparseEntry& e : entries_) out[e.row] += e.value * v[e.col];
  return out;
}

std::vector<double> SparseOperator::apply_transpose(std::span<const double> v) const {
  require(static_cast<std::int64_t>(v.size()) == nrows_,
          "SparseOperator::apply_transpose: vector length " + std::to_string(v.size()) +
              " does not match nrows " + std::to_string(nrows_));
  std::vector<double> out(static_cast<std::size_t>(ncols_), 0.0);
  for (const SparseEntry& e : entries_) out[e.col] += e.value * v[e.row];
  return out;
}

Image SparseOperator::apply(const Image& v, int out_rows, int out_cols) const {
  require(static_cast<std::int64_t>(out_rows) * out_cols == nrows_,
          "SparseOperator::apply: requested output shape does not match nrows");
  return Image(out_rows, out_cols, apply(v.values()));
}

Image SparseOperator::apply_transpose(const Image& v, int out_rows, int out_cols) const {
  require(static_cast<std::int64_t>(out_rows) * out_cols == ncols_,
          "SparseOperator::apply_transpose: requested output shape does not match ncols");
  return Image(out_rows, out_cols, apply_transpose(v.values()));
}

SparseOperator SparseOperator::transposed() const {
  std::vector<SparseEntry> entries;
  entries.reserve(entries_.size());
  for (const SparseEntry& e : entries_) entries.push_back({e.col, e.row, e.value});
  return SparseOperator(ncols_, nrows_, std::move(entries));
}

SparseOperator kronecker(const SparseOperator& a, const SparseOperator& b) {
  const std::int64_t max_dim = std::numeric_limits<std::int64_t>::max();
  require(a.nrows() <= max_dim / b.nrows() && a.ncols() <= max_dim / b.ncols(),
          "kronecker: product dimensions overflow");
  std::vector<SparseEntry> entries;
  entries.reserve(a.entries().size() * b.entries().size());
  for (const SparseEntry& ea : a.entries()) {
    for (const SparseEntry& eb : b.entries()) {
      entries.push_back({ea.row * b.nrows() + eb.row, ea.col * b.ncols() + eb.col,
                         ea.value * eb.value});
    }
  }
  return SparseOperator(a.nrows() * b.nrows(), a.ncols() * b.ncols(), std::move(entries));
}

SparseOperator materialize_operator(const std::function<Image(const Image&)>& op,
                                    int in_rows, int in_cols) {
  const std::int64_t ncols = static_cast<std::int64_t>(in_rows) * in_cols;
  require(ncols <= 4096, "materialize_operator: " + std::to_string(ncols) +
                             " columns exceed the 4096-column guard");
  std::vector<SparseEntry> entries;
  std::int64_t nrows = -1;
  Image basis(in_rows, in_cols);
  for (std::int64_t c = 0; c < ncols; ++c) {
    basis.values()[c] = 1.0;
    Image col = op(basis);
    basis.values()[c] = 0.0;
    if (nrows < 0) {
      nrows = col.size();
    } else {
      require(col.size() == nrows, "materialize_operator: operator output size varies");
    }
    const double* p = col.data();
    for (std::int64_t r = 0; r < col.size(); ++r) {
      if (p[r] != 0.0) entries.push_back({r, c, p[r]});
    }
  }
  return SparseOperator(nrows, ncols, std::move(entries));
}

void write_sparse_text(std::ostream& os, const SparseOperator& a) {
  os << "sparse " << a.nrows() << " " << a.ncols() << " " << a.nnz() << "\n";
  char buf[64];
  for (const SparseEntry& e : a.entries()) {
    std::snprintf(buf, sizeof(buf), "%.17g", e.value);
    os << (e.row + 1) << " " << (e.col + 1) << " " << buf << "\n";
  }
}

SparseOperator read_sparse_text(std::istream& is) {
  std::string magic;
  std::int64_t nrows = 0, ncols = 0, nnz = 0;
  if (!(is >> magic >> nrows >> ncols >> nnz) || magic != "sparse") {
    throw std::runtime_error("read_sparse_text: malformed header");
  }
  std::vector<SparseEntry> entries;
  entries.reserve(static_cast<std::size_t>(nnz));
  for (std::int64_t i = 0; i < nnz; ++i) {
    SparseEntry e;
    if (!(is >> e.row >> e.col >> e.value)) {
      throw std::runtime_error("read_sparse_text: truncated entry list");
    }
    --e.row;
    --e.col;
    entries.push_back(e);
  }
  return SparseOperator(nrows, ncols, std::move(entries));
}

}  // namespace axim

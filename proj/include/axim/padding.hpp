#pragma once

#include <string>

#include "axim/image.hpp"
#include "axim/sparse.hpp"

namespace axim {

enum class PadMode { Zero, Replicate, Symmetric, Circular };

std::string to_string(PadMode mode);
PadMode pad_mode_from_string(const std::string& name);

// 1D padding operator as a (len + 2*radius) x len sparse 0/1 matrix: the
// interior rows form the identity, the top/bottom `radius` rows select
// source entries per mode. Symmetric mirrors with the edge entry repeated,
// so the padded head of (1, ..., len) reads (radius, ..., 2, 1).
SparseOperator pad_matrix_1d(int len, int radius, PadMode mode);

// 2D padding operator on column-major vectorized images, built as the
// Kronecker product of the column-axis and row-axis 1D operators:
// (padded_rows*padded_cols) x (rows*cols).
SparseOperator pad_matrix_2d(int rows, int cols, int row_radius, int col_radius,
                             PadMode mode);

// Matrix-free 2D padding: pads every column along the rows axis, then
// every row along the columns axis. Same map as pad_matrix_2d.
Image pad_image(const Image& a, int row_radius, int col_radius, PadMode mode);

// Source index (0-based) feeding padded position `pos` in 0..len+2*radius-1,
// or -1 for a zero row (Zero mode borders).
int pad_source_index(int len, int radius, PadMode mode, int pos);

}  // namespace axim

#pragma once

#include "axim/image.hpp"

namespace axim {

// Valid convolution: output (a.rows-k.rows+1) x (a.cols-k.cols+1), every
// output pixel uses the entire kernel footprint. Requires the kernel to
// fit inside the image. Summation order is fixed kernel-major (kernel row
// outer, kernel column inner) so oracle comparisons can be exact.
Image valid_convolve(const Kernel& k, const Image& a);

// Full convolution: output (a.rows+k.rows-1) x (a.cols+k.cols-1), sum
// bounds clamped at the borders.
Image full_convolve(const Kernel& k, const Image& a);

// Circular (periodic) convolution of two images of identical dimensions.
Image circular_convolve(const Image& kbar, const Image& abar);

// Circular shift by (p, q), 1-based: (1, 1) is the identity. Equals
// circular convolution with the standard basis image e(p, q), implemented
// by index remapping.
Image circular_shift(const Image& a, int p, int q);

// Circular sum and difference on 1-based indices {1, ..., c}.
int circ_add(int a, int b, int c);
int circ_sub(int a, int b, int c);

// 180-degree rotation: out(i, j) = k(m-i+1, n-j+1) in 1-based terms.
Kernel rotate180(const Kernel& k);

// Full-width row window: copies rows r.lo..r.hi (1-based). Requires
// r.total == a.rows.
Image window_rows(const Image& a, const IndexRange& r);

// Full-width row zero-padding: embeds a into r.total rows at positions
// r.lo..r.hi, zero elsewhere. Requires r.width() == a.rows. Adjoint of
// window_rows over the same range.
Image zero_pad_rows(const Image& a, const IndexRange& r);

// General 2D crop: rows rr.lo..rr.hi and columns cr.lo..cr.hi. Requires
// rr.total == a.rows and cr.total == a.cols.
Image window_block(const Image& a, const IndexRange& rr, const IndexRange& cr);

// General 2D embed-with-zeros into an rr.total x cr.total ambient image.
// Requires rr.width() == a.rows and cr.width() == a.cols. Adjoint of
// window_block over the same ranges.
Image zero_pad_block(const Image& a, const IndexRange& rr, const IndexRange& cr);

// Standard basis image: 1 at 1-based position (p, q), 0 elsewhere.
Image basis_image(int rows, int cols, int p, int q);

}  // namespace axim

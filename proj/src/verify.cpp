#include "axim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>

#include "axim/axial.hpp"
#include "axim/ops.hpp"
#include "axim/padding.hpp"
#include "axim/solver.hpp"

namespace axim::verify {

namespace {

constexpr double kTiny = 1e-300;

using Rng = std::mt19937_64;

int rand_int(Rng& g, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(g);
}

Image random_image(Rng& g, int rows, int cols) {
  std::normal_distribution<double> d;
  Image out(rows, cols);
  for (double& v : out.values()) v = d(g);
  return out;
}

AxialKernelStack random_stack(Rng& g, int mt, int nt, int mr, int nc) {
  AxialKernelStack stack(mt, nt, mr, nc);
  for (int i_h = 1; i_h <= mt; ++i_h) {
    stack.set_kernel(i_h, random_image(g, 2 * mr + 1, 2 * nc + 1));
  }
  return stack;
}

PadMode random_mode(Rng& g) {
  constexpr PadMode modes[] = {PadMode::Zero, PadMode::Replicate, PadMode::Symmetric,
                               PadMode::Circular};
  return modes[rand_int(g, 0, 3)];
}

double rel_dot_gap(double d1, double d2, double scale) {
  return std::abs(d1 - d2) / std::max(scale, kTiny);
}

// Max elementwise difference, relative to the largest magnitude in `want`.
double max_rel_diff(const Image& got, const Image& want) {
  if (!got.same_shape(want)) return 1e308;
  const double scale = std::max(max_abs(want), kTiny);
  double worst = 0.0;
  for (std::int64_t i = 0; i < got.size(); ++i) {
    worst = std::max(worst, std::abs(got.values()[i] - want.values()[i]) / scale);
  }
  return worst;
}

// Merged walk over two canonically sorted entry lists; missing coordinates
// count as zeros. Relative to the largest magnitude present.
double sparse_max_rel_diff(const SparseOperator& a, const SparseOperator& b) {
  if (a.nrows() != b.nrows() || a.ncols() != b.ncols()) return 1e308;
  double scale = kTiny;
  for (const SparseEntry& e : a.entries()) scale = std::max(scale, std::abs(e.value));
  for (const SparseEntry& e : b.entries()) scale = std::max(scale, std::abs(e.value));
  auto key = [](const SparseEntry& e) { return std::pair(e.row, e.col); };
  double worst = 0.0;
  std::size_t i = 0, j = 0;
  const auto ea = a.entries(), eb = b.entries();
  while (i < ea.size() || j < eb.size()) {
    if (j >= eb.size() || (i < ea.size() && key(ea[i]) < key(eb[j]))) {
      worst = std::max(worst, std::abs(ea[i].value) / scale);
      ++i;
    } else if (i >= ea.size() || key(eb[j]) < key(ea[i])) {
      worst = std::max(worst, std::abs(eb[j].value) / scale);
      ++j;
    } else {
      worst = std::max(worst, std::abs(ea[i].value - eb[j].value) / scale);
      ++i;
      ++j;
    }
  }
  return worst;
}

// Literal-definition 2D DFT, column-major m x n; the independent frequency
// domain oracle.
std::vector<std::complex<double>> naive_dft2(const Image& a) {
  const int m = a.rows(), n = a.cols();
  std::vector<std::complex<double>> out(static_cast<std::size_t>(m) * n);
  for (int v = 0; v < n; ++v) {
    for (int u = 0; u < m; ++u) {
      std::complex<double> acc = 0.0;
      for (int y = 0; y < n; ++y) {
        for (int x = 0; x < m; ++x) {
          const double ang =
              -2.0 * std::numbers::pi * (double(u) * x / m + double(v) * y / n);
          acc += a.at(x, y) * std::complex<double>(std::cos(ang), std::sin(ang));
        }
      }
      out[static_cast<std::size_t>(v) * m + u] = acc;
    }
  }
  return out;
}

struct ModelInstance {
  ForwardModel model;
  int mt, nt;
};

ModelInstance random_model(Rng& g, const Sizes& sz) {
  const int mr = rand_int(g, 0, sz.max_row_radius);
  const int nc = rand_int(g, 0, sz.max_col_radius);
  const int mt = rand_int(g, std::max(1, mr), sz.max_rows);
  const int nt = rand_int(g, std::max(1, nc), sz.max_cols);
  return {ForwardModel(random_stack(g, mt, nt, mr, nc), random_mode(g)), mt, nt};
}

}  // namespace

double window_pad_adjoint_error(std::uint64_t seed, int trials, const Sizes& sz) {
  Rng g(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int total = rand_int(g, 1, sz.max_rows);
    const int lo = rand_int(g, 1, total);
    const int hi = rand_int(g, lo, total);
    const int cols = rand_int(g, 1, sz.max_cols);
    const IndexRange r(lo, hi, total);
    {
      Image u = random_image(g, r.width(), cols);
      Image v = random_image(g, total, cols);
      const double d1 = dot(zero_pad_rows(u, r), v);
      const double d2 = dot(u, window_rows(v, r));
      worst = std::max(worst, rel_dot_gap(d1, d2, norm2(u) * norm2(v)));
    }
    {
      const int ctotal = rand_int(g, 1, sz.max_cols);
      const int clo = rand_int(g, 1, ctotal);
      const int chi = rand_int(g, clo, ctotal);
      const IndexRange c(clo, chi, ctotal);
      Image u = random_image(g, r.width(), c.width());
      Image v = random_image(g, total, ctotal);
      const double d1 = dot(zero_pad_block(u, r, c), v);
      const double d2 = dot(u, window_block(v, r, c));
      worst = std::max(worst, rel_dot_gap(d1, d2, norm2(u) * norm2(v)));
    }
  }
  return worst;
}

double conv_adjoint_error(std::uint64_t seed, int trials, const Sizes& sz) {
  Rng g(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int mk = rand_int(g, 1, 2 * sz.max_row_radius + 1);
    const int nk = rand_int(g, 1, 2 * sz.max_col_radius + 1);
    const int ma = rand_int(g, mk, std::max(mk, sz.max_rows));
    const int na = rand_int(g, nk, std::max(nk, sz.max_cols));
    Kernel k = random_image(g, mk, nk);
    Image a = random_image(g, ma, na);
    Image w = random_image(g, ma - mk + 1, na - nk + 1);
    // adjoint of valid convolution = full convolution with rotated kernel
    const double d1 = dot(valid_convolve(k, a), w);
    const double d2 = dot(a, full_convolve(rotate180(k), w));
    const double scale = norm2(a) * norm2(w) * std::max(1.0, norm1(k));
    worst = std::max(worst, rel_dot_gap(d1, d2, scale));
  }
  return worst;
}

double shift_cumulation_error(std::uint64_t seed, int trials, const Sizes& sz) {
  Rng g(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int m = rand_int(g, 1, sz.max_rows);
    const int n = rand_int(g, 1, sz.max_cols);
    Image kbar = random_image(g, m, n);
    Image abar = random_image(g, m, n);
    const int p1 = rand_int(g, 1, m), p2 = rand_int(g, 1, m);
    const int q1 = rand_int(g, 1, n), q2 = rand_int(g, 1, n);
    Image lhs = circular_convolve(circular_shift(kbar, p1, q1), circular_shift(abar, p2, q2));
    Image rhs = circular_shift(circular_convolve(kbar, abar), circ_add(p1, p2, m),
                               circ_add(q1, q2, n));
    worst = std::max(worst, max_rel_diff(lhs, rhs));
  }
  return worst;
}

double circular_adjoint_shift_error(std::uint64_t seed, int trials, const Sizes& sz) {
  Rng g(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int m = rand_int(g, 1, std::min(sz.max_rows, 8));
    const int n = rand_int(g, 1, std::min(sz.max_cols, 8));
    Image kbar = random_image(g, m, n);
    // adjoint of circular convolution = rotated-kernel circular convolution
    // shifted forward by one position
    SparseOperator lhs =
        materialize_operator([&](const Image& x) { return circular_convolve(kbar, x); }, m, n)
            .transposed();
    SparseOperator rhs = materialize_operator(
        [&](const Image& x) {
          return circular_shift(circular_convolve(rotate180(kbar), x), 2 > m ? 1 : 2,
                                2 > n ? 1 : 2);
        },
        m, n);
    worst = std::max(worst, sparse_max_rel_diff(lhs, rhs));
  }
  return worst;
}

double circular_vs_dft_error(std::uint64_t seed, int trials, const Sizes& sz) {
  Rng g(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int m = rand_int(g, 1, std::min(sz.max_rows, 10));
    const int n = rand_int(g, 1, std::min(sz.max_cols, 10));
    Image kbar = random_image(g, m, n);
    Image abar = random_image(g, m, n);
    Image got = circular_convolve(kbar, abar);
    // frequency-domain route: inverse DFT of the elementwise spectrum product
    auto fk = naive_dft2(kbar);
    auto fa = naive_dft2(abar);
    const std::int64_t count = static_cast<std::int64_t>(m) * n;
    Image want(m, n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < m; ++i) {
        std::complex<double> acc = 0.0;
        for (int v = 0; v < n; ++v) {
          for (int u = 0; u < m; ++u) {
            const double ang =
                2.0 * std::numbers::pi * (double(u) * i / m + double(v) * j / n);
            acc += fk[std::size_t(v) * m + u] * fa[std::size_t(v) * m + u] *
                   std::complex<double>(std::cos(ang), std::sin(ang));
          }
        }
        want.at(i, j) = acc.real() / double(count);
      }
    }
    worst = std::max(worst, max_rel_diff(got, want));
  }
  return worst;
}

double dft_conjugate_symmetry_error(std::uint64_t seed, int trials, const Sizes& sz) {
  Rng g(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int m = rand_int(g, 1, std::min(sz.max_rows, 10));
    const int n = rand_int(g, 1, std::min(sz.max_cols, 10));
    Image kbar = random_image(g, m, n);
    Image shifted = circular_shift(rotate180(kbar), std::min(2, m), std::min(2, n));
    auto lhs = naive_dft2(shifted);
    auto rhs = naive_dft2(kbar);
    double scale = kTiny;
    for (const auto& z : rhs) scale = std::max(scale, std::abs(z));
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      worst = std::max(worst, std::abs(lhs[i] - std::conj(rhs[i])) / scale);
    }
  }
  return worst;
}

double valid_via_circular_error(std::uint64_t seed, int trials, const Sizes& sz) {
  Rng g(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int mk = rand_int(g, 1, 2 * sz.max_row_radius + 1);
    const int nk = rand_int(g, 1, 2 * sz.max_col_radius + 1);
    const int ma = rand_int(g, mk, std::max(mk, sz.max_rows));
    const int na = rand_int(g, nk, std::max(nk, sz.max_cols));
    Kernel k = random_image(g, mk, nk);
    Image a = random_image(g, ma, na);
    Image kc = zero_pad_block(k, IndexRange(1, mk, ma), IndexRange(1, nk, na));
    Image conv = circular_convolve(kc, a);
    Image got = window_block(conv, IndexRange(mk, ma, ma), IndexRange(nk, na, na));
    worst = std::max(worst, max_rel_diff(got, valid_convolve(k, a)));
  }
  return worst;
}

double full_via_circular_error(std::uint64_t seed, int trials, const Sizes& sz) {
  Rng g(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int mk = rand_int(g, 1, 2 * sz.max_row_radius + 1);
    const int nk = rand_int(g, 1, 2 * sz.max_col_radius + 1);
    const int ma = rand_int(g, 1, sz.max_rows);
    const int na = rand_int(g, 1, sz.max_cols);
    const int mn = ma + mk - 1, nn = na + nk - 1;
    Kernel k = random_image(g, mk, nk);
    Image a = random_image(g, ma, na);
    Image kc = zero_pad_block(k, IndexRange(1, mk, mn), IndexRange(1, nk, nn));
    Image ac = zero_pad_block(a, IndexRange(1, ma, mn), IndexRange(1, na, nn));
    Image got = circular_convolve(kc, ac);
    worst = std::max(worst, max_rel_diff(got, full_convolve(k, a)));
  }
  return worst;
}

double pad_kronecker_vs_separable_error(std::uint64_t seed, int trials) {
  Rng g(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const PadMode mode = random_mode(g);
    const int mt = rand_int(g, 1, 12);
    const int nt = rand_int(g, 1, 12);
    const int mr = rand_int(g, 0, std::min(4, mt));
    const int nr = rand_int(g, 0, std::min(4, nt));
    SparseOperator kron2d = pad_matrix_2d(mt, nt, mr, nr, mode);
    SparseOperator separable = materialize_operator(
        [&](const Image& x) { return pad_image(x, mr, nr, mode); }, mt, nt);
    worst = std::max(worst, sparse_max_rel_diff(kron2d, separable));
    // column-axis factor: block-diagonal replication of the 1D operator
    SparseOperator factor = kronecker(SparseOperator::identity(nt), pad_matrix_1d(mt, mr, mode));
    SparseOperator direct = materialize_operator(
        [&](const Image& x) { return pad_image(x, mr, 0, mode); }, mt, nt);
    worst = std::max(worst, sparse_max_rel_diff(factor, direct));
  }
  return worst;
}

double kronecker_transpose_error(std::uint64_t seed, int trials) {
  Rng g(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    auto random_sparse = [&](int rows, int cols) {
      std::vector<SparseEntry> entries;
      std::normal_distribution<double> d;
      for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
          if (rand_int(g, 0, 2) == 0) entries.push_back({r, c, d(g)});
        }
      }
      return SparseOperator(rows, cols, std::move(entries));
    };
    SparseOperator a = random_sparse(rand_int(g, 1, 6), rand_int(g, 1, 6));
    SparseOperator b = random_sparse(rand_int(g, 1, 6), rand_int(g, 1, 6));
    worst = std::max(worst, sparse_max_rel_diff(kronecker(a, b).transposed(),
                                                kronecker(a.transposed(), b.transposed())));
  }
  return worst;
}

double pad_adjoint_error(std::uint64_t seed, int trials, const Sizes& sz) {
  Rng g(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const PadMode mode = random_mode(g);
    const int mr = rand_int(g, 0, sz.max_row_radius);
    const int nr = rand_int(g, 0, sz.max_col_radius);
    const int mt = rand_int(g, std::max(1, mr), sz.max_rows);
    const int nt = rand_int(g, std::max(1, nr), sz.max_cols);
    SparseOperator pad = pad_matrix_2d(mt, nt, mr, nr, mode);
    Image u = random_image(g, mt, nt);
    Image v = random_image(g, mt + 2 * mr, nt + 2 * nr);
    const double d1 = dot(pad.apply(u, v.rows(), v.cols()), v);
    const double d2 = dot(u, pad.apply_transpose(v, mt, nt));
    worst = std::max(worst, rel_dot_gap(d1, d2, norm2(u) * norm2(v)));
  }
  return worst;
}

double axial_dense_exact_error(std::uint64_t seed, int trials, const Sizes& sz) {
  Rng g(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int mr = rand_int(g, 0, 2);
    const int nc = rand_int(g, 0, 2);
    const int mt = rand_int(g, 1, std::min(10, sz.max_rows));
    const int nt = rand_int(g, 1, std::min(8, sz.max_cols));
    AxialKernelStack stack = random_stack(g, mt, nt, mr, nc);
    SparseOperator structural = materialize_axial(stack);
    SparseOperator probed = materialize_operator(
        [&](const Image& x) { return axial_convolve(stack, x); }, stack.padded_rows(),
        stack.padded_cols());
    worst = std::max(worst, sparse_max_rel_diff(structural, probed));
    SparseOperator probed_adjoint = materialize_operator(
        [&](const Image& x) { return axial_convolve_adjoint(stack, x); }, mt, nt);
    worst = std::max(worst, sparse_max_rel_diff(structural.transposed(), probed_adjoint));
  }
  return worst;
}

double axial_dense_apply_error(std::uint64_t seed, int trials, const Sizes& sz) {
  Rng g(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int mr = rand_int(g, 0, 2);
    const int nc = rand_int(g, 0, 3);
    const int mt = rand_int(g, 1, std::min(10, sz.max_rows));
    const int nt = rand_int(g, 1, std::min(8, sz.max_cols));
    AxialKernelStack stack = random_stack(g, mt, nt, mr, nc);
    SparseOperator dense = materialize_axial(stack);
    Image xp = random_image(g, stack.padded_rows(), stack.padded_cols());
    worst = std::max(worst, max_rel_diff(axial_convolve(stack, xp),
                                         dense.apply(xp, mt, nt)));
    Image r = random_image(g, mt, nt);
    worst = std::max(
        worst, max_rel_diff(axial_convolve_adjoint(stack, r),
                            dense.apply_transpose(r, stack.padded_rows(), stack.padded_cols())));
  }
  return worst;
}

double model_adjoint_error(std::uint64_t seed, int trials, const Sizes& sz) {
  Rng g(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    ModelInstance inst = random_model(g, sz);
    const int threads = 1 + t % 3;
    Image u = random_image(g, inst.mt, inst.nt);
    Image v = random_image(g, inst.mt, inst.nt);
    const double d1 = dot(inst.model.apply(u, threads), v);
    const double d2 = dot(u, inst.model.apply_adjoint(v, threads));
    const double norm_est = estimate_operator_norm(inst.model, 10, seed + t, threads);
    const double scale = norm2(u) * norm2(v) * std::max(norm_est, kTiny);
    worst = std::max(worst, rel_dot_gap(d1, d2, scale));
  }
  return worst;
}

double gradient_fd_error(std::uint64_t seed, int coords, int rows, int cols,
                         int row_radius, int col_radius) {
  Rng g(seed);
  ForwardModel model(random_stack(g, rows, cols, row_radius, col_radius),
                     PadMode::Symmetric);
  Image x = random_image(g, rows, cols);
  Image y = random_image(g, rows, cols);
  Image grad = model.gradient(x, y);
  auto f = [&](const Image& z) {
    Image residual = model.apply(z) - y;
    return 0.5 * sum_squares(residual);
  };
  const double h = 1e-6;
  double worst = 0.0;
  for (int c = 0; c < coords; ++c) {
    const int i = rand_int(g, 0, rows - 1);
    const int j = rand_int(g, 0, cols - 1);
    Image xp = x, xm = x;
    xp.at(i, j) += h;
    xm.at(i, j) -= h;
    const double fd = (f(xp) - f(xm)) / (2.0 * h);
    const double an = grad.at(i, j);
    worst = std::max(worst, std::abs(fd - an) / std::max({std::abs(an), std::abs(fd), 1e-12}));
  }
  return worst;
}

double gradient_dense_error(std::uint64_t seed, int trials, const Sizes& sz) {
  Rng g(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    ModelInstance inst = random_model(g, sz);
    SparseOperator dense = materialize_operator(
        [&](const Image& z) { return inst.model.apply(z); }, inst.mt, inst.nt);
    Image x = random_image(g, inst.mt, inst.nt);
    Image y = random_image(g, inst.mt, inst.nt);
    Image residual = dense.apply(x, inst.mt, inst.nt) - y;
    Image want = dense.apply_transpose(residual, inst.mt, inst.nt);
    worst = std::max(worst, max_rel_diff(inst.model.gradient(x, y), want));
  }
  return worst;
}

double prox_subgradient_error(std::uint64_t seed, int trials) {
  Rng g(seed);
  std::uniform_real_distribution<double> pos(0.05, 2.0);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const double step = pos(g);
    const double l1 = weight(g), l2 = weight(g);
    Image v = random_image(g, rand_int(g, 1, 12), rand_int(g, 1, 12));
    Image u = prox_elastic_net(v, step, l1, l2);
    for (std::int64_t i = 0; i < v.size(); ++i) {
      const double uv = u.values()[i];
      const double d = v.values()[i] - uv - step * l2 * uv;
      double err;
      if (uv > 0.0) {
        err = std::abs(d - step * l1);
      } else if (uv < 0.0) {
        err = std::abs(d + step * l1);
      } else {
        err = std::max(0.0, std::abs(d) - step * l1);
      }
      worst = std::max(worst, err);
    }
  }
  return worst;
}

double invariant_reduction_error(std::uint64_t seed, int trials, const Sizes& sz) {
  Rng g(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int mr = rand_int(g, 0, sz.max_row_radius);
    const int nc = rand_int(g, 0, sz.max_col_radius);
    const int mt = rand_int(g, 1, sz.max_rows);
    const int nt = rand_int(g, 1, sz.max_cols);
    Kernel k = random_image(g, 2 * mr + 1, 2 * nc + 1);
    AxialKernelStack stack(mt, nt, mr, nc);
    for (int i_h = 1; i_h <= mt; ++i_h) stack.set_kernel(i_h, k);
    Image xp = random_image(g, stack.padded_rows(), stack.padded_cols());
    Image got = axial_convolve(stack, xp);
    Image want = valid_convolve(k, xp);
    double diff = 0.0;
    for (std::int64_t i = 0; i < got.size(); ++i) {
      diff = std::max(diff, std::abs(got.values()[i] - want.values()[i]));
    }
    worst = std::max(worst, diff);  // must agree bit for bit
  }
  return worst;
}

double multiply_count_error(std::uint64_t seed, int trials, const Sizes& sz) {
  Rng g(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int mr = rand_int(g, 0, sz.max_row_radius);
    const int nc = rand_int(g, 0, sz.max_col_radius);
    const int mt = rand_int(g, 1, sz.max_rows);
    const int nt = rand_int(g, 1, sz.max_cols);
    AxialKernelStack stack = random_stack(g, mt, nt, mr, nc);
    Image xp = random_image(g, stack.padded_rows(), stack.padded_cols());
    std::uint64_t multiplies = 0;
    axial_convolve_counted(stack, xp, multiplies);
    const std::uint64_t expected = std::uint64_t(2 * mr + 1) * (2 * nc + 1) * mt * nt;
    worst = std::max(worst, double(multiplies > expected ? multiplies - expected
                                                         : expected - multiplies));
  }
  return worst;
}

double operator_linearity_error(std::uint64_t seed, int trials, const Sizes& sz) {
  Rng g(seed);
  std::normal_distribution<double> d;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const double alpha = d(g), beta = d(g);
    {
      const int mr = rand_int(g, 0, sz.max_row_radius);
      const int nc = rand_int(g, 0, sz.max_col_radius);
      const int mt = rand_int(g, 1, sz.max_rows);
      const int nt = rand_int(g, 1, sz.max_cols);
      AxialKernelStack stack = random_stack(g, mt, nt, mr, nc);
      Image u = random_image(g, stack.padded_rows(), stack.padded_cols());
      Image v = random_image(g, stack.padded_rows(), stack.padded_cols());
      Image lhs = axial_convolve(stack, alpha * u + beta * v);
      Image rhs = alpha * axial_convolve(stack, u) + beta * axial_convolve(stack, v);
      worst = std::max(worst, max_rel_diff(lhs, rhs));
      Image ru = random_image(g, mt, nt);
      Image rv = random_image(g, mt, nt);
      Image lhs2 = axial_convolve_adjoint(stack, alpha * ru + beta * rv);
      Image rhs2 = alpha * axial_convolve_adjoint(stack, ru) +
                   beta * axial_convolve_adjoint(stack, rv);
      worst = std::max(worst, max_rel_diff(lhs2, rhs2));
    }
    {
      const int mk = rand_int(g, 1, 2 * sz.max_row_radius + 1);
      const int nk = rand_int(g, 1, 2 * sz.max_col_radius + 1);
      const int ma = rand_int(g, mk, std::max(mk, sz.max_rows));
      const int na = rand_int(g, nk, std::max(nk, sz.max_cols));
      Kernel k = random_image(g, mk, nk);
      Image u = random_image(g, ma, na);
      Image v = random_image(g, ma, na);
      worst = std::max(worst, max_rel_diff(valid_convolve(k, alpha * u + beta * v),
                                           alpha * valid_convolve(k, u) +
                                               beta * valid_convolve(k, v)));
      worst = std::max(worst, max_rel_diff(full_convolve(k, alpha * u + beta * v),
                                           alpha * full_convolve(k, u) +
                                               beta * full_convolve(k, v)));
    }
  }
  return worst;
}

std::vector<CheckResult> run_identity_suite(std::uint64_t seed, int trials,
                                            const Sizes& sz) {
  std::vector<CheckResult> out;
  auto add = [&](std::string name, double err, double tol) {
    out.push_back({std::move(name), err, tol, err <= tol});
  };
  add("window-pad-adjoint", window_pad_adjoint_error(seed, trials, sz), 1e-11);
  add("conv-adjoint-dot", conv_adjoint_error(seed + 1, trials, sz), 1e-11);
  add("shift-cumulation", shift_cumulation_error(seed + 2, trials, sz), 1e-12);
  add("circular-adjoint-shift", circular_adjoint_shift_error(seed + 3, trials, sz), 0.0);
  add("circular-vs-dft", circular_vs_dft_error(seed + 4, std::min(trials, 20), sz), 1e-11);
  add("dft-conjugate-symmetry",
      dft_conjugate_symmetry_error(seed + 5, std::min(trials, 20), sz), 1e-11);
  add("valid-via-circular", valid_via_circular_error(seed + 6, trials, sz), 1e-12);
  add("full-via-circular", full_via_circular_error(seed + 7, trials, sz), 1e-12);
  add("pad-kronecker-vs-separable", pad_kronecker_vs_separable_error(seed + 8, trials), 0.0);
  add("kronecker-transpose", kronecker_transpose_error(seed + 9, trials), 0.0);
  add("pad-adjoint-dot", pad_adjoint_error(seed + 10, trials, sz), 1e-12);
  add("axial-dense-exact", axial_dense_exact_error(seed + 11, trials, sz), 0.0);
  add("axial-dense-apply", axial_dense_apply_error(seed + 12, trials, sz), 1e-13);
  add("model-adjoint-dot", model_adjoint_error(seed + 13, trials, sz), 1e-11);
  add("gradient-finite-diff", gradient_fd_error(seed + 14, 20, 16, 12, 2, 3), 1e-5);
  add("gradient-dense", gradient_dense_error(seed + 15, std::min(trials, 20), sz), 1e-12);
  add("prox-subgradient", prox_subgradient_error(seed + 16, trials), 1e-10);
  add("invariant-kernel-reduction", invariant_reduction_error(seed + 17, trials, sz), 0.0);
  add("multiply-count", multiply_count_error(seed + 18, std::min(trials, 10), sz), 0.0);
  add("operator-linearity", operator_linearity_error(seed + 19, trials, sz), 1e-13);
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.pass; });
}

void print_results(std::ostream& os, const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-28s max_err=%-12.3e tol=%-9.0e %s", r.name.c_str(),
                  r.max_err, r.tol, r.pass ? "PASS" : "FAIL");
    os << buf << "\n";
  }
}

}  // namespace axim::verify

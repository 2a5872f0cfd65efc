#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "axim/axial.hpp"
#include "axim/ops.hpp"
#include "axim/padding.hpp"
#include "oracles.hpp"

using namespace axim;

namespace {

AxialKernelStack random_stack(std::mt19937_64& g, int mt, int nt, int mr, int nc) {
  AxialKernelStack stack(mt, nt, mr, nc);
  for (int i_h = 1; i_h <= mt; ++i_h) {
    stack.set_kernel(i_h, oracle::random_image(g, 2 * mr + 1, 2 * nc + 1));
  }
  return stack;
}

AxialKernelStack delta_stack(int mt, int nt, int mr, int nc) {
  AxialKernelStack stack(mt, nt, mr, nc);
  Kernel delta(2 * mr + 1, 2 * nc + 1);
  delta.at(mr, nc) = 1.0;
  for (int i_h = 1; i_h <= mt; ++i_h) stack.set_kernel(i_h, delta);
  return stack;
}

}  // namespace

TEST_CASE("kernel stack stores and returns per-row kernels") {
  std::mt19937_64 g(41);
  AxialKernelStack stack(5, 4, 1, 2);
  CHECK(stack.kernel_rows() == 3);
  CHECK(stack.kernel_cols() == 5);
  CHECK(stack.padded_rows() == 7);
  CHECK(stack.padded_cols() == 8);
  std::vector<Kernel> kernels;
  for (int i_h = 1; i_h <= 5; ++i_h) {
    kernels.push_back(oracle::random_image(g, 3, 5));
    stack.set_kernel(i_h, kernels.back());
  }
  for (int i_h = 1; i_h <= 5; ++i_h) {
    CHECK(oracle::max_abs_diff(stack.kernel(i_h), kernels[i_h - 1]) == 0.0);
  }
  CHECK_THROWS_AS(stack.set_kernel(1, Kernel(3, 3)), std::invalid_argument);
  CHECK_THROWS_AS(stack.set_kernel(6, Kernel(3, 5)), std::invalid_argument);
  CHECK_THROWS_AS(stack.kernel(0), std::invalid_argument);
}

TEST_CASE("delta kernels make the forward model recover the interior") {
  std::mt19937_64 g(42);
  for (PadMode mode : {PadMode::Zero, PadMode::Replicate, PadMode::Symmetric,
                       PadMode::Circular}) {
    ForwardModel model(delta_stack(6, 5, 1, 1), mode);
    Image x = oracle::random_image(g, 6, 5);
    CHECK(oracle::max_abs_diff(model.apply(x), x) == 0.0);
  }
}

TEST_CASE("delta kernels make the adjoint a zero-embedding") {
  std::mt19937_64 g(43);
  const int mt = 5, nt = 4, mr = 2, nc = 1;
  AxialKernelStack stack = delta_stack(mt, nt, mr, nc);
  Image r = oracle::random_image(g, mt, nt);
  Image out = axial_convolve_adjoint(stack, r);
  REQUIRE(out.rows() == mt + 2 * mr);
  REQUIRE(out.cols() == nt + 2 * nc);
  for (int i = 0; i < out.rows(); ++i) {
    for (int j = 0; j < out.cols(); ++j) {
      const bool interior = i >= mr && i < mr + mt && j >= nc && j < nc + nt;
      CHECK(out.at(i, j) == (interior ? r.at(i - mr, j - nc) : 0.0));
    }
  }
}

TEST_CASE("single-row stack reduces to one valid convolution") {
  std::mt19937_64 g(44);
  AxialKernelStack stack = random_stack(g, 1, 6, 2, 2);
  Image xp = oracle::random_image(g, stack.padded_rows(), stack.padded_cols());
  Image got = axial_convolve(stack, xp);
  Image want = valid_convolve(stack.kernel(1), xp);
  CHECK(got.rows() == 1);
  CHECK(oracle::max_abs_diff(got, want) == 0.0);
}

TEST_CASE("forward and adjoint match the dense materialization") {
  std::mt19937_64 g(45);
  AxialKernelStack stack = random_stack(g, 6, 5, 1, 1);
  SparseOperator dense = materialize_axial(stack);
  Image xp = oracle::random_image(g, stack.padded_rows(), stack.padded_cols());
  CHECK(oracle::max_rel_diff(axial_convolve(stack, xp), dense.apply(xp, 6, 5)) <= 1e-14);
  Image r = oracle::random_image(g, 6, 5);
  CHECK(oracle::max_rel_diff(
            axial_convolve_adjoint(stack, r),
            dense.apply_transpose(r, stack.padded_rows(), stack.padded_cols())) <= 1e-14);
}

TEST_CASE("materialized operator equals basis probing, and its transpose the adjoint") {
  std::mt19937_64 g(46);
  AxialKernelStack stack = random_stack(g, 5, 4, 1, 2);
  SparseOperator structural = materialize_axial(stack);
  SparseOperator probed = materialize_operator(
      [&](const Image& x) { return axial_convolve(stack, x); }, stack.padded_rows(),
      stack.padded_cols());
  REQUIRE(structural.nnz() == probed.nnz());
  for (std::int64_t i = 0; i < structural.nnz(); ++i) {
    CHECK(structural.entries()[i] == probed.entries()[i]);
  }
  SparseOperator probed_adjoint = materialize_operator(
      [&](const Image& x) { return axial_convolve_adjoint(stack, x); }, 5, 4);
  SparseOperator transposed = structural.transposed();
  REQUIRE(transposed.nnz() == probed_adjoint.nnz());
  for (std::int64_t i = 0; i < transposed.nnz(); ++i) {
    CHECK(transposed.entries()[i] == probed_adjoint.entries()[i]);
  }
}

TEST_CASE("materialized delta stack is a 0/1 selection matrix") {
  AxialKernelStack stack = delta_stack(4, 3, 1, 1);
  SparseOperator m = materialize_axial(stack);
  CHECK(m.nnz() == 12);  // one source pixel per output pixel
  for (const SparseEntry& e : m.entries()) CHECK(e.value == 1.0);

  std::mt19937_64 g(47);
  AxialKernelStack rnd = random_stack(g, 4, 3, 1, 1);
  std::vector<int> per_row(12, 0);
  for (const SparseEntry& e : materialize_axial(rnd).entries()) per_row[e.row]++;
  for (int count : per_row) CHECK(count <= 3 * 3);

  CHECK_THROWS_AS(materialize_axial(AxialKernelStack(80, 60, 2, 2)), std::invalid_argument);
}

TEST_CASE("adjoint dot identity on sizes up to 64x32") {
  std::mt19937_64 g(48);
  for (int t = 0; t < 25; ++t) {
    std::uniform_int_distribution<int> dm(1, 64), dn(1, 32), dr(0, 3), dc(0, 4);
    const int mr = dr(g), nc = dc(g);
    const int mt = std::max(dm(g), 1), nt = std::max(dn(g), 1);
    AxialKernelStack stack = random_stack(g, mt, nt, mr, nc);
    Image u = oracle::random_image(g, stack.padded_rows(), stack.padded_cols());
    Image v = oracle::random_image(g, mt, nt);
    const double d1 = dot(axial_convolve(stack, u), v);
    const double d2 = dot(u, axial_convolve_adjoint(stack, v));
    const double scale = norm2(u) * norm2(v) *
                         std::max(1.0, norm1(stack.kernel((mt + 1) / 2)));
    CHECK(std::abs(d1 - d2) / scale <= 1e-11);
  }
}

TEST_CASE("forward results are bit-identical at every thread count") {
  std::mt19937_64 g(49);
  AxialKernelStack stack = random_stack(g, 40, 24, 2, 3);
  Image xp = oracle::random_image(g, stack.padded_rows(), stack.padded_cols());
  Image r = oracle::random_image(g, 40, 24);
  Image fwd1 = axial_convolve(stack, xp, 1);
  Image adj1 = axial_convolve_adjoint(stack, r, 1);
  for (int threads : {2, 3, 4, 7}) {
    CHECK(oracle::max_abs_diff(axial_convolve(stack, xp, threads), fwd1) == 0.0);
    CHECK(oracle::max_abs_diff(axial_convolve_adjoint(stack, r, threads), adj1) == 0.0);
  }
}

TEST_CASE("forward multiply count is exact") {
  std::mt19937_64 g(50);
  AxialKernelStack stack = random_stack(g, 9, 7, 2, 1);
  Image xp = oracle::random_image(g, stack.padded_rows(), stack.padded_cols());
  std::uint64_t multiplies = 0;
  Image counted = axial_convolve_counted(stack, xp, multiplies);
  CHECK(multiplies == std::uint64_t(5) * 3 * 9 * 7);
  CHECK(oracle::max_abs_diff(counted, axial_convolve(stack, xp)) == 0.0);
}

TEST_CASE("identical kernels reduce to spatially invariant convolution exactly") {
  std::mt19937_64 g(51);
  Kernel k = oracle::random_image(g, 5, 7);
  AxialKernelStack stack(12, 9, 2, 3);
  for (int i_h = 1; i_h <= 12; ++i_h) stack.set_kernel(i_h, k);
  Image xp = oracle::random_image(g, stack.padded_rows(), stack.padded_cols());
  CHECK(oracle::max_abs_diff(axial_convolve(stack, xp), valid_convolve(k, xp)) == 0.0);
}

TEST_CASE("shape validation") {
  AxialKernelStack stack = delta_stack(4, 3, 1, 1);
  CHECK_THROWS_AS(axial_convolve(stack, Image(4, 3)), std::invalid_argument);
  CHECK_THROWS_AS(axial_convolve_adjoint(stack, Image(6, 5)), std::invalid_argument);
  ForwardModel model(stack, PadMode::Symmetric);
  CHECK_THROWS_AS(model.gradient(Image(4, 3), Image(3, 3)), std::invalid_argument);
}

TEST_CASE("simulate: no-noise path, exact SNR, determinism") {
  std::mt19937_64 g(52);
  AxialKernelStack stack = random_stack(g, 400, 256, 2, 3);
  ForwardModel model(std::move(stack), PadMode::Symmetric);
  Image x = oracle::random_image(g, 400, 256);

  Image clean = model.simulate(x, std::nullopt, 0);
  CHECK(oracle::max_abs_diff(clean, model.apply(x)) == 0.0);

  Image noisy = model.simulate(x, 40.0, 1234);
  Image noise = noisy - clean;
  const double realized = 10.0 * std::log10(sum_squares(clean) / sum_squares(noise));
  CHECK(std::abs(realized - 40.0) <= 0.05);

  Image again = model.simulate(x, 40.0, 1234);
  CHECK(oracle::max_abs_diff(noisy, again) == 0.0);

  Image other_seed = model.simulate(x, 40.0, 99);
  CHECK(oracle::max_abs_diff(noisy, other_seed) > 0.0);

  CHECK_THROWS_AS(model.simulate(Image(400, 256), 40.0, 0), std::invalid_argument);
}

TEST_CASE("gradient vanishes at a consistent point and matches both oracles") {
  std::mt19937_64 g(53);
  AxialKernelStack stack = random_stack(g, 16, 12, 2, 3);
  ForwardModel model(std::move(stack), PadMode::Symmetric);
  Image x = oracle::random_image(g, 16, 12);
  Image y = model.apply(x);

  Image zero_grad = model.gradient(x, y);
  CHECK(max_abs(zero_grad) <= 1e-12 * std::max(1.0, max_abs(y)));

  Image y2 = oracle::random_image(g, 16, 12);
  Image grad = model.gradient(x, y2);

  // dense-matrix route
  SparseOperator dense = materialize_operator(
      [&](const Image& z) { return model.apply(z); }, 16, 12);
  Image residual = dense.apply(x, 16, 12) - y2;
  Image want = dense.apply_transpose(residual, 16, 12);
  CHECK(oracle::max_rel_diff(grad, want) <= 1e-13);

  // central finite differences on 20 random coordinates
  auto f = [&](const Image& z) {
    Image res = model.apply(z) - y2;
    return 0.5 * sum_squares(res);
  };
  const double h = 1e-6;
  for (int t = 0; t < 20; ++t) {
    std::uniform_int_distribution<int> di(0, 15), dj(0, 11);
    const int i = di(g), j = dj(g);
    Image xp = x, xm = x;
    xp.at(i, j) += h;
    xm.at(i, j) -= h;
    const double fd = (f(xp) - f(xm)) / (2.0 * h);
    const double an = grad.at(i, j);
    CHECK(std::abs(fd - an) / std::max({std::abs(an), std::abs(fd), 1e-12}) <= 1e-5);
  }
}

TEST_CASE("model adjoint identity across pad modes") {
  std::mt19937_64 g(54);
  for (PadMode mode : {PadMode::Zero, PadMode::Replicate, PadMode::Symmetric,
                       PadMode::Circular}) {
    AxialKernelStack stack = random_stack(g, 10, 8, 2, 2);
    ForwardModel model(std::move(stack), mode);
    Image u = oracle::random_image(g, 10, 8);
    Image v = oracle::random_image(g, 10, 8);
    const double d1 = dot(model.apply(u), v);
    const double d2 = dot(u, model.apply_adjoint(v));
    CHECK(std::abs(d1 - d2) / (norm2(u) * norm2(v)) <= 1e-11);
  }
}

TEST_CASE("operator linearity in the image argument") {
  std::mt19937_64 g(55);
  std::normal_distribution<double> nd;
  AxialKernelStack stack = random_stack(g, 8, 6, 1, 2);
  const double alpha = nd(g), beta = nd(g);
  Image u = oracle::random_image(g, stack.padded_rows(), stack.padded_cols());
  Image v = oracle::random_image(g, stack.padded_rows(), stack.padded_cols());
  CHECK(oracle::max_rel_diff(
            axial_convolve(stack, alpha * u + beta * v),
            alpha * axial_convolve(stack, u) + beta * axial_convolve(stack, v)) <= 1e-13);
  Image ru = oracle::random_image(g, 8, 6);
  Image rv = oracle::random_image(g, 8, 6);
  CHECK(oracle::max_rel_diff(axial_convolve_adjoint(stack, alpha * ru + beta * rv),
                             alpha * axial_convolve_adjoint(stack, ru) +
                                 beta * axial_convolve_adjoint(stack, rv)) <= 1e-13);
}

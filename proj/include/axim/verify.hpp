#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "axim/image.hpp"

namespace axim::verify {

struct CheckResult {
  std::string name;
  double max_err = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct Sizes {
  int max_rows = 20;
  int max_cols = 14;
  int max_row_radius = 3;
  int max_col_radius = 3;
};

// Randomized identity checks. Each returns the worst observed error over
// `trials` instances; checks marked exact return 0 when every instance
// matches bit for bit.
double window_pad_adjoint_error(std::uint64_t seed, int trials, const Sizes& sz);
double conv_adjoint_error(std::uint64_t seed, int trials, const Sizes& sz);
double shift_cumulation_error(std::uint64_t seed, int trials, const Sizes& sz);
double circular_adjoint_shift_error(std::uint64_t seed, int trials, const Sizes& sz);
double circular_vs_dft_error(std::uint64_t seed, int trials, const Sizes& sz);
double dft_conjugate_symmetry_error(std::uint64_t seed, int trials, const Sizes& sz);
double valid_via_circular_error(std::uint64_t seed, int trials, const Sizes& sz);
double full_via_circular_error(std::uint64_t seed, int trials, const Sizes& sz);
double pad_kronecker_vs_separable_error(std::uint64_t seed, int trials);
double kronecker_transpose_error(std::uint64_t seed, int trials);
double pad_adjoint_error(std::uint64_t seed, int trials, const Sizes& sz);
double axial_dense_exact_error(std::uint64_t seed, int trials, const Sizes& sz);
double axial_dense_apply_error(std::uint64_t seed, int trials, const Sizes& sz);
double model_adjoint_error(std::uint64_t seed, int trials, const Sizes& sz);
double gradient_fd_error(std::uint64_t seed, int coords, int rows, int cols,
                         int row_radius, int col_radius);
double gradient_dense_error(std::uint64_t seed, int trials, const Sizes& sz);
double prox_subgradient_error(std::uint64_t seed, int trials);
double invariant_reduction_error(std::uint64_t seed, int trials, const Sizes& sz);
double multiply_count_error(std::uint64_t seed, int trials, const Sizes& sz);
double operator_linearity_error(std::uint64_t seed, int trials, const Sizes& sz);

std::vector<CheckResult> run_identity_suite(std::uint64_t seed, int trials,
                                            const Sizes& sz);
bool all_passed(const std::vector<CheckResult>& results);
void print_results(std::ostream& os, const std::vector<CheckResult>& results);

}  // namespace axim::verify

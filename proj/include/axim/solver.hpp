#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "axim/axial.hpp"
#include "axim/image.hpp"

namespace axim {

struct SolverConfig {
  double lambda1 = 2e-3;  // l1 weight
  double lambda2 = 1e-4;  // squared-l2 weight
  int max_iters = 150;
  std::optional<double> initial_step;  // nullopt: 1/L with L estimated by power iteration
  double backtrack_shrink = 0.5;
  std::optional<double> tol;  // relative objective-change stop; nullopt: fixed budget
  bool record_trace = true;
  int threads = 1;

  void validate() const;
};

struct SolverReport {
  Image estimate;
  std::vector<double> objective_trace;  // composite objective per iteration
  std::vector<double> step_trace;       // accepted step per iteration
  int iterations = 0;
  double initial_objective = 0.0;
};

// Composite objective (1/2)||HPx - y||^2 + lambda1*||x||_1 + (lambda2/2)*||x||^2.
double objective_value(const ForwardModel& model, const Image& x, const Image& y,
                       const SolverConfig& cfg);

// Proximal mapping of step * (lambda1*||.||_1 + (lambda2/2)*||.||^2):
// elementwise soft-threshold by step*lambda1, then divide by 1 + step*lambda2.
Image prox_elastic_net(const Image& v, double step, double lambda1, double lambda2);

// Estimate of ||HP||_2 by power iteration on (HP)^T (HP).
double estimate_operator_norm(const ForwardModel& model, int iterations = 10,
                              std::uint64_t seed = 0x706f776572ULL, int threads = 1);

// Accelerated proximal gradient deconvolution with backtracking line search
// on the quadratic upper-bound condition. If an extrapolated step would
// increase the composite objective, the iteration falls back to the plain
// proximal gradient step from the previous iterate, so the recorded
// objective trace is non-increasing. x0 == nullptr starts from zero.
SolverReport deconvolve(const ForwardModel& model, const Image& y, const SolverConfig& cfg,
                        const Image* x0 = nullptr);

// CSV trace: header `iter,objective,step`, one line per iteration.
void write_trace_csv(std::ostream& os, const SolverReport& report);

}  // namespace axim

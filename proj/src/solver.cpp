#include "axim/solver.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "axim/rng.hpp"

namespace axim {

void SolverConfig::validate() const {
  if (lambda1 < 0.0 || lambda2 < 0.0) {
    throw std::invalid_argument("SolverConfig: regularization weights must be nonnegative");
  }
  if (max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
  if (!(backtrack_shrink > 0.0 && backtrack_shrink < 1.0)) {
    throw std::invalid_argument("SolverConfig: backtrack_shrink must be in (0, 1)");
  }
  if (initial_step && !(*initial_step > 0.0)) {
    throw std::invalid_argument("SolverConfig: initial_step must be positive");
  }
  if (tol && !(*tol > 0.0)) throw std::invalid_argument("SolverConfig: tol must be positive");
  if (threads < 1) throw std::invalid_argument("SolverConfig: threads must be >= 1");
}

namespace {

double regularizer(const Image& x, const SolverConfig& cfg) {
  return cfg.lambda1 * norm1(x) + 0.5 * cfg.lambda2 * sum_squares(x);
}

void check_observation(const ForwardModel& model, const Image& y) {
  if (y.rows() != model.stack.image_rows() || y.cols() != model.stack.image_cols()) {
    throw std::invalid_argument("observation must be " +
                                std::to_string(model.stack.image_rows()) + "x" +
                                std::to_string(model.stack.image_cols()));
  }
}

}  // namespace

double objective_value(const ForwardModel& model, const Image& x, const Image& y,
                       const SolverConfig& cfg) {
  check_observation(model, y);
  Image residual = model.apply(x, cfg.threads) - y;
  return 0.5 * sum_squares(residual) + regularizer(x, cfg);
}

Image prox_elastic_net(const Image& v, double step, double lambda1, double lambda2) {
  if (!(step > 0.0)) throw std::invalid_argument("prox_elastic_net: step must be positive");
  const double threshold = step * lambda1;
  const double denom = 1.0 + step * lambda2;
  Image out(v.rows(), v.cols());
  const double* pv = v.data();
  double* po = out.data();
  for (std::int64_t i = 0; i < v.size(); ++i) {
    const double mag = std::abs(pv[i]) - threshold;
    po[i] = mag > 0.0 ? std::copysign(mag, pv[i]) / denom : 0.0;
  }
  return out;
}

double estimate_operator_norm(const ForwardModel& model, int iterations, std::uint64_t seed,
                              int threads) {
  CounterRng rng(seed);
  Image b(model.stack.image_rows(), model.stack.image_cols());
  double* pb = b.data();
  for (std::int64_t i = 0; i < b.size(); ++i) pb[i] = rng.normal(static_cast<std::uint64_t>(i));
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const double nb = norm2(b);
    if (!(nb > 0.0)) return 0.0;
    Image bn = (1.0 / nb) * b;
    Image c = model.apply(bn, threads);
    lambda = sum_squares(c);  // Rayleigh quotient of (HP)^T(HP) at unit bn
    b = model.apply_adjoint(c, threads);
  }
  return std::sqrt(std::max(lambda, 0.0));
}

SolverReport deconvolve(const ForwardModel& model, const Image& y, const SolverConfig& cfg,
                        const Image* x0) {
  cfg.validate();
  check_observation(model, y);
  const int threads = cfg.threads;

  Image x = x0 ? *x0 : Image(model.stack.image_rows(), model.stack.image_cols());
  if (x0 && (x0->rows() != model.stack.image_rows() || x0->cols() != model.stack.image_cols())) {
    throw std::invalid_argument("deconvolve: x0 shape mismatch");
  }

  double step = 1.0;
  if (cfg.initial_step) {
    step = *cfg.initial_step;
  } else {
    const double norm_est = estimate_operator_norm(model, 10, 0x706f776572ULL, threads);
    step = norm_est > 0.0 ? 1.0 / (norm_est * norm_est) : 1.0;
  }

  // f and its gradient at a point, sharing one forward application.
  auto smooth_at = [&](const Image& z, double& f, Image& grad) {
    Image residual = model.apply(z, threads) - y;
    f = 0.5 * sum_squares(residual);
    grad = model.apply_adjoint(residual, threads);
  };
  auto smooth_value = [&](const Image& z) {
    Image residual = model.apply(z, threads) - y;
    return 0.5 * sum_squares(residual);
  };

  // Backtracking proximal step from `base`; returns the accepted candidate
  // and its smooth value, shrinking `step` until the quadratic upper bound
  // holds.
  auto prox_step = [&](const Image& base, double f_base, const Image& grad, Image& cand,
                       double& f_cand) {
    for (int attempt = 0; attempt < 200; ++attempt) {
      Image target = base;
      axpy(-step, grad, target);
      cand = prox_elastic_net(target, step, cfg.lambda1, cfg.lambda2);
      f_cand = smooth_value(cand);
      Image dx = cand - base;
      const double bound = f_base + dot(grad, dx) + sum_squares(dx) / (2.0 * step);
      if (f_cand <= bound + 1e-12 * std::max(1.0, std::abs(bound))) return;
      step *= cfg.backtrack_shrink;
    }
    throw std::runtime_error("deconvolve: backtracking line search failed to terminate");
  };

  SolverReport report;
  report.initial_objective = smooth_value(x) + regularizer(x, cfg);

  Image x_prev = x;
  double momentum = 1.0;  // FISTA extrapolation coefficient sequence
  double beta = 0.0;
  double objective_prev = report.initial_objective;

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    if (iter > 1) step *= 2.0;  // allow growth before backtracking

    Image z = x;
    if (beta != 0.0) {
      axpy(beta, x, z);
      axpy(-beta, x_prev, z);
    }

    double f_z = 0.0;
    Image grad;
    smooth_at(z, f_z, grad);

    Image cand;
    double f_cand = 0.0;
    prox_step(z, f_z, grad, cand, f_cand);
    double objective_cand = f_cand + regularizer(cand, cfg);

    if (objective_cand > objective_prev) {
      // Extrapolation overshot: plain proximal gradient step from x, which
      // the upper-bound condition makes non-increasing. Restart momentum.
      double f_x = 0.0;
      smooth_at(x, f_x, grad);
      prox_step(x, f_x, grad, cand, f_cand);
      objective_cand = f_cand + regularizer(cand, cfg);
      momentum = 1.0;
      if (objective_cand > objective_prev) {
        // no measurable descent left (floating-point floor); keep the
        // previous iterate so the recorded trace never increases
        cand = x;
        objective_cand = objective_prev;
      }
    }

    if (!std::isfinite(objective_cand)) {
      throw std::runtime_error("deconvolve: non-finite objective at iteration " +
                               std::to_string(iter));
    }

    x_prev = std::move(x);
    x = std::move(cand);
    const double momentum_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    beta = (momentum - 1.0) / momentum_next;
    momentum = momentum_next;

    report.iterations = iter;
    if (cfg.record_trace) {
      report.objective_trace.push_back(objective_cand);
      report.step_trace.push_back(step);
    }

    const bool converged =
        cfg.tol && std::abs(objective_prev - objective_cand) <=
                       *cfg.tol * std::max(std::abs(objective_prev), 1e-300);
    objective_prev = objective_cand;
    if (converged) break;
  }

  report.estimate = std::move(x);
  return report;
}

void write_trace_csv(std::ostream& os, const SolverReport& report) {
  os << "iter,objective,step\n";
  char buf[128];
  for (std::size_t i = 0; i < report.objective_trace.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g", i + 1, report.objective_trace[i],
                  report.step_trace[i]);
    os << buf << "\n";
  }
}

}  // namespace axim

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace hlcpinn {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  std::int64_t step = 0;
  std::vector<double> m, v;

  explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
};

/// Standard bias-corrected Adam update, full batch.
void adam_step(AdamState& state, std::span<double> params, std::span<const double> grad,
               const AdamConfig& cfg);

/// Loss callback: fills grad (same length as params) and returns the loss.
using LossGradFn = std::function<double(std::span<const double> params, std::span<double> grad)>;

struct LbfgsConfig {
  int history = 50;
  double c1 = 1e-4;        // sufficient decrease
  double c2 = 0.9;         // curvature
  double tol_g = 1e-9;     // gradient-norm stop
  double tol_f = 1e-12;    // relative-decrease stop, over a patience window
  int patience = 20;
  int max_line_trials = 25;
  int max_ls_failures = 5;  // consecutive failures before giving up
};

enum class LbfgsStatus { max_iters, grad_tol, f_tol, line_search_failed, stationary };

struct LbfgsReport {
  LbfgsStatus status = LbfgsStatus::max_iters;
  int iterations = 0;
  long long evaluations = 0;
  double final_loss = 0.0;
  double final_grad_norm = 0.0;
};

/// Called after every accepted iteration with (iter, loss, grad_norm, params).
using LbfgsCallback =
    std::function<void(int, double, double, std::span<const double>)>;

/// Two-loop-recursion L-BFGS with a strong-Wolfe line search; falls back to
/// backtracking steepest descent when the line search fails. Deterministic:
/// identical inputs produce bit-identical trajectories.
LbfgsReport lbfgs_minimize(const LossGradFn& fn, std::vector<double>& params,
                           const LbfgsConfig& cfg, int max_iters,
                           const LbfgsCallback& callback = nullptr);

}  // namespace hlcpinn

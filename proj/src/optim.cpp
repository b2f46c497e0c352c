#include "hlcpinn/optim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace hlcpinn {

void adam_step(AdamState& state, std::span<double> params, std::span<const double> grad,
               const AdamConfig& cfg) {
  if (params.size() != grad.size() || params.size() != state.m.size())
    throw std::invalid_argument("adam_step: size mismatch");
  state.step += 1;
  const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * grad[i];
    state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * grad[i] * grad[i];
    const double mhat = state.m[i] / bc1;
    const double vhat = state.v[i] / bc2;
    params[i] -= cfg.lr * mhat / (std::sqrt(vhat) + cfg.eps);
  }
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

struct Pair {
  std::vector<double> s, y;
  double rho;
};

// phi(alpha) = f(x + alpha d); evaluates loss and gradient at the trial
// point, returning phi and phi' = g . d.
struct LineEval {
  const LossGradFn& fn;
  std::span<const double> x0;
  std::span<const double> dir;
  std::vector<double>& xt;    // trial point storage
  std::vector<double>& gt;    // trial gradient storage
  long long& evals;

  double operator()(double alpha, double& dphi) {
    for (std::size_t i = 0; i < x0.size(); ++i) xt[i] = x0[i] + alpha * dir[i];
    const double f = fn(xt, gt);
    ++evals;
    dphi = dot(gt, dir);
    return f;
  }
};

// Cubic minimizer of the interpolant through (a, fa, da) and (b, fb, db),
// clipped into the interior of [lo, hi]. Falls back to bisection when the
// cubic is degenerate.
double cubic_min(double a, double fa, double da, double b, double fb, double db,
                 double lo, double hi) {
  const double d1 = da + db - 3.0 * (fa - fb) / (a - b);
  const double disc = d1 * d1 - da * db;
  double cand;
  if (disc >= 0.0 && std::abs(a - b) > 0.0) {
    const double d2 = std::copysign(std::sqrt(disc), b - a);
    cand = b - (b - a) * (db + d2 - d1) / (db - da + 2.0 * d2);
  } else {
    cand = 0.5 * (lo + hi);
  }
  const double span = hi - lo;
  if (!(cand > lo + 0.1 * span && cand < hi - 0.1 * span)) cand = 0.5 * (lo + hi);
  return cand;
}

struct WolfeResult {
  bool ok = false;
  double alpha = 0.0, f = 0.0;
};

// Strong Wolfe line search (bracket + zoom). On success the trial buffers
// hold the point and gradient at the accepted step.
WolfeResult wolfe_search(LineEval& phi, double f0, double dphi0, double alpha_init,
                         const LbfgsConfig& cfg) {
  const double c1 = cfg.c1, c2 = cfg.c2;
  const double alpha_max = 1e6;

  auto zoom = [&](double alo, double flo, double dlo, double ahi, double fhi,
                  double dhi) -> WolfeResult {
    for (int it = 0; it < cfg.max_line_trials; ++it) {
      const double lo = std::min(alo, ahi), hi = std::max(alo, ahi);
      if (hi - lo < 1e-16 * std::max(1.0, hi)) break;
      const double aj = cubic_min(alo, flo, dlo, ahi, fhi, dhi, lo, hi);
      double dj;
      const double fj = phi(aj, dj);
      if (!std::isfinite(fj)) {
        ahi = aj; fhi = fj; dhi = dj;
        continue;
      }
      if (fj > f0 + c1 * aj * dphi0 || fj >= flo) {
        ahi = aj; fhi = fj; dhi = dj;
      } else {
        if (std::abs(dj) <= -c2 * dphi0) return {true, aj, fj};
        if (dj * (ahi - alo) >= 0.0) { ahi = alo; fhi = flo; dhi = dlo; }
        alo = aj; flo = fj; dlo = dj;
      }
    }
    return {};
  };

  double aprev = 0.0, fprev = f0, dprev = dphi0;
  double a = alpha_init;
  for (int it = 0; it < cfg.max_line_trials; ++it) {
    double d;
    const double f = phi(a, d);
    if (!std::isfinite(f)) {
      // Shrink back toward the last good point.
      const WolfeResult z = zoom(aprev, fprev, dprev, a, f0 + 1e30, 0.0);
      return z;
    }
    if (f > f0 + c1 * a * dphi0 || (it > 0 && f >= fprev))
      return zoom(aprev, fprev, dprev, a, f, d);
    if (std::abs(d) <= -c2 * dphi0) return {true, a, f};
    if (d >= 0.0) return zoom(a, f, d, aprev, fprev, dprev);
    aprev = a; fprev = f; dprev = d;
    a = std::min(2.0 * a, alpha_max);
    if (a >= alpha_max) break;
  }
  return {};
}

}  // namespace

LbfgsReport lbfgs_minimize(const LossGradFn& fn, std::vector<double>& params,
                           const LbfgsConfig& cfg, int max_iters,
                           const LbfgsCallback& callback) {
  const std::size_t n = params.size();
  LbfgsReport rep;

  std::vector<double> g(n), xt(n), gt(n), dir(n), q(n);
  double f = fn(params, g);
  rep.evaluations = 1;
  double gnorm = norm2(g);

  if (gnorm <= cfg.tol_g) {
    rep.status = LbfgsStatus::stationary;
    rep.final_loss = f;
    rep.final_grad_norm = gnorm;
    if (callback) callback(0, f, gnorm, params);
    return rep;
  }

  std::deque<Pair> hist;
  std::vector<double> alpha_hist;
  int stall = 0;
  int ls_failures = 0;

  for (int iter = 1; iter <= max_iters; ++iter) {
    // Two-loop recursion on the gathered curvature pairs.
    q = g;
    alpha_hist.assign(hist.size(), 0.0);
    for (int i = static_cast<int>(hist.size()) - 1; i >= 0; --i) {
      const Pair& p = hist[i];
      const double a = p.rho * dot(p.s, q);
      alpha_hist[i] = a;
      for (std::size_t k = 0; k < n; ++k) q[k] -= a * p.y[k];
    }
    double gamma = 1.0;
    if (!hist.empty()) {
      const Pair& p = hist.back();
      gamma = dot(p.s, p.y) / dot(p.y, p.y);
    }
    for (std::size_t k = 0; k < n; ++k) q[k] *= gamma;
    for (int i = 0; i < static_cast<int>(hist.size()); ++i) {
      const Pair& p = hist[i];
      const double beta = p.rho * dot(p.y, q);
      for (std::size_t k = 0; k < n; ++k) q[k] += (alpha_hist[i] - beta) * p.s[k];
    }
    for (std::size_t k = 0; k < n; ++k) dir[k] = -q[k];

    double dphi0 = dot(g, dir);
    if (dphi0 >= 0.0) {
      // Not a descent direction; restart from steepest descent.
      hist.clear();
      for (std::size_t k = 0; k < n; ++k) dir[k] = -g[k];
      dphi0 = -gnorm * gnorm;
    }

    LineEval phi{fn, params, dir, xt, gt, rep.evaluations};
    const double a0 = hist.empty() ? std::min(1.0, 1.0 / std::max(1.0, gnorm)) : 1.0;
    WolfeResult w = wolfe_search(phi, f, dphi0, a0, cfg);

    if (!w.ok) {
      // Backtracking steepest descent as a fallback.
      for (std::size_t k = 0; k < n; ++k) dir[k] = -g[k];
      dphi0 = -gnorm * gnorm;
      double a = 1.0 / std::max(1.0, gnorm);
      bool accepted = false;
      for (int bt = 0; bt < cfg.max_line_trials; ++bt) {
        double d;
        const double ft = phi(a, d);
        if (std::isfinite(ft) && ft < f + cfg.c1 * a * dphi0) {
          w = {true, a, ft};
          accepted = true;
          break;
        }
        a *= 0.5;
      }
      hist.clear();
      if (!accepted) {
        if (++ls_failures >= cfg.max_ls_failures) {
          rep.status = LbfgsStatus::line_search_failed;
          rep.iterations = iter - 1;
          rep.final_loss = f;
          rep.final_grad_norm = gnorm;
          return rep;
        }
        continue;
      }
    }
    ls_failures = 0;

    // Accept: xt/gt hold the new point and gradient.
    Pair p;
    p.s.resize(n);
    p.y.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      p.s[k] = xt[k] - params[k];
      p.y[k] = gt[k] - g[k];
    }
    const double sy = dot(p.s, p.y);
    if (sy > 1e-12 * norm2(p.s) * norm2(p.y)) {
      p.rho = 1.0 / sy;
      hist.push_back(std::move(p));
      if (static_cast<int>(hist.size()) > cfg.history) hist.pop_front();
    }

    const double f_prev = f;
    params.swap(xt);
    g.swap(gt);
    f = w.f;
    gnorm = norm2(g);
    rep.iterations = iter;
    if (callback) callback(iter, f, gnorm, params);

    if (gnorm <= cfg.tol_g) {
      rep.status = LbfgsStatus::grad_tol;
      break;
    }
    if (f_prev - f < cfg.tol_f * std::max(1.0, std::abs(f_prev))) {
      if (++stall >= cfg.patience) {
        rep.status = LbfgsStatus::f_tol;
        break;
      }
    } else {
      stall = 0;
    }
  }

  rep.final_loss = f;
  rep.final_grad_norm = gnorm;
  return rep;
}

}  // namespace hlcpinn

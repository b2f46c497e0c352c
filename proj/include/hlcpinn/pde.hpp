#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hlcpinn/jet.hpp"

namespace hlcpinn {

enum class ProblemKind { Heat, Burgers, Wave, KleinGordon };

/// One PDE instance on a 1D spatial interval times [0, horizon]. All four
/// shipped problems use manufactured solutions: the source term is whatever
/// the PDE operator produces on the closed-form exact field, so residuals on
/// the exact solution vanish identically.
struct ProblemSpec {
  ProblemKind kind;
  double x_lo, x_hi;
  double horizon;

  double nu = 0.0;       // heat / burgers diffusion
  double wave_c = 0.0;   // wave speed
  double wave_delta0 = 0.0;
  double wave_x0 = 0.0;
  double kg_eps = 1.0;   // Klein-Gordon (eps, a, eps1)
  double kg_a = 1.0;
  double kg_eps1 = 1.0;

  int out_dim = 1;                       // 1 for heat/burgers, 2 for wave/KG
  std::vector<double> penalty_weights;   // W_k defaults, PDE-specific arity

  bool has_v() const { return out_dim == 2; }
  /// Number of interior residual families (1 or 3).
  int interior_families() const { return has_v() ? 3 : 1; }
  /// Number of temporal matching families per block boundary (1 or 3).
  int temporal_families() const { return has_v() ? 3 : 1; }
};

ProblemSpec make_problem(ProblemKind kind);
ProblemSpec problem_from_name(std::string_view name);  // "heat" | "burgers" | "wave" | "kleingordon"
const char* problem_name(ProblemKind kind);

/// Expected penalty-weight count for the problem's loss: 3 (heat),
/// 5 (burgers), 8 (wave), 7 (Klein-Gordon).
int penalty_weight_count(ProblemKind kind);

/// Exact solution evaluated through jets on its closed form; all five
/// channels are analytic.
Jet2 exact_u(const ProblemSpec& spec, double x, double t);

/// Exact auxiliary field v = du/dt, written as its own closed form so that
/// its jet carries d2u/dt2 in the d/dt channel. Defined for wave/KG.
Jet2 exact_v(const ProblemSpec& spec, double x, double t);

/// Manufactured source term: the PDE operator applied to the exact solution.
/// Identically zero for the wave problem.
double source_term(const ProblemSpec& spec, double x, double t);

/// Interior residuals at one point given the network output jets
/// (u and, for two-field problems, v) and the source value f at that point.
/// Writes 1 or 3 values:
///   heat:    r0 = u_t - nu u_xx - f
///   burgers: r0 = u_t - nu u_xx + u u_x - f
///   wave:    r0 = u_t - v, r1 = v_t - c^2 u_xx, r2 = u_xt - v_x
///   KG:      r0 = u_t - v, r1 = e^2 v_t - a^2 u_xx + e1^2 u + sin(u) - f,
///            r2 = u_xt - v_x
int interior_residuals(const ProblemSpec& spec, const Jet2* out, double f, double r[3]);

/// Convenience overload that evaluates the source term itself.
int interior_residuals(const ProblemSpec& spec, const Jet2* out, double x, double t,
                       double r[3]);

/// Spatial-boundary residuals at time t given output jets at both ends.
/// Writes 2 values:
///   heat/burgers: r0 = u(lo) - g_lo(t), r1 = u(hi) - g_hi(t)
///   wave (periodic pair): r0 = v(lo) - v(hi), r1 = u_x(lo) - u_x(hi)
///   KG: r0 = v(lo) - u_dt(lo, t), r1 = v(hi) - u_dt(hi, t)
int boundary_residuals(const ProblemSpec& spec, const Jet2* at_lo, const Jet2* at_hi,
                       double t, double r[2]);

/// Temporal matching residuals at a block boundary: current-block fields
/// minus target data (frozen previous block, or the true initial data).
/// Families: u (always); v and u_x for two-field problems.
int temporal_residuals(const ProblemSpec& spec, const Jet2* out, double target_u,
                       double target_v, double target_ux, double r[3]);

/// Initial data (t = 0): u, and for two-field problems v and du/dx.
void initial_data(const ProblemSpec& spec, double x, double& u0, double& v0, double& ux0);

}  // namespace hlcpinn

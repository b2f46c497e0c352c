#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hlcpinn/jet.hpp"
#include "hlcpinn/pde.hpp"

namespace hlcpinn {

/// Collocation sets for one time block: n_c interior points in
/// D x (t_{i-1}, t_i), n_c boundary times in (t_{i-1}, t_i) (each evaluated
/// at both spatial ends), and n_c spatial points reused at every required
/// block-boundary time. Fully determined by (seed, block_index).
struct CollocationSets {
  std::vector<double> interior_x, interior_t;
  std::vector<double> boundary_t;
  std::vector<double> temporal_x;
  double t_lo = 0.0, t_hi = 0.0;
};

CollocationSets sample_block(std::uint64_t seed, int block_index, const ProblemSpec& spec,
                             int n_c, int n_blocks);

/// Midpoint grid on an interval or rectangle; weights sum to the measure.
struct QuadratureGrid {
  std::vector<double> x, t, w;
};

QuadratureGrid midpoint_grid_1d(double lo, double hi, int cells);
QuadratureGrid midpoint_grid_2d(double x_lo, double x_hi, double t_lo, double t_hi,
                                int cells_x, int cells_t);

double midpoint_integrate(const std::function<double(double)>& f, double lo, double hi,
                          int cells);
double midpoint_integrate(const std::function<double(double, double)>& f, double x_lo,
                          double x_hi, double t_lo, double t_hi, int cells_x, int cells_t);

/// A space-time field handing back output jets (u and, for two-field
/// problems, v) at a point; either a trained network or a closed form.
using FieldEval = std::function<void(double x, double t, Jet2* out)>;

/// Midpoint-quadrature estimate of the generalization error
/// E_{G_i}^2 = Etilde_{G_i}^2 + E_{G_{i-1}}^2 with the recursive term zero at
/// i = 1. fields[j] evaluates the block-(j+1) approximation; temporal
/// matching at t_0 uses the true initial data. m_per_axis controls the
/// quadrature resolution. Diagnostic only; training uses the Monte Carlo
/// losses in marching.hpp.
double generalization_error(const ProblemSpec& spec, std::span<const FieldEval> fields,
                            int block_index, int m_per_axis, int n_blocks);

}  // namespace hlcpinn

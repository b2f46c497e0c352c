#include "hlcpinn/sampling.hpp"

#include <cmath>
#include <stdexcept>

#include "hlcpinn/rng.hpp"

namespace hlcpinn {

CollocationSets sample_block(std::uint64_t seed, int block_index, const ProblemSpec& spec,
                             int n_c, int n_blocks) {
  if (n_c < 1) throw std::invalid_argument("n_c must be >= 1");
  if (block_index < 1 || block_index > n_blocks)
    throw std::invalid_argument("block index out of range");
  CollocationSets s;
  s.t_lo = spec.horizon * (block_index - 1) / n_blocks;
  s.t_hi = spec.horizon * block_index / n_blocks;
  s.interior_x.resize(n_c);
  s.interior_t.resize(n_c);
  s.boundary_t.resize(n_c);
  s.temporal_x.resize(n_c);

  SplitMix64 gi = substream(seed, Stream::interior, static_cast<std::uint64_t>(block_index));
  for (int n = 0; n < n_c; ++n) {
    s.interior_x[n] = gi.next_in(spec.x_lo, spec.x_hi);
    s.interior_t[n] = gi.next_in(s.t_lo, s.t_hi);
  }
  SplitMix64 gs = substream(seed, Stream::spatial_boundary, static_cast<std::uint64_t>(block_index));
  for (int n = 0; n < n_c; ++n) s.boundary_t[n] = gs.next_in(s.t_lo, s.t_hi);
  SplitMix64 gt = substream(seed, Stream::temporal_boundary, static_cast<std::uint64_t>(block_index));
  for (int n = 0; n < n_c; ++n) s.temporal_x[n] = gt.next_in(spec.x_lo, spec.x_hi);
  return s;
}

QuadratureGrid midpoint_grid_1d(double lo, double hi, int cells) {
  if (cells < 1) throw std::invalid_argument("cells must be >= 1");
  QuadratureGrid g;
  const double h = (hi - lo) / cells;
  g.x.resize(cells);
  g.w.assign(cells, h);
  for (int i = 0; i < cells; ++i) g.x[i] = lo + (i + 0.5) * h;
  return g;
}

QuadratureGrid midpoint_grid_2d(double x_lo, double x_hi, double t_lo, double t_hi,
                                int cells_x, int cells_t) {
  if (cells_x < 1 || cells_t < 1) throw std::invalid_argument("cells must be >= 1");
  QuadratureGrid g;
  const double hx = (x_hi - x_lo) / cells_x;
  const double ht = (t_hi - t_lo) / cells_t;
  g.x.resize(static_cast<std::size_t>(cells_x) * cells_t);
  g.t.resize(g.x.size());
  g.w.assign(g.x.size(), hx * ht);
  std::size_t idx = 0;
  for (int i = 0; i < cells_x; ++i)
    for (int j = 0; j < cells_t; ++j, ++idx) {
      g.x[idx] = x_lo + (i + 0.5) * hx;
      g.t[idx] = t_lo + (j + 0.5) * ht;
    }
  return g;
}

double midpoint_integrate(const std::function<double(double)>& f, double lo, double hi,
                          int cells) {
  const QuadratureGrid g = midpoint_grid_1d(lo, hi, cells);
  double acc = 0.0;
  for (std::size_t i = 0; i < g.x.size(); ++i) acc += g.w[i] * f(g.x[i]);
  return acc;
}

double midpoint_integrate(const std::function<double(double, double)>& f, double x_lo,
                          double x_hi, double t_lo, double t_hi, int cells_x, int cells_t) {
  const QuadratureGrid g = midpoint_grid_2d(x_lo, x_hi, t_lo, t_hi, cells_x, cells_t);
  double acc = 0.0;
  for (std::size_t i = 0; i < g.x.size(); ++i) acc += g.w[i] * f(g.x[i], g.t[i]);
  return acc;
}

namespace {

// Squared sums entering Etilde_{G_i}^2 for one block. Interior and temporal
// terms enter squared; the spatial-boundary integral enters under a square
// root, with both ends contributing to the same integral (ds is counting
// measure on {lo, hi}).
double block_generalization_sq(const ProblemSpec& spec, std::span<const FieldEval> fields,
                               int i, int m, int n_blocks) {
  const FieldEval& cur = fields[i - 1];
  const double t_lo = spec.horizon * (i - 1) / n_blocks;
  const double t_hi = spec.horizon * static_cast<double>(i) / n_blocks;
  Jet2 out[2];
  double r[3];

  double interior = 0.0;
  {
    const QuadratureGrid g = midpoint_grid_2d(spec.x_lo, spec.x_hi, t_lo, t_hi, m, m);
    for (std::size_t p = 0; p < g.x.size(); ++p) {
      cur(g.x[p], g.t[p], out);
      const int nr = interior_residuals(spec, out, g.x[p], g.t[p], r);
      double sq = 0.0;
      for (int q = 0; q < nr; ++q) sq += r[q] * r[q];
      interior += g.w[p] * sq;
    }
  }

  double temporal = 0.0;
  {
    const QuadratureGrid g = midpoint_grid_1d(spec.x_lo, spec.x_hi, m);
    for (int j = 1; j <= i; ++j) {
      const double tj = spec.horizon * (j - 1) / n_blocks;
      for (std::size_t p = 0; p < g.x.size(); ++p) {
        double tu, tv = 0.0, tux = 0.0;
        if (j == 1) {
          initial_data(spec, g.x[p], tu, tv, tux);
        } else {
          Jet2 prev[2];
          fields[j - 2](g.x[p], tj, prev);
          tu = prev[0].v;
          if (spec.has_v()) { tv = prev[1].v; tux = prev[0].x; }
        }
        cur(g.x[p], tj, out);
        const int nr = temporal_residuals(spec, out, tu, tv, tux, r);
        double sq = 0.0;
        for (int q = 0; q < nr; ++q) sq += r[q] * r[q];
        temporal += g.w[p] * sq;
      }
    }
  }

  // Separate time integrals of the two boundary residual families (the two
  // ends for heat/burgers/KG, the two periodic defects for wave).
  double b0 = 0.0, b1 = 0.0;
  {
    const QuadratureGrid g = midpoint_grid_1d(t_lo, t_hi, m);
    Jet2 lo[2], hi[2];
    double rb[2];
    for (std::size_t p = 0; p < g.x.size(); ++p) {
      cur(spec.x_lo, g.x[p], lo);
      cur(spec.x_hi, g.x[p], hi);
      boundary_residuals(spec, lo, hi, g.x[p], rb);
      b0 += g.w[p] * rb[0] * rb[0];
      b1 += g.w[p] * rb[1] * rb[1];
    }
  }

  double boundary = 0.0;
  switch (spec.kind) {
    case ProblemKind::Heat:
    case ProblemKind::KleinGordon:
      boundary = std::sqrt(b0 + b1);
      break;
    case ProblemKind::Burgers:
      boundary = (b0 + b1) + std::sqrt(b0) + std::sqrt(b1);
      break;
    case ProblemKind::Wave:
      boundary = std::sqrt(b0) + std::sqrt(b1);
      break;
  }

  return interior + temporal + boundary;
}

}  // namespace

double generalization_error(const ProblemSpec& spec, std::span<const FieldEval> fields,
                            int block_index, int m_per_axis, int n_blocks) {
  if (block_index < 1 || block_index > static_cast<int>(fields.size()))
    throw std::invalid_argument("generalization_error: missing field evaluators");
  double sq = 0.0;
  for (int i = 1; i <= block_index; ++i)
    sq += block_generalization_sq(spec, fields, i, m_per_axis, n_blocks);
  return std::sqrt(sq);
}

}  // namespace hlcpinn

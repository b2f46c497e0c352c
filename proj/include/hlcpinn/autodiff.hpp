#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "hlcpinn/jet.hpp"
#include "hlcpinn/kernels.hpp"
#include "hlcpinn/network.hpp"

namespace hlcpinn {

/// One entry per trainable parameter, canonical ordering (see HLConcParams).
using GradVector = std::vector<double>;

/// Raised when a loss evaluation produces a non-finite value; carries the
/// first offending collocation point.
struct NonFiniteLossError : std::runtime_error {
  int point_index;
  explicit NonFiniteLossError(int idx, const std::string& what)
      : std::runtime_error(what), point_index(idx) {}
};

struct LossGradResult {
  double loss = 0.0;
  GradVector grad;
};

/// Loss callback contract: given the network's output jets at every point
/// (n * out_dim entries, point-major), return the loss value and fill the
/// same-shaped adjoint array with d(loss)/d(jet channel). The adjoints come
/// in zeroed.
using JetLossFn =
    std::function<double(std::span<const Jet2> outs, std::span<Jet2> adjoints)>;

/// Exact gradient of a scalar loss built from network output jets at a fixed
/// point set, with respect to every trainable parameter (including parameters
/// reached only through the derivative channels). Two-phase: batched jet
/// forward, loss/adjoint assembly, then a reverse sweep over the same points.
LossGradResult loss_gradient(const HLConcParams& params, const LayerActivations& acts,
                             std::span<const double> xs, std::span<const double> ts,
                             const JetLossFn& loss_fn,
                             kernels::Backend backend = kernels::preferred_backend(),
                             int threads = 0);

}  // namespace hlcpinn

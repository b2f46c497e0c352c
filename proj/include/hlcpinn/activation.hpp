#pragma once

#include <string>
#include <string_view>

namespace hlcpinn {

/// Smooth activation catalog. Every kind is C^3 or better on the whole real
/// line; derivatives through order three are needed because differentiating
/// a d2/dx2 channel with respect to a pre-activation consumes one extra
/// order.
enum class ActivationKind { Tanh, Sine, Gaussian, Swish, Softplus };

struct ActDerivs {
  double f;
  double d1;
  double d2;
  double d3;
};

/// Analytic value and first three derivatives at z.
ActDerivs eval_derivs(ActivationKind kind, double z);

/// Config-file names: "tanh" | "sine" | "gaussian" | "swish" | "softplus".
const char* activation_name(ActivationKind kind);

/// Throws std::invalid_argument on an unknown name.
ActivationKind activation_from_name(std::string_view name);

}  // namespace hlcpinn

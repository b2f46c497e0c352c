#include "hlcpinn/activation.hpp"

#include <cmath>
#include <stdexcept>

namespace hlcpinn {

namespace {

inline double sigmoid(double z) {
  return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
}

}  // namespace

ActDerivs eval_derivs(ActivationKind kind, double z) {
  switch (kind) {
    case ActivationKind::Tanh: {
      const double f = std::tanh(z);
      const double d1 = 1.0 - f * f;
      const double d2 = -2.0 * f * d1;
      const double d3 = -2.0 * d1 * (1.0 - 3.0 * f * f);
      return {f, d1, d2, d3};
    }
    case ActivationKind::Sine: {
      const double s = std::sin(z);
      const double c = std::cos(z);
      return {s, c, -s, -c};
    }
    case ActivationKind::Gaussian: {
      // exp(-z^2)
      const double g = std::exp(-z * z);
      return {g, -2.0 * z * g, (4.0 * z * z - 2.0) * g,
              (12.0 * z - 8.0 * z * z * z) * g};
    }
    case ActivationKind::Swish: {
      // z * sigmoid(z)
      const double s = sigmoid(z);
      const double s1 = s * (1.0 - s);
      const double s2 = s1 * (1.0 - 2.0 * s);
      const double s3 = s1 * (1.0 - 6.0 * s + 6.0 * s * s);
      return {z * s, s + z * s1, 2.0 * s1 + z * s2, 3.0 * s2 + z * s3};
    }
    case ActivationKind::Softplus: {
      // log(1 + exp(z)); for large z the direct form overflows, so switch to
      // the z + exp(-z) expansion there.
      const double s = sigmoid(z);
      const double s1 = s * (1.0 - s);
      const double s2 = s1 * (1.0 - 2.0 * s);
      double f;
      if (z > 30.0) {
        f = z + std::exp(-z);
      } else if (z < -30.0) {
        f = std::exp(z);
      } else {
        f = std::log1p(std::exp(z));
      }
      return {f, s, s1, s2};
    }
  }
  throw std::logic_error("unreachable activation kind");
}

const char* activation_name(ActivationKind kind) {
  switch (kind) {
    case ActivationKind::Tanh: return "tanh";
    case ActivationKind::Sine: return "sine";
    case ActivationKind::Gaussian: return "gaussian";
    case ActivationKind::Swish: return "swish";
    case ActivationKind::Softplus: return "softplus";
  }
  return "?";
}

ActivationKind activation_from_name(std::string_view name) {
  if (name == "tanh") return ActivationKind::Tanh;
  if (name == "sine") return ActivationKind::Sine;
  if (name == "gaussian") return ActivationKind::Gaussian;
  if (name == "swish") return ActivationKind::Swish;
  if (name == "softplus") return ActivationKind::Softplus;
  throw std::invalid_argument("unknown activation: " + std::string(name));
}

}  // namespace hlcpinn

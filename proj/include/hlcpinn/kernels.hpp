#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "hlcpinn/jet.hpp"
#include "hlcpinn/network.hpp"

namespace hlcpinn::kernels {

/// Batched evaluation backends. `scalar` is always available; `avx2` and
/// `neon` are compiled per architecture and selected at runtime. All
/// backends compute the same quantities; cross-backend agreement is
/// tolerance-tested, bit-level reproducibility holds per backend.
enum class Backend { scalar, avx2, neon };

bool backend_available(Backend b);
Backend preferred_backend();
/// "auto" | "scalar" | "avx2" | "neon"; throws std::invalid_argument on an
/// unknown or unavailable name.
Backend resolve_backend(std::string_view name);
const char* backend_name(Backend b);

constexpr int kMaxLayers = 16;

/// Flattened, non-owning view of a network for the batched kernels.
struct NetView {
  int L = 0;
  int widths[kMaxLayers + 1] = {};
  int out_dim = 0;
  const double* theta = nullptr;
  std::size_t w_off[kMaxLayers] = {};
  std::size_t b_off[kMaxLayers] = {};
  std::size_t m_off[kMaxLayers] = {};
  std::size_t bl_off = 0;
  ActivationKind act[kMaxLayers] = {};
  std::size_t n_params = 0;
};

NetView make_view(const ArchVector& arch, const LayerActivations& acts, const double* theta);

inline NetView make_view(const HLConcParams& params, const LayerActivations& acts) {
  return make_view(params.arch(), acts, params.flat().data());
}

/// Batched jet forward pass over n = xs.size() points.
/// channels selects the jet depth: 1 (value), 3 (value, d/dx, d/dt) or
/// 5 (adds d2/dx2, d2/dx dt). out must hold n * out_dim * channels doubles,
/// laid out point-major: out[(p*out_dim + o)*channels + c].
void forward(const NetView& net, std::span<const double> xs, std::span<const double> ts,
             int channels, std::span<double> out, Backend backend, int threads = 0);

/// Reverse sweep: accumulates d(sum_p sum_o sum_c adj[p,o,c] * y[p,o,c])/dtheta
/// into grad (canonical parameter ordering, same length as theta). Points are
/// processed in fixed 256-point chunks whose partial gradients are reduced in
/// chunk order, so the result does not depend on the number of threads.
void gradient(const NetView& net, std::span<const double> xs, std::span<const double> ts,
              int channels, std::span<const double> out_adjoint, std::span<double> grad,
              Backend backend, int threads = 0);

inline Jet2 jet_from_channels(const double* c) { return {c[0], c[1], c[2], c[3], c[4]}; }
inline void channels_from_jet(const Jet2& j, double* c) {
  c[0] = j.v; c[1] = j.x; c[2] = j.t; c[3] = j.xx; c[4] = j.xt;
}

}  // namespace hlcpinn::kernels

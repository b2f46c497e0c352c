#include "hlcpinn/kernels.hpp"

#include <atomic>
#include <cstring>
#include <stdexcept>
#include <thread>
#include <vector>

#include "kernels_backends.hpp"

namespace hlcpinn::kernels {

namespace {

constexpr int kChunk = 256;  // points per chunk; fixed so reductions are stable

int default_threads() {
  static const int n = [] {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }();
  return n;
}

using ForwardChunkFn = void (*)(const NetView&, const double*, const double*, int, int,
                                double*, std::vector<double>&);
using GradientChunkFn = void (*)(const NetView&, const double*, const double*,
                                 const double*, int, int, double*, std::vector<double>&);

ForwardChunkFn forward_fn(Backend b) {
  switch (b) {
    case Backend::scalar: return &forward_chunk_scalar;
#if defined(HLCPINN_HAVE_AVX2)
    case Backend::avx2: return &forward_chunk_avx2;
#endif
#if defined(HLCPINN_HAVE_NEON)
    case Backend::neon: return &forward_chunk_neon;
#endif
    default: throw std::invalid_argument("backend not available in this build");
  }
}

GradientChunkFn gradient_fn(Backend b) {
  switch (b) {
    case Backend::scalar: return &gradient_chunk_scalar;
#if defined(HLCPINN_HAVE_AVX2)
    case Backend::avx2: return &gradient_chunk_avx2;
#endif
#if defined(HLCPINN_HAVE_NEON)
    case Backend::neon: return &gradient_chunk_neon;
#endif
    default: throw std::invalid_argument("backend not available in this build");
  }
}

// Runs fn(chunk_index) over all chunks on `threads` workers. Chunk
// assignment is dynamic; callers must make chunk results order-independent
// or reduce them separately afterwards.
template <class Fn>
void parallel_chunks(int n_chunks, int threads, Fn&& fn) {
  if (threads <= 1 || n_chunks <= 1) {
    for (int c = 0; c < n_chunks; ++c) fn(c);
    return;
  }
  std::atomic<int> next{0};
  auto work = [&] {
    int c;
    while ((c = next.fetch_add(1)) < n_chunks) fn(c);
  };
  const int spawn = std::min(threads, n_chunks) - 1;
  std::vector<std::thread> pool;
  pool.reserve(spawn);
  for (int i = 0; i < spawn; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
}

void check_channels(int channels) {
  if (channels != 1 && channels != 3 && channels != 5)
    throw std::invalid_argument("channels must be 1, 3 or 5");
}

}  // namespace

bool backend_available(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#if defined(HLCPINN_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::neon:
#if defined(HLCPINN_HAVE_NEON)
      return true;  // baseline on aarch64
#else
      return false;
#endif
  }
  return false;
}

Backend preferred_backend() {
  if (backend_available(Backend::avx2)) return Backend::avx2;
  if (backend_available(Backend::neon)) return Backend::neon;
  return Backend::scalar;
}

Backend resolve_backend(std::string_view name) {
  if (name == "auto") return preferred_backend();
  Backend b;
  if (name == "scalar") b = Backend::scalar;
  else if (name == "avx2") b = Backend::avx2;
  else if (name == "neon") b = Backend::neon;
  else throw std::invalid_argument("unknown backend: " + std::string(name));
  if (!backend_available(b))
    throw std::invalid_argument("backend not available on this machine: " + std::string(name));
  return b;
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "?";
}

NetView make_view(const ArchVector& arch, const LayerActivations& acts, const double* theta) {
  const int L = arch.layers();
  if (L + 1 > kMaxLayers) throw std::invalid_argument("architecture too deep for kernels");
  NetView v;
  v.L = L;
  for (int k = 0; k <= L; ++k) v.widths[k] = arch.widths[k];
  v.out_dim = arch.output_dim();
  v.theta = theta;
  std::size_t off = 0;
  for (int k = 1; k <= L - 1; ++k) {
    v.w_off[k] = off;
    off += static_cast<std::size_t>(arch.widths[k]) * arch.widths[k - 1];
    v.b_off[k] = off;
    off += arch.widths[k];
  }
  for (int i = 1; i <= L - 1; ++i) {
    v.m_off[i] = off;
    off += static_cast<std::size_t>(v.out_dim) * arch.widths[i];
  }
  v.bl_off = off;
  v.n_params = off + v.out_dim;
  for (int k = 1; k <= L - 1; ++k) v.act[k] = acts.kinds[k - 1];
  return v;
}

void forward(const NetView& net, std::span<const double> xs, std::span<const double> ts,
             int channels, std::span<double> out, Backend backend, int threads) {
  check_channels(channels);
  const int n = static_cast<int>(xs.size());
  if (ts.size() != xs.size()) throw std::invalid_argument("xs/ts size mismatch");
  if (out.size() != static_cast<std::size_t>(n) * net.out_dim * channels)
    throw std::invalid_argument("output span has wrong size");
  if (n == 0) return;
  const ForwardChunkFn fn = forward_fn(backend);
  const int n_chunks = (n + kChunk - 1) / kChunk;
  const int nt = threads <= 0 ? default_threads() : threads;
  thread_local std::vector<double> scratch_single;
  if (nt <= 1 || n_chunks <= 1) {
    for (int c = 0; c < n_chunks; ++c) {
      const int base = c * kChunk;
      const int len = std::min(kChunk, n - base);
      fn(net, xs.data() + base, ts.data() + base, len, channels,
         out.data() + static_cast<std::size_t>(base) * net.out_dim * channels, scratch_single);
    }
    return;
  }
  parallel_chunks(n_chunks, nt, [&](int c) {
    thread_local std::vector<double> scratch;
    const int base = c * kChunk;
    const int len = std::min(kChunk, n - base);
    fn(net, xs.data() + base, ts.data() + base, len, channels,
       out.data() + static_cast<std::size_t>(base) * net.out_dim * channels, scratch);
  });
}

void gradient(const NetView& net, std::span<const double> xs, std::span<const double> ts,
              int channels, std::span<const double> out_adjoint, std::span<double> grad,
              Backend backend, int threads) {
  check_channels(channels);
  const int n = static_cast<int>(xs.size());
  if (ts.size() != xs.size()) throw std::invalid_argument("xs/ts size mismatch");
  if (out_adjoint.size() != static_cast<std::size_t>(n) * net.out_dim * channels)
    throw std::invalid_argument("adjoint span has wrong size");
  if (grad.size() != net.n_params) throw std::invalid_argument("gradient span has wrong size");
  if (n == 0) return;
  const GradientChunkFn fn = gradient_fn(backend);
  const int n_chunks = (n + kChunk - 1) / kChunk;
  const int nt = threads <= 0 ? default_threads() : threads;

  if (nt <= 1 || n_chunks <= 1) {
    thread_local std::vector<double> scratch;
    for (int c = 0; c < n_chunks; ++c) {
      const int base = c * kChunk;
      const int len = std::min(kChunk, n - base);
      fn(net, xs.data() + base, ts.data() + base,
         out_adjoint.data() + static_cast<std::size_t>(base) * net.out_dim * channels, len,
         channels, grad.data(), scratch);
    }
    return;
  }
  // Per-chunk partial gradients, reduced in chunk order after the join, so
  // the sum is identical for any thread count.
  std::vector<std::vector<double>> partials(n_chunks);
  parallel_chunks(n_chunks, nt, [&](int c) {
    thread_local std::vector<double> scratch;
    partials[c].assign(net.n_params, 0.0);
    const int base = c * kChunk;
    const int len = std::min(kChunk, n - base);
    fn(net, xs.data() + base, ts.data() + base,
       out_adjoint.data() + static_cast<std::size_t>(base) * net.out_dim * channels, len,
       channels, partials[c].data(), scratch);
  });
  for (int c = 0; c < n_chunks; ++c)
    for (std::size_t p = 0; p < net.n_params; ++p) grad[p] += partials[c][p];
}

}  // namespace hlcpinn::kernels

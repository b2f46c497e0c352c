#include "kernels_backends.hpp"

#if defined(HLCPINN_HAVE_NEON)

#include <arm_neon.h>

#include "kernels_impl.hpp"

namespace hlcpinn::kernels {

struct PackNeon {
  static constexpr int width = 2;
  float64x2_t v;
  static PackNeon load(const double* p) { return {vld1q_f64(p)}; }
  void store(double* p) const { vst1q_f64(p, v); }
  static PackNeon broadcast(double s) { return {vdupq_n_f64(s)}; }
  static PackNeon zero() { return {vdupq_n_f64(0.0)}; }
  friend PackNeon operator+(PackNeon a, PackNeon b) { return {vaddq_f64(a.v, b.v)}; }
  friend PackNeon operator-(PackNeon a, PackNeon b) { return {vsubq_f64(a.v, b.v)}; }
  friend PackNeon operator*(PackNeon a, PackNeon b) { return {vmulq_f64(a.v, b.v)}; }
  // vfmaq_f64(c, a, b) computes c + a*b.
  static PackNeon fmadd(PackNeon a, PackNeon b, PackNeon c) {
    return {vfmaq_f64(c.v, a.v, b.v)};
  }
};

void forward_chunk_neon(const NetView& net, const double* xs, const double* ts, int n,
                        int channels, double* out, std::vector<double>& scratch) {
  run_forward_chunk<PackNeon>(net, xs, ts, n, channels, out, scratch);
}

void gradient_chunk_neon(const NetView& net, const double* xs, const double* ts,
                         const double* adj, int n, int channels, double* grad,
                         std::vector<double>& scratch) {
  run_gradient_chunk<PackNeon>(net, xs, ts, adj, n, channels, grad, scratch);
}

}  // namespace hlcpinn::kernels

#endif  // HLCPINN_HAVE_NEON

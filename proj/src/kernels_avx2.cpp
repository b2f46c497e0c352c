// Compiled with -mavx2 -mfma; callers must check backend_available(avx2)
// before dispatching here.

#include "kernels_backends.hpp"

#if defined(HLCPINN_HAVE_AVX2)

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace hlcpinn::kernels {

struct PackAvx2 {
  static constexpr int width = 4;
  __m256d v;
  static PackAvx2 load(const double* p) { return {_mm256_loadu_pd(p)}; }
  void store(double* p) const { _mm256_storeu_pd(p, v); }
  static PackAvx2 broadcast(double s) { return {_mm256_set1_pd(s)}; }
  static PackAvx2 zero() { return {_mm256_setzero_pd()}; }
  friend PackAvx2 operator+(PackAvx2 a, PackAvx2 b) { return {_mm256_add_pd(a.v, b.v)}; }
  friend PackAvx2 operator-(PackAvx2 a, PackAvx2 b) { return {_mm256_sub_pd(a.v, b.v)}; }
  friend PackAvx2 operator*(PackAvx2 a, PackAvx2 b) { return {_mm256_mul_pd(a.v, b.v)}; }
  static PackAvx2 fmadd(PackAvx2 a, PackAvx2 b, PackAvx2 c) {
    return {_mm256_fmadd_pd(a.v, b.v, c.v)};
  }
};

void forward_chunk_avx2(const NetView& net, const double* xs, const double* ts, int n,
                        int channels, double* out, std::vector<double>& scratch) {
  run_forward_chunk<PackAvx2>(net, xs, ts, n, channels, out, scratch);
}

void gradient_chunk_avx2(const NetView& net, const double* xs, const double* ts,
                         const double* adj, int n, int channels, double* grad,
                         std::vector<double>& scratch) {
  run_gradient_chunk<PackAvx2>(net, xs, ts, adj, n, channels, grad, scratch);
}

}  // namespace hlcpinn::kernels

#endif  // HLCPINN_HAVE_AVX2

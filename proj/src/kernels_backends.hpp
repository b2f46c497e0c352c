#pragma once

// Per-backend chunk entry points. Each translation unit compiles the shared
// kernel template with its own pack type (and, for AVX2, its own -m flags).

#include <vector>

#include "hlcpinn/kernels.hpp"

namespace hlcpinn::kernels {

void forward_chunk_scalar(const NetView& net, const double* xs, const double* ts, int n,
                          int channels, double* out, std::vector<double>& scratch);
void gradient_chunk_scalar(const NetView& net, const double* xs, const double* ts,
                           const double* adj, int n, int channels, double* grad,
                           std::vector<double>& scratch);

#if defined(HLCPINN_HAVE_AVX2)
void forward_chunk_avx2(const NetView& net, const double* xs, const double* ts, int n,
                        int channels, double* out, std::vector<double>& scratch);
void gradient_chunk_avx2(const NetView& net, const double* xs, const double* ts,
                         const double* adj, int n, int channels, double* grad,
                         std::vector<double>& scratch);
#endif

#if defined(HLCPINN_HAVE_NEON)
void forward_chunk_neon(const NetView& net, const double* xs, const double* ts, int n,
                        int channels, double* out, std::vector<double>& scratch);
void gradient_chunk_neon(const NetView& net, const double* xs, const double* ts,
                         const double* adj, int n, int channels, double* grad,
                         std::vector<double>& scratch);
#endif

}  // namespace hlcpinn::kernels

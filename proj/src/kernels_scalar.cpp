#include "kernels_backends.hpp"
#include "kernels_impl.hpp"

namespace hlcpinn::kernels {

void forward_chunk_scalar(const NetView& net, const double* xs, const double* ts, int n,
                          int channels, double* out, std::vector<double>& scratch) {
  run_forward_chunk<PackScalar>(net, xs, ts, n, channels, out, scratch);
}

void gradient_chunk_scalar(const NetView& net, const double* xs, const double* ts,
                           const double* adj, int n, int channels, double* grad,
                           std::vector<double>& scratch) {
  run_gradient_chunk<PackScalar>(net, xs, ts, adj, n, channels, grad, scratch);
}

}  // namespace hlcpinn::kernels

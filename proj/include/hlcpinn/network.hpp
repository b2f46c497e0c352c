#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hlcpinn/activation.hpp"
#include "hlcpinn/jet.hpp"

namespace hlcpinn {

/// Layer widths (l0, l1, ..., lL). l0 = 2 (inputs x, t), lL in {1, 2},
/// and at least two hidden layers.
struct ArchVector {
  std::vector<int> widths;

  int layers() const { return static_cast<int>(widths.size()) - 1; }  // L
  int hidden_layers() const { return layers() - 1; }
  int input_dim() const { return widths.front(); }
  int output_dim() const { return widths.back(); }

  /// Throws std::invalid_argument if the vector violates the contracts.
  void validate() const;

  bool operator==(const ArchVector&) const = default;
};

ArchVector arch_from_string(std::string_view csv);  // "2,90,90,1"
std::string arch_to_string(const ArchVector&, char sep = ',');

/// One activation kind per hidden layer. The first two hidden layers must be
/// tanh unless allow_nontanh_first is set.
struct LayerActivations {
  std::vector<ActivationKind> kinds;

  void validate(const ArchVector& arch, bool allow_nontanh_first = false) const;
  bool operator==(const LayerActivations&) const = default;
};

LayerActivations activations_from_string(std::string_view csv);
std::string activations_to_string(const LayerActivations&);

struct ParamCounts {
  long long n_virtual;  ///< N_c: nodes exposed through the concatenation layer
  long long n_hidden;   ///< N_h: hidden weight/bias coefficients
  long long n_total;    ///< N_a: all trainable parameters
};

/// Closed-form parameter counts for the concatenated network. out_dim
/// defaults to the architecture's own output width.
ParamCounts count_params(const ArchVector& arch, int out_dim = -1);

/// Parameters of a hidden-layer-concatenated network, stored as one flat
/// vector in the canonical ordering: hidden layers 1..L-1 (weights row-major,
/// then biases), then mixing blocks M_1..M_{L-1} (row-major), then the output
/// bias. Gradients and optimizer state use the same ordering.
class HLConcParams {
public:
  HLConcParams() = default;
  explicit HLConcParams(const ArchVector& arch);  // zero-initialized

  static HLConcParams zeros(const ArchVector& arch) { return HLConcParams(arch); }
  /// Glorot-uniform hidden weights and mixing blocks, zero biases.
  static HLConcParams glorot(const ArchVector& arch, std::uint64_t seed);

  const ArchVector& arch() const { return arch_; }
  std::span<double> flat() { return theta_; }
  std::span<const double> flat() const { return theta_; }
  long long size() const { return static_cast<long long>(theta_.size()); }

  // Canonical-layout accessors; k and i are 1-based hidden layer indices.
  double& w(int k, int j, int m) { return theta_[w_off_[k] + static_cast<std::size_t>(j) * arch_.widths[k - 1] + m]; }
  double w(int k, int j, int m) const { return theta_[w_off_[k] + static_cast<std::size_t>(j) * arch_.widths[k - 1] + m]; }
  double& b(int k, int j) { return theta_[b_off_[k] + j]; }
  double b(int k, int j) const { return theta_[b_off_[k] + j]; }
  double& mix(int i, int o, int m) { return theta_[m_off_[i] + static_cast<std::size_t>(o) * arch_.widths[i] + m]; }
  double mix(int i, int o, int m) const { return theta_[m_off_[i] + static_cast<std::size_t>(o) * arch_.widths[i] + m]; }
  double& out_bias(int o) { return theta_[bl_off_ + o]; }
  double out_bias(int o) const { return theta_[bl_off_ + o]; }

  std::size_t w_offset(int k) const { return w_off_[k]; }
  std::size_t b_offset(int k) const { return b_off_[k]; }
  std::size_t mix_offset(int i) const { return m_off_[i]; }
  std::size_t out_bias_offset() const { return bl_off_; }

private:
  ArchVector arch_;
  std::vector<double> theta_;
  std::vector<std::size_t> w_off_, b_off_, m_off_;
  std::size_t bl_off_ = 0;

  void build_offsets();
};

/// Conventional feed-forward network on the same hidden stack: a single
/// affine output map from the last hidden layer. Baseline only; never
/// trained here.
class PlainFNNParams {
public:
  PlainFNNParams() = default;
  explicit PlainFNNParams(const ArchVector& arch);

  static PlainFNNParams glorot(const ArchVector& arch, std::uint64_t seed);

  const ArchVector& arch() const { return arch_; }
  std::span<double> flat() { return theta_; }
  std::span<const double> flat() const { return theta_; }

  double& w(int k, int j, int m) { return theta_[w_off_[k] + static_cast<std::size_t>(j) * arch_.widths[k - 1] + m]; }
  double w(int k, int j, int m) const { return theta_[w_off_[k] + static_cast<std::size_t>(j) * arch_.widths[k - 1] + m]; }
  double& b(int k, int j) { return theta_[b_off_[k] + j]; }
  double b(int k, int j) const { return theta_[b_off_[k] + j]; }
  // Output affine map (k = L).
  double& out_w(int o, int m) { return theta_[w_off_.back() + static_cast<std::size_t>(o) * arch_.widths[arch_.layers() - 1] + m]; }
  double out_w(int o, int m) const { return theta_[w_off_.back() + static_cast<std::size_t>(o) * arch_.widths[arch_.layers() - 1] + m]; }
  double& out_b(int o) { return theta_[b_off_.back() + o]; }
  double out_b(int o) const { return theta_[b_off_.back() + o]; }

private:
  ArchVector arch_;
  std::vector<double> theta_;
  std::vector<std::size_t> w_off_, b_off_;  // index L holds the output map
};

/// Reference single-point forward pass through jets. The batched kernels in
/// kernels.hpp compute the same map; this is the plainly-readable version
/// they are equivalence-tested against.
std::vector<Jet2> forward_jet(const HLConcParams& params, const LayerActivations& acts,
                              double x, double t);

std::vector<Jet2> forward_fnn_jet(const PlainFNNParams& params, const LayerActivations& acts,
                                  double x, double t);

/// Value-only reference forward pass (no jet channels).
std::vector<double> forward_value(const HLConcParams& params, const LayerActivations& acts,
                                  double x, double t);

/// Add `extra` nodes to hidden layer `layer` (1-based). The new nodes get
/// zero outgoing weights and zero mixing columns, so the returned network is
/// pointwise identical to the input. Their incoming weights are zero when
/// rng_seed == 0 and Glorot-initialized otherwise (symmetry breaking for
/// later training; either way the output function is unchanged).
HLConcParams embed_widen(const HLConcParams& params, int layer, int extra,
                         std::uint64_t rng_seed = 0);

/// Append one hidden layer of width new_width with zero weights, zero biases
/// and a zero mixing block; the output function is unchanged. The new
/// layer's activation entry must be appended by the caller via
/// deepened_activations.
HLConcParams embed_deepen(const HLConcParams& params, int new_width);

LayerActivations widened_activations(const LayerActivations& acts);
LayerActivations deepened_activations(const LayerActivations& acts,
                                      ActivationKind new_kind = ActivationKind::Tanh);

/// Embed a plain FNN into the concatenated parameterization: M_i = 0 for
/// i < L-1, M_{L-1} = output weights, b_L = output bias.
HLConcParams embed_fnn(const PlainFNNParams& fnn);

/// Versioned text checkpoint; parameters are written as C99 hex floats so
/// round-trips are bit-exact.
void save_checkpoint(std::ostream& os, const HLConcParams& params, const LayerActivations& acts);
void save_checkpoint_file(const std::string& path, const HLConcParams& params, const LayerActivations& acts);
std::pair<HLConcParams, LayerActivations> load_checkpoint(std::istream& is);
std::pair<HLConcParams, LayerActivations> load_checkpoint_file(const std::string& path);

}  // namespace hlcpinn

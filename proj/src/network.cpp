#include "hlcpinn/network.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hlcpinn/rng.hpp"

namespace hlcpinn {

void ArchVector::validate() const {
  if (widths.size() < 4)
    throw std::invalid_argument("architecture needs at least two hidden layers");
  if (widths.front() != 2)
    throw std::invalid_argument("input width must be 2 (x, t)");
  if (widths.back() != 1 && widths.back() != 2)
    throw std::invalid_argument("output width must be 1 or 2");
  for (int w : widths)
    if (w < 1) throw std::invalid_argument("layer widths must be positive");
}

ArchVector arch_from_string(std::string_view csv) {
  ArchVector a;
  std::string token;
  std::stringstream ss{std::string(csv)};
  while (std::getline(ss, token, csv.find('x') != std::string_view::npos ? 'x' : ',')) {
    if (token.empty()) continue;
    a.widths.push_back(std::stoi(token));
  }
  return a;
}

std::string arch_to_string(const ArchVector& a, char sep) {
  std::string s;
  for (std::size_t i = 0; i < a.widths.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(a.widths[i]);
  }
  return s;
}

void LayerActivations::validate(const ArchVector& arch, bool allow_nontanh_first) const {
  if (static_cast<int>(kinds.size()) != arch.hidden_layers())
    throw std::invalid_argument("need one activation per hidden layer");
  if (!allow_nontanh_first) {
    for (int k = 0; k < 2 && k < static_cast<int>(kinds.size()); ++k)
      if (kinds[k] != ActivationKind::Tanh)
        throw std::invalid_argument(
            "the first two hidden layers must use tanh (set allow_nontanh_first to override)");
  }
}

LayerActivations activations_from_string(std::string_view csv) {
  LayerActivations a;
  std::string token;
  std::stringstream ss{std::string(csv)};
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    a.kinds.push_back(activation_from_name(token));
  }
  return a;
}

std::string activations_to_string(const LayerActivations& a) {
  std::string s;
  for (std::size_t i = 0; i < a.kinds.size(); ++i) {
    if (i) s += ',';
    s += activation_name(a.kinds[i]);
  }
  return s;
}

ParamCounts count_params(const ArchVector& arch, int out_dim) {
  const int L = arch.layers();
  const int out = out_dim < 0 ? arch.output_dim() : out_dim;
  long long nc = 0, nh = 0;
  for (int k = 1; k <= L - 1; ++k) {
    nc += arch.widths[k];
    nh += static_cast<long long>(arch.widths[k - 1] + 1) * arch.widths[k];
  }
  return {nc, nh, nh + (nc + 1) * out};
}

void HLConcParams::build_offsets() {
  const int L = arch_.layers();
  w_off_.assign(L, 0);
  b_off_.assign(L, 0);
  m_off_.assign(L, 0);
  std::size_t off = 0;
  for (int k = 1; k <= L - 1; ++k) {
    w_off_[k] = off;
    off += static_cast<std::size_t>(arch_.widths[k]) * arch_.widths[k - 1];
    b_off_[k] = off;
    off += arch_.widths[k];
  }
  for (int i = 1; i <= L - 1; ++i) {
    m_off_[i] = off;
    off += static_cast<std::size_t>(arch_.output_dim()) * arch_.widths[i];
  }
  bl_off_ = off;
  off += arch_.output_dim();
  theta_.assign(off, 0.0);
}

HLConcParams::HLConcParams(const ArchVector& arch) : arch_(arch) {
  arch_.validate();
  build_offsets();
}

HLConcParams HLConcParams::glorot(const ArchVector& arch, std::uint64_t seed) {
  HLConcParams p(arch);
  SplitMix64 g = substream(seed, Stream::init);
  const int L = arch.layers();
  const int out = arch.output_dim();
  for (int k = 1; k <= L - 1; ++k) {
    const double limit = std::sqrt(6.0 / (arch.widths[k - 1] + arch.widths[k]));
    for (int j = 0; j < arch.widths[k]; ++j)
      for (int m = 0; m < arch.widths[k - 1]; ++m)
        p.w(k, j, m) = limit * (2.0 * g.next_unit() - 1.0);
  }
  for (int i = 1; i <= L - 1; ++i) {
    const double limit = std::sqrt(6.0 / (arch.widths[i] + out));
    for (int o = 0; o < out; ++o)
      for (int m = 0; m < arch.widths[i]; ++m)
        p.mix(i, o, m) = limit * (2.0 * g.next_unit() - 1.0);
  }
  return p;
}

PlainFNNParams::PlainFNNParams(const ArchVector& arch) : arch_(arch) {
  arch_.validate();
  const int L = arch_.layers();
  w_off_.assign(L + 1, 0);
  b_off_.assign(L + 1, 0);
  std::size_t off = 0;
  for (int k = 1; k <= L; ++k) {
    w_off_[k] = off;
    off += static_cast<std::size_t>(arch_.widths[k]) * arch_.widths[k - 1];
    b_off_[k] = off;
    off += arch_.widths[k];
  }
  // Trim: w_off_/b_off_ index 0 unused; entry L is the output map.
  w_off_.erase(w_off_.begin() + L + 1, w_off_.end());
  theta_.assign(off, 0.0);
}

PlainFNNParams PlainFNNParams::glorot(const ArchVector& arch, std::uint64_t seed) {
  PlainFNNParams p(arch);
  SplitMix64 g = substream(seed, Stream::init);
  const int L = arch.layers();
  for (int k = 1; k <= L; ++k) {
    const double limit = std::sqrt(6.0 / (arch.widths[k - 1] + arch.widths[k]));
    for (int j = 0; j < arch.widths[k]; ++j)
      for (int m = 0; m < arch.widths[k - 1]; ++m)
        p.w(k, j, m) = limit * (2.0 * g.next_unit() - 1.0);
  }
  return p;
}

namespace {

// Shared hidden-stack evaluation for the reference paths.
std::vector<std::vector<Jet2>> hidden_states(const ArchVector& arch,
                                             const LayerActivations& acts,
                                             const auto& w, const auto& b,
                                             double x, double t) {
  const int L = arch.layers();
  std::vector<std::vector<Jet2>> h(L);  // h[k], k = 1..L-1
  const Jet2 in[2] = {seed_x(x), seed_t(t)};
  for (int k = 1; k <= L - 1; ++k) {
    h[k].resize(arch.widths[k]);
    for (int j = 0; j < arch.widths[k]; ++j) {
      Jet2 a = jet_const(b(k, j));
      if (k == 1) {
        for (int m = 0; m < 2; ++m) a = jet_add(a, jet_scale(w(k, j, m), in[m]));
      } else {
        for (int m = 0; m < arch.widths[k - 1]; ++m)
          a = jet_add(a, jet_scale(w(k, j, m), h[k - 1][m]));
      }
      const ActDerivs d = eval_derivs(acts.kinds[k - 1], a.v);
      h[k][j] = jet_chain(d.f, d.d1, d.d2, a);
    }
  }
  return h;
}

}  // namespace

std::vector<Jet2> forward_jet(const HLConcParams& params, const LayerActivations& acts,
                              double x, double t) {
  const ArchVector& arch = params.arch();
  const int L = arch.layers();
  const int out = arch.output_dim();
  auto h = hidden_states(
      arch, acts, [&](int k, int j, int m) { return params.w(k, j, m); },
      [&](int k, int j) { return params.b(k, j); }, x, t);
  std::vector<Jet2> y(out);
  for (int o = 0; o < out; ++o) {
    Jet2 acc = jet_const(params.out_bias(o));
    for (int i = 1; i <= L - 1; ++i)
      for (int m = 0; m < arch.widths[i]; ++m)
        acc = jet_add(acc, jet_scale(params.mix(i, o, m), h[i][m]));
    y[o] = acc;
  }
  return y;
}

std::vector<Jet2> forward_fnn_jet(const PlainFNNParams& params, const LayerActivations& acts,
                                  double x, double t) {
  const ArchVector& arch = params.arch();
  const int L = arch.layers();
  const int out = arch.output_dim();
  auto h = hidden_states(
      arch, acts, [&](int k, int j, int m) { return params.w(k, j, m); },
      [&](int k, int j) { return params.b(k, j); }, x, t);
  std::vector<Jet2> y(out);
  for (int o = 0; o < out; ++o) {
    Jet2 acc = jet_const(params.out_b(o));
    for (int m = 0; m < arch.widths[L - 1]; ++m)
      acc = jet_add(acc, jet_scale(params.out_w(o, m), h[L - 1][m]));
    y[o] = acc;
  }
  return y;
}

std::vector<double> forward_value(const HLConcParams& params, const LayerActivations& acts,
                                  double x, double t) {
  const ArchVector& arch = params.arch();
  const int L = arch.layers();
  std::vector<std::vector<double>> h(L);
  double in[2] = {x, t};
  for (int k = 1; k <= L - 1; ++k) {
    h[k].resize(arch.widths[k]);
    for (int j = 0; j < arch.widths[k]; ++j) {
      double a = params.b(k, j);
      if (k == 1)
        for (int m = 0; m < 2; ++m) a += params.w(k, j, m) * in[m];
      else
        for (int m = 0; m < arch.widths[k - 1]; ++m) a += params.w(k, j, m) * h[k - 1][m];
      h[k][j] = eval_derivs(acts.kinds[k - 1], a).f;
    }
  }
  std::vector<double> y(arch.output_dim());
  for (int o = 0; o < arch.output_dim(); ++o) {
    double acc = params.out_bias(o);
    for (int i = 1; i <= L - 1; ++i)
      for (int m = 0; m < arch.widths[i]; ++m) acc += params.mix(i, o, m) * h[i][m];
    y[o] = acc;
  }
  return y;
}

HLConcParams embed_widen(const HLConcParams& params, int layer, int extra,
                         std::uint64_t rng_seed) {
  const ArchVector& arch = params.arch();
  const int L = arch.layers();
  if (layer < 1 || layer > L - 1) throw std::invalid_argument("widen: bad hidden layer index");
  if (extra < 1) throw std::invalid_argument("widen: extra must be >= 1");

  ArchVector warch = arch;
  warch.widths[layer] += extra;
  HLConcParams q(warch);

  const int old_w = arch.widths[layer];
  // Copy existing coefficients; everything touching the new nodes stays zero.
  for (int k = 1; k <= L - 1; ++k)
    for (int j = 0; j < arch.widths[k]; ++j) {
      q.b(k, j) = params.b(k, j);
      for (int m = 0; m < arch.widths[k - 1]; ++m) q.w(k, j, m) = params.w(k, j, m);
    }
  for (int i = 1; i <= L - 1; ++i)
    for (int o = 0; o < arch.output_dim(); ++o)
      for (int m = 0; m < arch.widths[i]; ++m) q.mix(i, o, m) = params.mix(i, o, m);
  for (int o = 0; o < arch.output_dim(); ++o) q.out_bias(o) = params.out_bias(o);

  if (rng_seed != 0) {
    // Optional symmetry breaking: the new nodes' incoming weights may be
    // anything without changing the output, since their outgoing weights and
    // mixing columns are zero.
    SplitMix64 g = substream(rng_seed, Stream::embed, layer);
    const double limit = std::sqrt(6.0 / (warch.widths[layer - 1] + warch.widths[layer]));
    for (int j = old_w; j < warch.widths[layer]; ++j)
      for (int m = 0; m < warch.widths[layer - 1]; ++m)
        q.w(layer, j, m) = limit * (2.0 * g.next_unit() - 1.0);
  }
  return q;
}

HLConcParams embed_deepen(const HLConcParams& params, int new_width) {
  if (new_width < 1) throw std::invalid_argument("deepen: new_width must be >= 1");
  const ArchVector& arch = params.arch();
  const int L = arch.layers();

  ArchVector darch = arch;
  darch.widths.insert(darch.widths.end() - 1, new_width);
  HLConcParams q(darch);

  for (int k = 1; k <= L - 1; ++k)
    for (int j = 0; j < arch.widths[k]; ++j) {
      q.b(k, j) = params.b(k, j);
      for (int m = 0; m < arch.widths[k - 1]; ++m) q.w(k, j, m) = params.w(k, j, m);
    }
  // New layer L: zero weights, zero bias, zero mixing block. The retained
  // mixing blocks reproduce the original output exactly.
  for (int i = 1; i <= L - 1; ++i)
    for (int o = 0; o < arch.output_dim(); ++o)
      for (int m = 0; m < arch.widths[i]; ++m) q.mix(i, o, m) = params.mix(i, o, m);
  for (int o = 0; o < arch.output_dim(); ++o) q.out_bias(o) = params.out_bias(o);
  return q;
}

LayerActivations widened_activations(const LayerActivations& acts) { return acts; }

LayerActivations deepened_activations(const LayerActivations& acts, ActivationKind new_kind) {
  LayerActivations d = acts;
  d.kinds.push_back(new_kind);
  return d;
}

HLConcParams embed_fnn(const PlainFNNParams& fnn) {
  const ArchVector& arch = fnn.arch();
  const int L = arch.layers();
  HLConcParams q(arch);
  for (int k = 1; k <= L - 1; ++k)
    for (int j = 0; j < arch.widths[k]; ++j) {
      q.b(k, j) = fnn.b(k, j);
      for (int m = 0; m < arch.widths[k - 1]; ++m) q.w(k, j, m) = fnn.w(k, j, m);
    }
  for (int o = 0; o < arch.output_dim(); ++o) {
    for (int m = 0; m < arch.widths[L - 1]; ++m) q.mix(L - 1, o, m) = fnn.out_w(o, m);
    q.out_bias(o) = fnn.out_b(o);
  }
  return q;
}

void save_checkpoint(std::ostream& os, const HLConcParams& params, const LayerActivations& acts) {
  os << "hlcpinn-checkpoint v1\n";
  os << "arch " << arch_to_string(params.arch(), ' ') << "\n";
  os << "activations";
  for (ActivationKind k : acts.kinds) os << ' ' << activation_name(k);
  os << "\nparams " << params.size() << "\n";
  char buf[48];
  for (double v : params.flat()) {
    std::snprintf(buf, sizeof buf, "%a\n", v);
    os << buf;
  }
}

void save_checkpoint_file(const std::string& path, const HLConcParams& params,
                          const LayerActivations& acts) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open checkpoint for writing: " + path);
  save_checkpoint(os, params, acts);
}

std::pair<HLConcParams, LayerActivations> load_checkpoint(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "hlcpinn-checkpoint v1")
    throw std::runtime_error("bad checkpoint header");
  std::string word;
  is >> word;
  if (word != "arch") throw std::runtime_error("bad checkpoint: expected arch");
  ArchVector arch;
  {
    std::getline(is, line);
    std::stringstream ss(line);
    int w;
    while (ss >> w) arch.widths.push_back(w);
  }
  is >> word;
  if (word != "activations") throw std::runtime_error("bad checkpoint: expected activations");
  LayerActivations acts;
  {
    std::getline(is, line);
    std::stringstream ss(line);
    while (ss >> word) acts.kinds.push_back(activation_from_name(word));
  }
  long long n;
  is >> word >> n;
  if (word != "params") throw std::runtime_error("bad checkpoint: expected params");
  HLConcParams params(arch);
  if (n != params.size()) throw std::runtime_error("bad checkpoint: parameter count mismatch");
  auto flat = params.flat();
  for (long long i = 0; i < n; ++i) {
    is >> word;
    flat[i] = std::strtod(word.c_str(), nullptr);
  }
  if (!is) throw std::runtime_error("bad checkpoint: truncated parameters");
  return {std::move(params), std::move(acts)};
}

std::pair<HLConcParams, LayerActivations> load_checkpoint_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open checkpoint: " + path);
  return load_checkpoint(is);
}

}  // namespace hlcpinn

#pragma once

// Batched second-order jet propagation and parameter-gradient reverse sweep,
// templated on a SIMD pack type P and on the jet channel count C:
//   C = 1: value only
//   C = 3: (value, d/dx, d/dt)
//   C = 5: (value, d/dx, d/dt, d2/dx2, d2/dx dt)
// Points are processed P::width at a time, one lane per point. Every backend
// instantiates the same code, so numerical results differ between backends
// only through summation order and fma contraction.

#include <cstddef>
#include <cstring>
#include <vector>

#include "hlcpinn/activation.hpp"
#include "hlcpinn/kernels.hpp"

namespace hlcpinn::kernels {

struct PackScalar {
  static constexpr int width = 1;
  double v;
  static PackScalar load(const double* p) { return {*p}; }
  void store(double* p) const { *p = v; }
  static PackScalar broadcast(double s) { return {s}; }
  static PackScalar zero() { return {0.0}; }
  friend PackScalar operator+(PackScalar a, PackScalar b) { return {a.v + b.v}; }
  friend PackScalar operator-(PackScalar a, PackScalar b) { return {a.v - b.v}; }
  friend PackScalar operator*(PackScalar a, PackScalar b) { return {a.v * b.v}; }
  static PackScalar fmadd(PackScalar a, PackScalar b, PackScalar c) {
    return {a.v * b.v + c.v};
  }
};

template <class P, int C>
struct BatchKernel {
  static constexpr int W = P::width;

  // Scratch offsets in pack units; a pack occupies W doubles.
  struct Layout {
    std::size_t a[kMaxLayers];   // pre-activation jets, widths[k] * C packs
    std::size_t h[kMaxLayers];   // activated jets
    std::size_t hb[kMaxLayers];  // reverse-sweep adjoints of h
    std::size_t d1[kMaxLayers];  // activation derivatives at a.v
    std::size_t d2[kMaxLayers];
    std::size_t d3[kMaxLayers];
    std::size_t grad;            // n_params packs (gradient path only)
    std::size_t total;
  };

  static Layout make_layout(const NetView& net, bool with_grad) {
    Layout lay{};
    std::size_t off = 0;
    for (int k = 1; k <= net.L - 1; ++k) {
      const std::size_t nodes = static_cast<std::size_t>(net.widths[k]);
      lay.a[k] = off; off += nodes * C;
      lay.h[k] = off; off += nodes * C;
      lay.hb[k] = off; off += nodes * C;
      lay.d1[k] = off; off += nodes;
      lay.d2[k] = off; off += nodes;
      lay.d3[k] = off; off += nodes;
    }
    lay.grad = off;
    if (with_grad) off += net.n_params;
    lay.total = off;
    return lay;
  }

  static double* slot(double* s, std::size_t base, std::size_t idx) {
    return s + (base + idx) * W;
  }

  static void act_eval(ActivationKind kind, P a, P& f, P& g1, P& g2, P& g3) {
    double av[W], fv[W], d1v[W], d2v[W], d3v[W];
    a.store(av);
    for (int l = 0; l < W; ++l) {
      const ActDerivs d = eval_derivs(kind, av[l]);
      fv[l] = d.f; d1v[l] = d.d1; d2v[l] = d.d2; d3v[l] = d.d3;
    }
    f = P::load(fv); g1 = P::load(d1v); g2 = P::load(d2v); g3 = P::load(d3v);
  }

  // Forward pass for one lane group. Leaves a, h, d1..d3 in scratch and
  // writes the output jets (out_dim * C packs) to yout.
  static void forward_group(const NetView& net, const Layout& lay, double* s,
                            P x, P t, P* yout) {
    // First hidden layer: a = W1 (x,t) + b1. The jet channels of the inputs
    // are the seeds (x,1,0,0,0) and (t,0,1,0,0), so a.x and a.t are the
    // weights themselves and the second-order channels are zero.
    {
      const double* w = net.theta + net.w_off[1];
      const double* b = net.theta + net.b_off[1];
      for (int j = 0; j < net.widths[1]; ++j) {
        const P w0 = P::broadcast(w[2 * j + 0]);
        const P w1 = P::broadcast(w[2 * j + 1]);
        P a[C];
        a[0] = P::fmadd(w0, x, P::fmadd(w1, t, P::broadcast(b[j])));
        if constexpr (C >= 3) { a[1] = w0; a[2] = w1; }
        if constexpr (C == 5) { a[3] = P::zero(); a[4] = P::zero(); }
        store_node(s, lay, 1, j, a);
        activate_node(net.act[1], s, lay, 1, j, a);
      }
    }
    for (int k = 2; k <= net.L - 1; ++k) {
      const int prev = net.widths[k - 1];
      const double* w = net.theta + net.w_off[k];
      const double* b = net.theta + net.b_off[k];
      for (int j = 0; j < net.widths[k]; ++j) {
        P a[C];
        for (int c = 0; c < C; ++c) a[c] = P::zero();
        a[0] = P::broadcast(b[j]);
        const double* wrow = w + static_cast<std::size_t>(j) * prev;
        const double* hbase = slot(s, lay.h[k - 1], 0);
        for (int m = 0; m < prev; ++m) {
          const P wm = P::broadcast(wrow[m]);
          const double* hm = hbase + static_cast<std::size_t>(m) * C * W;
          for (int c = 0; c < C; ++c)
            a[c] = P::fmadd(wm, P::load(hm + c * W), a[c]);
        }
        store_node(s, lay, k, j, a);
        activate_node(net.act[k], s, lay, k, j, a);
      }
    }
    // Output: every hidden layer feeds the output through its mixing block.
    for (int o = 0; o < net.out_dim; ++o) {
      P acc[C];
      for (int c = 0; c < C; ++c) acc[c] = P::zero();
      acc[0] = P::broadcast(net.theta[net.bl_off + o]);
      for (int i = 1; i <= net.L - 1; ++i) {
        const double* mi = net.theta + net.m_off[i] +
                           static_cast<std::size_t>(o) * net.widths[i];
        const double* hbase = slot(s, lay.h[i], 0);
        for (int m = 0; m < net.widths[i]; ++m) {
          const P wm = P::broadcast(mi[m]);
          const double* hm = hbase + static_cast<std::size_t>(m) * C * W;
          for (int c = 0; c < C; ++c)
            acc[c] = P::fmadd(wm, P::load(hm + c * W), acc[c]);
        }
      }
      for (int c = 0; c < C; ++c) yout[o * C + c] = acc[c];
    }
  }

  static void store_node(double* s, const Layout& lay, int k, int j, const P a[C]) {
    double* base = slot(s, lay.a[k], static_cast<std::size_t>(j) * C);
    for (int c = 0; c < C; ++c) a[c].store(base + c * W);
  }

  static void activate_node(ActivationKind kind, double* s, const Layout& lay,
                            int k, int j, const P a[C]) {
    P f, g1, g2, g3;
    act_eval(kind, a[0], f, g1, g2, g3);
    g1.store(slot(s, lay.d1[k], j));
    g2.store(slot(s, lay.d2[k], j));
    g3.store(slot(s, lay.d3[k], j));
    P h[C];
    h[0] = f;
    if constexpr (C >= 3) {
      h[1] = g1 * a[1];
      h[2] = g1 * a[2];
    }
    if constexpr (C == 5) {
      h[3] = P::fmadd(g2, a[1] * a[1], g1 * a[3]);
      h[4] = P::fmadd(g2, a[1] * a[2], g1 * a[4]);
    }
    double* base = slot(s, lay.h[k], static_cast<std::size_t>(j) * C);
    for (int c = 0; c < C; ++c) h[c].store(base + c * W);
  }

  // Reverse sweep for one lane group. forward_group must have run on the
  // same scratch. ybar holds the output-jet adjoints; parameter gradients
  // accumulate into the grad pack region.
  static void reverse_group(const NetView& net, const Layout& lay, double* s,
                            P x, P t, const P* ybar) {
    double* g = slot(s, lay.grad, 0);
    for (int k = 1; k <= net.L - 1; ++k)
      std::memset(slot(s, lay.hb[k], 0), 0,
                  static_cast<std::size_t>(net.widths[k]) * C * W * sizeof(double));

    // Output layer: adjoints flow into every hidden layer's h, and into the
    // mixing blocks and output bias.
    for (int o = 0; o < net.out_dim; ++o) {
      const P* yb = ybar + o * C;
      for (int i = 1; i <= net.L - 1; ++i) {
        const std::size_t mrow = net.m_off[i] + static_cast<std::size_t>(o) * net.widths[i];
        const double* mi = net.theta + mrow;
        for (int m = 0; m < net.widths[i]; ++m) {
          const P wm = P::broadcast(mi[m]);
          double* hbm = slot(s, lay.hb[i], static_cast<std::size_t>(m) * C);
          const double* hm = slot(s, lay.h[i], static_cast<std::size_t>(m) * C);
          P dot = P::zero();
          for (int c = 0; c < C; ++c) {
            P hb = P::load(hbm + c * W);
            hb = P::fmadd(wm, yb[c], hb);
            hb.store(hbm + c * W);
            dot = P::fmadd(yb[c], P::load(hm + c * W), dot);
          }
          double* gp = g + (mrow + m) * W;
          (P::load(gp) + dot).store(gp);
        }
      }
      double* gb = g + (net.bl_off + o) * W;
      (P::load(gb) + yb[0]).store(gb);
    }

    for (int k = net.L - 1; k >= 1; --k) {
      const int prev = net.widths[k - 1];
      for (int j = 0; j < net.widths[k]; ++j) {
        const double* hbj = slot(s, lay.hb[k], static_cast<std::size_t>(j) * C);
        const double* aj = slot(s, lay.a[k], static_cast<std::size_t>(j) * C);
        const P g1 = P::load(slot(s, lay.d1[k], j));
        const P g2 = P::load(slot(s, lay.d2[k], j));

        // Adjoint of the activation chain, consuming one extra derivative
        // order per second-order channel.
        P ab[C];
        const P hbv = P::load(hbj + 0 * W);
        ab[0] = hbv * g1;
        if constexpr (C >= 3) {
          const P hbx = P::load(hbj + 1 * W), hbt = P::load(hbj + 2 * W);
          const P ax = P::load(aj + 1 * W), at = P::load(aj + 2 * W);
          ab[0] = P::fmadd(g2, hbx * ax + hbt * at, ab[0]);
          ab[1] = hbx * g1;
          ab[2] = hbt * g1;
          if constexpr (C == 5) {
            const P g3 = P::load(slot(s, lay.d3[k], j));
            const P hbxx = P::load(hbj + 3 * W), hbxt = P::load(hbj + 4 * W);
            const P axx = P::load(aj + 3 * W), axt = P::load(aj + 4 * W);
            ab[0] = ab[0] + hbxx * (P::fmadd(g3, ax * ax, g2 * axx)) +
                    hbxt * (P::fmadd(g3, ax * at, g2 * axt));
            ab[1] = ab[1] + P::broadcast(2.0) * g2 * ax * hbxx + g2 * at * hbxt;
            ab[2] = P::fmadd(g2 * ax, hbxt, ab[2]);
            ab[3] = hbxx * g1;
            ab[4] = hbxt * g1;
          }
        }

        double* gb = g + (net.b_off[k] + j) * W;
        (P::load(gb) + ab[0]).store(gb);

        const std::size_t wrow = net.w_off[k] + static_cast<std::size_t>(j) * prev;
        if (k > 1) {
          const double* wj = net.theta + wrow;
          for (int m = 0; m < prev; ++m) {
            const P wm = P::broadcast(wj[m]);
            double* hbm = slot(s, lay.hb[k - 1], static_cast<std::size_t>(m) * C);
            const double* hm = slot(s, lay.h[k - 1], static_cast<std::size_t>(m) * C);
            P dot = P::zero();
            for (int c = 0; c < C; ++c) {
              P hb = P::load(hbm + c * W);
              hb = P::fmadd(wm, ab[c], hb);
              hb.store(hbm + c * W);
              dot = P::fmadd(ab[c], P::load(hm + c * W), dot);
            }
            double* gp = g + (wrow + m) * W;
            (P::load(gp) + dot).store(gp);
          }
        } else {
          // d a1.v/dW = input value, d a1.x/dW[.,0] = d a1.t/dW[.,1] = 1.
          P gw0 = ab[0] * x;
          P gw1 = ab[0] * t;
          if constexpr (C >= 3) {
            gw0 = gw0 + ab[1];
            gw1 = gw1 + ab[2];
          }
          double* gp0 = g + (wrow + 0) * W;
          (P::load(gp0) + gw0).store(gp0);
          double* gp1 = g + (wrow + 1) * W;
          (P::load(gp1) + gw1).store(gp1);
        }
      }
    }
  }

  static void load_inputs(const double* xs, const double* ts, int base, int valid,
                          double* xq, double* tq) {
    for (int l = 0; l < W; ++l) {
      const int idx = base + (l < valid ? l : valid - 1);
      xq[l] = xs[idx];
      tq[l] = ts[idx];
    }
  }

  static void ensure_scratch(std::vector<double>& scratch, const Layout& lay) {
    const std::size_t need = lay.total * W;
    if (scratch.size() < need) scratch.resize(need);
  }

  static void forward_chunk(const NetView& net, const double* xs, const double* ts,
                            int n, double* out, std::vector<double>& scratch) {
    const Layout lay = make_layout(net, false);
    ensure_scratch(scratch, lay);
    double* s = scratch.data();
    P yout[2 * C];
    double tmp[W];
    for (int base = 0; base < n; base += W) {
      const int valid = n - base < W ? n - base : W;
      double xq[W], tq[W];
      load_inputs(xs, ts, base, valid, xq, tq);
      forward_group(net, lay, s, P::load(xq), P::load(tq), yout);
      for (int o = 0; o < net.out_dim; ++o)
        for (int c = 0; c < C; ++c) {
          yout[o * C + c].store(tmp);
          for (int l = 0; l < valid; ++l)
            out[(static_cast<std::size_t>(base + l) * net.out_dim + o) * C + c] = tmp[l];
        }
    }
  }

  static void gradient_chunk(const NetView& net, const double* xs, const double* ts,
                             const double* adj, int n, double* grad,
                             std::vector<double>& scratch) {
    const Layout lay = make_layout(net, true);
    ensure_scratch(scratch, lay);
    double* s = scratch.data();
    std::memset(slot(s, lay.grad, 0), 0, net.n_params * W * sizeof(double));
    P yout[2 * C];
    P ybar[2 * C];
    double tmp[W];
    for (int base = 0; base < n; base += W) {
      const int valid = n - base < W ? n - base : W;
      double xq[W], tq[W];
      load_inputs(xs, ts, base, valid, xq, tq);
      const P x = P::load(xq), t = P::load(tq);
      forward_group(net, lay, s, x, t, yout);
      for (int o = 0; o < net.out_dim; ++o)
        for (int c = 0; c < C; ++c) {
          for (int l = 0; l < W; ++l)
            tmp[l] = l < valid
                         ? adj[(static_cast<std::size_t>(base + l) * net.out_dim + o) * C + c]
                         : 0.0;  // padded lanes contribute nothing
          ybar[o * C + c] = P::load(tmp);
        }
      reverse_group(net, lay, s, x, t, ybar);
    }
    // Lane reduction in fixed order keeps the result independent of the
    // thread that ran the chunk.
    const double* g = slot(s, lay.grad, 0);
    for (std::size_t p = 0; p < net.n_params; ++p) {
      double acc = 0.0;
      for (int l = 0; l < W; ++l) acc += g[p * W + l];
      grad[p] += acc;
    }
  }
};

template <class P>
void run_forward_chunk(const NetView& net, const double* xs, const double* ts, int n,
                       int channels, double* out, std::vector<double>& scratch) {
  switch (channels) {
    case 1: BatchKernel<P, 1>::forward_chunk(net, xs, ts, n, out, scratch); break;
    case 3: BatchKernel<P, 3>::forward_chunk(net, xs, ts, n, out, scratch); break;
    default: BatchKernel<P, 5>::forward_chunk(net, xs, ts, n, out, scratch); break;
  }
}

template <class P>
void run_gradient_chunk(const NetView& net, const double* xs, const double* ts,
                        const double* adj, int n, int channels, double* grad,
                        std::vector<double>& scratch) {
  switch (channels) {
    case 1: BatchKernel<P, 1>::gradient_chunk(net, xs, ts, adj, n, grad, scratch); break;
    case 3: BatchKernel<P, 3>::gradient_chunk(net, xs, ts, adj, n, grad, scratch); break;
    default: BatchKernel<P, 5>::gradient_chunk(net, xs, ts, adj, n, grad, scratch); break;
  }
}

}  // namespace hlcpinn::kernels

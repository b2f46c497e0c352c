#pragma once

namespace hlcpinn {

/// Second-order forward jet with respect to the two network inputs (x, t).
///
/// A Jet2 carries a value together with d/dx, d/dt, d2/dx2 and d2/dxdt.
/// d2/dt2 is deliberately not tracked: the hyperbolic problems are rewritten
/// first order in t through the auxiliary field v = du/dt, so no residual
/// ever needs a second time derivative of a network output.
struct Jet2 {
  double v = 0.0;   ///< value
  double x = 0.0;   ///< d/dx
  double t = 0.0;   ///< d/dt
  double xx = 0.0;  ///< d2/dx2
  double xt = 0.0;  ///< d2/dx dt
};

inline Jet2 seed_x(double x0) { return {x0, 1.0, 0.0, 0.0, 0.0}; }
inline Jet2 seed_t(double t0) { return {t0, 0.0, 1.0, 0.0, 0.0}; }
inline Jet2 jet_const(double c) { return {c, 0.0, 0.0, 0.0, 0.0}; }

inline Jet2 jet_add(const Jet2& a, const Jet2& b) {
  return {a.v + b.v, a.x + b.x, a.t + b.t, a.xx + b.xx, a.xt + b.xt};
}

inline Jet2 jet_sub(const Jet2& a, const Jet2& b) {
  return {a.v - b.v, a.x - b.x, a.t - b.t, a.xx - b.xx, a.xt - b.xt};
}

inline Jet2 jet_scale(double s, const Jet2& a) {
  return {s * a.v, s * a.x, s * a.t, s * a.xx, s * a.xt};
}

/// Leibniz product rule through second order.
inline Jet2 jet_mul(const Jet2& a, const Jet2& b) {
  return {a.v * b.v,
          a.x * b.v + a.v * b.x,
          a.t * b.v + a.v * b.t,
          a.xx * b.v + 2.0 * a.x * b.x + a.v * b.xx,
          a.xt * b.v + a.x * b.t + a.t * b.x + a.v * b.xt};
}

/// Second-order Faa di Bruno: compose a scalar function f, supplied as
/// (f, f', f'') evaluated at a.v, with the jet a.
inline Jet2 jet_chain(double f, double f1, double f2, const Jet2& a) {
  return {f,
          f1 * a.x,
          f1 * a.t,
          f2 * a.x * a.x + f1 * a.xx,
          f2 * a.x * a.t + f1 * a.xt};
}

inline Jet2 operator+(const Jet2& a, const Jet2& b) { return jet_add(a, b); }
inline Jet2 operator-(const Jet2& a, const Jet2& b) { return jet_sub(a, b); }
inline Jet2 operator*(const Jet2& a, const Jet2& b) { return jet_mul(a, b); }
inline Jet2 operator*(double s, const Jet2& a) { return jet_scale(s, a); }

}  // namespace hlcpinn

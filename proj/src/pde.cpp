#include "hlcpinn/pde.hpp"

#include <cmath>
#include <stdexcept>

namespace hlcpinn {

namespace {

constexpr double kPi = 3.14159265358979323846;

// a*cos(w*z + phi) composed with a jet.
Jet2 cos_term(double a, double w, double phi, const Jet2& z) {
  const double arg = w * z.v + phi;
  const Jet2 wz = jet_chain(arg, w, 0.0, z);  // affine reparameterization
  return jet_scale(a, jet_chain(std::cos(arg), -std::sin(arg), -std::cos(arg), wz));
}

// Heat/Burgers/KG exact solutions are separable u = X(x) T(t); v = X T'.

Jet2 heat_factor(const Jet2& z) {
  // 2 cos(pi z + pi/5) + 1.5 cos(2 pi z - 3 pi/5)
  return jet_add(cos_term(2.0, kPi, kPi / 5.0, z),
                 cos_term(1.5, 2.0 * kPi, -3.0 * kPi / 5.0, z));
}

Jet2 burgers_factor(const Jet2& z) {
  // (1/5 + z/10) * (2 sin(pi z + 2 pi/5) + 0.5 cos(pi z - 3 pi/5));
  // sin(w) = cos(w - pi/2).
  const Jet2 lin = jet_add(jet_const(0.2), jet_scale(0.1, z));
  const Jet2 trig = jet_add(cos_term(2.0, kPi, 2.0 * kPi / 5.0 - kPi / 2.0, z),
                            cos_term(0.5, kPi, -3.0 * kPi / 5.0, z));
  return jet_mul(lin, trig);
}

Jet2 burgers_factor_dt(const Jet2& z) {
  // d/dz of burgers_factor: product rule on the closed form.
  const Jet2 lin = jet_add(jet_const(0.2), jet_scale(0.1, z));
  const Jet2 trig = jet_add(cos_term(2.0, kPi, 2.0 * kPi / 5.0 - kPi / 2.0, z),
                            cos_term(0.5, kPi, -3.0 * kPi / 5.0, z));
  const Jet2 dtrig = jet_add(cos_term(2.0 * kPi, kPi, 2.0 * kPi / 5.0, z),
                             cos_term(0.5 * kPi, kPi, -3.0 * kPi / 5.0 + kPi / 2.0, z));
  return jet_add(jet_scale(0.1, trig), jet_mul(lin, dtrig));
}

Jet2 kg_factor(const Jet2& z) {
  // 2 cos(pi z + pi/5) + 1.8 cos(2 pi z + 7 pi/20)
  return jet_add(cos_term(2.0, kPi, kPi / 5.0, z),
                 cos_term(1.8, 2.0 * kPi, 7.0 * kPi / 20.0, z));
}

Jet2 heat_factor_dt(const Jet2& z) {
  // d/dz: -2 pi sin(pi z + pi/5) - 3 pi sin(2 pi z - 3 pi/5)
  return jet_add(cos_term(2.0 * kPi, kPi, kPi / 5.0 + kPi / 2.0, z),
                 cos_term(3.0 * kPi, 2.0 * kPi, -3.0 * kPi / 5.0 + kPi / 2.0, z));
}

Jet2 kg_factor_dt(const Jet2& z) {
  return jet_add(cos_term(2.0 * kPi, kPi, kPi / 5.0 + kPi / 2.0, z),
                 cos_term(3.6 * kPi, 2.0 * kPi, 7.0 * kPi / 20.0 + kPi / 2.0, z));
}

// sech^3 and its first three derivatives.
void sech3_derivs(double w, double d[4]) {
  const double s = 1.0 / std::cosh(w);
  const double th = std::tanh(w);
  const double s3 = s * s * s;
  const double s5 = s3 * s * s;
  d[0] = s3;
  d[1] = -3.0 * s3 * th;
  d[2] = 9.0 * s3 * th * th - 3.0 * s5;
  d[3] = -27.0 * s3 * th * th * th + 33.0 * s5 * th;
}

double mod_pos(double z, double p) { return z - p * std::floor(z / p); }

// Travelling sech^3 profile of the wave problem: u = s(xi) + s(eta),
// s(z) = sech^3(k (z - 2.5)), xi/eta = mod(x - x0 +- c t + 2.5, period).
struct WaveParts {
  double k;
  Jet2 xi, eta;     // jets of the mod-shifted phases
  double dxi[4], deta[4];  // sech3 derivative stacks at k(phase - 2.5)
};

WaveParts wave_parts(const ProblemSpec& spec, double x, double t) {
  WaveParts p;
  p.k = 3.0 / spec.wave_delta0;
  const double period = spec.x_hi - spec.x_lo;
  const double c = spec.wave_c;
  const double xi = mod_pos(x - spec.wave_x0 + c * t + 2.5, period);
  const double eta = mod_pos(x - spec.wave_x0 - c * t + 2.5, period);
  p.xi = {xi, 1.0, c, 0.0, 0.0};
  p.eta = {eta, 1.0, -c, 0.0, 0.0};
  sech3_derivs(p.k * (xi - 2.5), p.dxi);
  sech3_derivs(p.k * (eta - 2.5), p.deta);
  return p;
}

}  // namespace

ProblemSpec make_problem(ProblemKind kind) {
  ProblemSpec s;
  s.kind = kind;
  switch (kind) {
    case ProblemKind::Heat:
      s.x_lo = 0.0; s.x_hi = 1.0; s.horizon = 10.0;
      s.nu = 0.1;
      s.out_dim = 1;
      s.penalty_weights = {0.8, 0.9, 0.9};
      break;
    case ProblemKind::Burgers:
      s.x_lo = 0.0; s.x_hi = 2.0; s.horizon = 10.0;
      s.nu = 1.0;
      s.out_dim = 1;
      s.penalty_weights = {0.6, 0.4, 0.4, 0.4, 0.4};
      break;
    case ProblemKind::Wave:
      s.x_lo = 0.0; s.x_hi = 5.0; s.horizon = 10.0;
      s.wave_c = 2.0; s.wave_delta0 = 2.0; s.wave_x0 = 3.0;
      s.out_dim = 2;
      s.penalty_weights = {0.9, 0.9, 0.9, 0.1, 0.1, 0.1, 0.1, 0.1};
      break;
    case ProblemKind::KleinGordon:
      s.x_lo = 0.0; s.x_hi = 1.0; s.horizon = 10.0;
      s.kg_eps = 1.0; s.kg_a = 1.0; s.kg_eps1 = 1.0;
      s.out_dim = 2;
      s.penalty_weights = {0.4, 0.4, 0.4, 0.6, 0.6, 0.6, 0.6};
      break;
  }
  return s;
}

ProblemSpec problem_from_name(std::string_view name) {
  if (name == "heat") return make_problem(ProblemKind::Heat);
  if (name == "burgers") return make_problem(ProblemKind::Burgers);
  if (name == "wave") return make_problem(ProblemKind::Wave);
  if (name == "kleingordon") return make_problem(ProblemKind::KleinGordon);
  throw std::invalid_argument("unknown problem: " + std::string(name));
}

const char* problem_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Heat: return "heat";
    case ProblemKind::Burgers: return "burgers";
    case ProblemKind::Wave: return "wave";
    case ProblemKind::KleinGordon: return "kleingordon";
  }
  return "?";
}

int penalty_weight_count(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Heat: return 3;
    case ProblemKind::Burgers: return 5;
    case ProblemKind::Wave: return 8;
    case ProblemKind::KleinGordon: return 7;
  }
  return 0;
}

Jet2 exact_u(const ProblemSpec& spec, double x, double t) {
  const Jet2 jx = seed_x(x);
  const Jet2 jt = seed_t(t);
  switch (spec.kind) {
    case ProblemKind::Heat:
      return jet_mul(heat_factor(jx), heat_factor(jt));
    case ProblemKind::Burgers:
      return jet_mul(burgers_factor(jx), burgers_factor(jt));
    case ProblemKind::KleinGordon:
      return jet_mul(kg_factor(jx), kg_factor(jt));
    case ProblemKind::Wave: {
      const WaveParts p = wave_parts(spec, x, t);
      const double k = p.k;
      return jet_add(
          jet_chain(p.dxi[0], k * p.dxi[1], k * k * p.dxi[2], p.xi),
          jet_chain(p.deta[0], k * p.deta[1], k * k * p.deta[2], p.eta));
    }
  }
  throw std::logic_error("unreachable problem kind");
}

Jet2 exact_v(const ProblemSpec& spec, double x, double t) {
  const Jet2 jx = seed_x(x);
  const Jet2 jt = seed_t(t);
  switch (spec.kind) {
    case ProblemKind::Heat:
      return jet_mul(heat_factor(jx), heat_factor_dt(jt));
    case ProblemKind::Burgers:
      return jet_mul(burgers_factor(jx), burgers_factor_dt(jt));
    case ProblemKind::KleinGordon:
      return jet_mul(kg_factor(jx), kg_factor_dt(jt));
    case ProblemKind::Wave: {
      // v = du/dt = c k [s'(xi) - s'(eta)]
      const WaveParts p = wave_parts(spec, x, t);
      const double k = p.k, c = spec.wave_c;
      const Jet2 a = jet_chain(p.dxi[1], k * p.dxi[2], k * k * p.dxi[3], p.xi);
      const Jet2 b = jet_chain(p.deta[1], k * p.deta[2], k * k * p.deta[3], p.eta);
      return jet_scale(c * k, jet_sub(a, b));
    }
  }
  throw std::logic_error("unreachable problem kind");
}

double source_term(const ProblemSpec& spec, double x, double t) {
  switch (spec.kind) {
    case ProblemKind::Heat: {
      const Jet2 u = exact_u(spec, x, t);
      return u.t - spec.nu * u.xx;
    }
    case ProblemKind::Burgers: {
      const Jet2 u = exact_u(spec, x, t);
      return u.t - spec.nu * u.xx + u.v * u.x;
    }
    case ProblemKind::Wave:
      return 0.0;
    case ProblemKind::KleinGordon: {
      const Jet2 u = exact_u(spec, x, t);
      const Jet2 v = exact_v(spec, x, t);  // v.t carries d2u/dt2
      return spec.kg_eps * spec.kg_eps * v.t - spec.kg_a * spec.kg_a * u.xx +
             spec.kg_eps1 * spec.kg_eps1 * u.v + std::sin(u.v);
    }
  }
  throw std::logic_error("unreachable problem kind");
}

int interior_residuals(const ProblemSpec& spec, const Jet2* out, double f, double r[3]) {
  switch (spec.kind) {
    case ProblemKind::Heat:
      r[0] = out[0].t - spec.nu * out[0].xx - f;
      return 1;
    case ProblemKind::Burgers:
      r[0] = out[0].t - spec.nu * out[0].xx + out[0].v * out[0].x - f;
      return 1;
    case ProblemKind::Wave: {
      const double c2 = spec.wave_c * spec.wave_c;
      r[0] = out[0].t - out[1].v;
      r[1] = out[1].t - c2 * out[0].xx - f;
      r[2] = out[0].xt - out[1].x;
      return 3;
    }
    case ProblemKind::KleinGordon: {
      const double e2 = spec.kg_eps * spec.kg_eps;
      const double a2 = spec.kg_a * spec.kg_a;
      const double e12 = spec.kg_eps1 * spec.kg_eps1;
      r[0] = out[0].t - out[1].v;
      r[1] = e2 * out[1].t - a2 * out[0].xx + e12 * out[0].v + std::sin(out[0].v) - f;
      r[2] = out[0].xt - out[1].x;
      return 3;
    }
  }
  return 0;
}

int interior_residuals(const ProblemSpec& spec, const Jet2* out, double x, double t,
                       double r[3]) {
  return interior_residuals(spec, out, source_term(spec, x, t), r);
}

int boundary_residuals(const ProblemSpec& spec, const Jet2* at_lo, const Jet2* at_hi,
                       double t, double r[2]) {
  switch (spec.kind) {
    case ProblemKind::Heat:
    case ProblemKind::Burgers:
      r[0] = at_lo[0].v - exact_u(spec, spec.x_lo, t).v;
      r[1] = at_hi[0].v - exact_u(spec, spec.x_hi, t).v;
      return 2;
    case ProblemKind::Wave:
      r[0] = at_lo[1].v - at_hi[1].v;
      r[1] = at_lo[0].x - at_hi[0].x;
      return 2;
    case ProblemKind::KleinGordon:
      // Dirichlet data differentiated in time: u_dt = exact v on the ends.
      r[0] = at_lo[1].v - exact_v(spec, spec.x_lo, t).v;
      r[1] = at_hi[1].v - exact_v(spec, spec.x_hi, t).v;
      return 2;
  }
  return 0;
}

int temporal_residuals(const ProblemSpec& spec, const Jet2* out, double target_u,
                       double target_v, double target_ux, double r[3]) {
  r[0] = out[0].v - target_u;
  if (!spec.has_v()) return 1;
  r[1] = out[1].v - target_v;
  r[2] = out[0].x - target_ux;
  return 3;
}

void initial_data(const ProblemSpec& spec, double x, double& u0, double& v0, double& ux0) {
  const Jet2 u = exact_u(spec, x, 0.0);
  u0 = u.v;
  ux0 = u.x;
  v0 = spec.has_v() ? exact_v(spec, x, 0.0).v : 0.0;
}

}  // namespace hlcpinn

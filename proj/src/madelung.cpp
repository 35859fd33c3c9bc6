#include "qmflow/madelung.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>

namespace qmflow::madelung {

namespace {

double wrap_2pi(double a) {
  a = std::fmod(a, 2.0 * M_PI);
  if (a < 0.0) a += 2.0 * M_PI;
  return a;
}

// Scale-free residual: |sum of terms| / (sum of |terms|), 0 when everything vanishes.
double scaled_residual(std::initializer_list<double> terms) {
  double sum = 0.0, scale = 0.0;
  for (double t : terms) {
    sum += t;
    scale += std::abs(t);
  }
  return scale > 0.0 ? std::abs(sum) / scale : 0.0;
}

// grad(Psi) = Psi * (grad f / (2 f) + i grad phi); valid wherever f > 0.
std::complex<double> directional_grad_psi(const WaveModel& m, const Point3& p, double t,
                                          const PhysicalConstants& c, const Vec3& dir) {
  const double f = m.density(p, t, c);
  const Vec3 glog = m.grad_density(p, t, c) / (2.0 * f);
  const Vec3 gphi = m.grad_phase(p, t, c);
  return m.psi(p, t, c) * std::complex<double>(dot(glog, dir), dot(gphi, dir));
}

num::FdConfig model_fd(const WaveModel& m, const PhysicalConstants& c, num::FdConfig cfg) {
  cfg.characteristic_length = m.characteristic_length(c);
  return cfg;
}

}  // namespace

Fields decompose(const WaveModel& model, const Point3& p, double t,
                 const PhysicalConstants& c) {
  model.check_point(p, c);
  Fields out;
  out.f = model.density(p, t, c);
  out.S = std::log(out.f);
  out.phi = wrap_2pi(model.phase(p, t, c));
  out.branch = 0;  // pointwise evaluation; paths carry their own branch ledger
  out.Phi = 2.0 * out.phi + 2.0 * M_PI * out.branch;
  out.A = model.vector_potential(p, t, c);
  out.v_potential = model.velocity_potential_part(p, t, c);
  out.v_solenoidal = model.velocity_solenoidal_part(p, t, c);
  out.v = model.velocity(p, t, c);
  out.Q = model.velocity_divergence(p, t, c);
  return out;
}

double velocity_divergence(const WaveModel& model, const Point3& p, double t,
                           const PhysicalConstants& c, const num::FdConfig& cfg) {
  model.check_point(p, c);
  if (model.use_analytic_derivatives) return model.velocity_divergence(p, t, c);
  auto vfield = [&](const Point3& q) { return model.velocity(q, t, c); };
  return num::fd_divergence(vfield, p, model_fd(model, c, cfg));
}

double continuity_residual(const WaveModel& model, const Point3& p, double t,
                           const PhysicalConstants& c, const num::FdConfig& cfg) {
  model.check_point(p, c);
  const double f = model.density(p, t, c);
  const Vec3 v = model.velocity(p, t, c);
  double dfdt, fQ;
  Vec3 gradf;
  if (model.use_analytic_derivatives) {
    dfdt = model.ddt_density(p, t, c);
    gradf = model.grad_density(p, t, c);
    fQ = f * model.velocity_divergence(p, t, c);
  } else {
    const num::FdConfig fd = model_fd(model, c, cfg);
    dfdt = num::fd_time_derivative([&](double s) { return model.density(p, s, c); }, t, fd);
    gradf = num::fd_gradient([&](const Point3& q) { return model.density(q, t, c); }, p, fd);
    fQ = f * num::fd_divergence([&](const Point3& q) { return model.velocity(q, t, c); }, p, fd);
  }
  // Advection term split per component so orthogonality is not hidden by the
  // scale normalization: scale uses |grad f| |v|, not the cancelled dot value.
  const double advect = dot(gradf, v);
  const double defect = dfdt + advect + fQ;
  const double scale = std::abs(dfdt) + norm(gradf) * norm(v) + std::abs(fQ);
  return scale > 0.0 ? std::abs(defect) / scale : 0.0;
}

double quantum_potential(const WaveModel& model, const Point3& p, double t,
                         const PhysicalConstants& c, const num::FdConfig& cfg) {
  model.check_point(p, c);
  double lap_ratio;
  if (model.use_analytic_derivatives) {
    lap_ratio = model.lap_amp_over_amp(p, t, c);
  } else {
    auto amp = [&](const Point3& q) { return std::sqrt(model.density(q, t, c)); };
    lap_ratio = num::fd_laplacian(amp, p, model_fd(model, c, cfg)) / amp(p);
  }
  return -c.hbar * c.hbar / (2.0 * c.mass) * lap_ratio;
}

double schrodinger_potential(const WaveModel& model, const Point3& p, double t,
                             const PhysicalConstants& c, const num::FdConfig& cfg) {
  model.check_point(p, c);
  double dphi_dt, lap_ratio;
  Vec3 gphi;
  if (model.use_analytic_derivatives) {
    dphi_dt = model.ddt_phase(p, t, c);
    gphi = model.grad_phase(p, t, c);
    lap_ratio = model.lap_amp_over_amp(p, t, c);
  } else {
    const num::FdConfig fd = model_fd(model, c, cfg);
    // Differentiate the phase relative to its value at (p, t): the stencil
    // then sees arguments near zero and never straddles a wrap-around cut.
    const std::complex<double> psi0 = std::conj(model.psi(p, t, c));
    auto local_phase_t = [&](double s) { return std::arg(model.psi(p, s, c) * psi0); };
    auto local_phase = [&](const Point3& q) { return std::arg(model.psi(q, t, c) * psi0); };
    dphi_dt = num::fd_time_derivative(local_phase_t, t, fd);
    gphi = num::fd_gradient(local_phase, p, fd);
    auto amp = [&](const Point3& q) { return std::sqrt(model.density(q, t, c)); };
    lap_ratio = num::fd_laplacian(amp, p, fd) / amp(p);
  }
  const Vec3 A = model.vector_potential(p, t, c);
  return -(1.0 / c.beta()) *
         (dphi_dt + c.alpha() * (lap_ratio - dot(gphi, gphi)) + c.gamma() * dot(A, gphi));
}

double classical_potential(const WaveModel& model, const Point3& p, double t,
                           const PhysicalConstants& c, const num::FdConfig& cfg) {
  model.check_point(p, c);
  if (model.coulomb_Z > 0) {
    const double r = norm(p);
    return -model.coulomb_Z * c.charge * c.charge / (4.0 * M_PI * c.eps0 * r);
  }
  const double U = schrodinger_potential(model, p, t, c, cfg);
  const double Qpot = quantum_potential(model, p, t, c, cfg);
  const Vec3 vs = model.velocity_solenoidal_part(p, t, c);
  return U + Qpot - 0.5 * c.mass * dot(vs, vs);
}

EnergyReport energy_report(const WaveModel& model, const Point3& p, double t,
                           const PhysicalConstants& c, const num::FdConfig& cfg) {
  EnergyReport rep;
  const Vec3 v = model.velocity(p, t, c);
  rep.kinetic = 0.5 * c.mass * dot(v, v);
  rep.potential = classical_potential(model, p, t, c, cfg);
  rep.total = rep.kinetic + rep.potential;
  const double phase_rate = c.hbar * model.ddt_phase(p, t, c);  // (hbar/2) dPhi/dt
  rep.hj_residual =
      scaled_residual({phase_rate, rep.kinetic, rep.potential});
  return rep;
}

double hamiltonian(const WaveModel& model, const Point3& p, double t,
                   const PhysicalConstants& c, const num::FdConfig& cfg) {
  const Vec3 vp = model.velocity_potential_part(p, t, c);
  const Vec3 vs = model.velocity_solenoidal_part(p, t, c);
  const Vec3 pp = c.mass * vp;
  return dot(pp, pp) / (2.0 * c.mass) + dot(pp, vs) + 0.5 * c.mass * dot(vs, vs) +
         classical_potential(model, p, t, c, cfg);
}

double lagrangian(const WaveModel& model, const Point3& p, double t,
                  const PhysicalConstants& c, const num::FdConfig& cfg) {
  const Vec3 v = model.velocity(p, t, c);
  const Vec3 pp = c.mass * model.velocity_potential_part(p, t, c);
  return dot(v, pp) - hamiltonian(model, p, t, c, cfg);
}

namespace {

// Cumulative integral of sampled data by piecewise parabolas through each
// sample triple; exact for quadratics, O(h^3) otherwise.
std::vector<double> cumulative_integral(const std::vector<double>& t,
                                        const std::vector<double>& g) {
  const size_t n = t.size();
  std::vector<double> out(n, 0.0);
  for (size_t i = 0; i + 1 < n; ++i) {
    const size_t a = i == 0 ? 0 : i - 1;
    const size_t b = a + 1, d = a + 2;
    // Lagrange quadratic through (t[a],g[a]), (t[b],g[b]), (t[d],g[d]),
    // integrated over [t[i], t[i+1]].
    auto quad_int = [&](double lo, double hi) {
      auto term = [&](size_t j, size_t p1, size_t p2) {
        const double denom = (t[j] - t[p1]) * (t[j] - t[p2]);
        auto F = [&](double x) {
          const double c1 = t[p1] + t[p2];
          return x * x * x / 3.0 - c1 * x * x / 2.0 + t[p1] * t[p2] * x;
        };
        return g[j] * (F(hi) - F(lo)) / denom;
      };
      return term(a, b, d) + term(b, a, d) + term(d, a, b);
    };
    out[i + 1] = out[i] + quad_int(t[i], t[i + 1]);
  }
  return out;
}

}  // namespace

ActionPhaseReport action_phase_check(const WaveModel& model, const FlowTrajectory& traj,
                                     const PhysicalConstants& c) {
  traj.validate();
  const size_t n = traj.t.size();
  if (n < 3) throw PreconditionError("action-phase check: need at least 3 samples");

  // Unwrapped doubled phase along the trajectory.
  std::vector<double> Phi(n);
  double prev = model.phase(traj.r[0], traj.t[0], c);
  double unwrapped = prev;
  Phi[0] = 2.0 * unwrapped;
  for (size_t i = 1; i < n; ++i) {
    const double cur = model.phase(traj.r[i], traj.t[i], c);
    double d = cur - prev;
    d -= 2.0 * M_PI * std::round(d / (2.0 * M_PI));
    unwrapped += d;
    prev = cur;
    Phi[i] = 2.0 * unwrapped;
  }

  std::vector<double> L(n);
  for (size_t i = 0; i < n; ++i) L[i] = lagrangian(model, traj.r[i], traj.t[i], c);
  const std::vector<double> action = cumulative_integral(traj.t, L);

  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (size_t i = 0; i < n; ++i) {
    const double offset = 0.5 * c.hbar * Phi[i] - action[i];
    lo = std::min(lo, offset);
    hi = std::max(hi, offset);
  }
  ActionPhaseReport rep;
  rep.spread = hi - lo;
  rep.total_action = std::abs(0.5 * c.hbar * (Phi[n - 1] - Phi[0]));
  rep.relative_spread = rep.total_action > 0.0 ? rep.spread / rep.total_action : rep.spread;
  return rep;
}

double schrodinger_residual(const WaveModel& model, const Point3& p, double t,
                            const PhysicalConstants& c, const num::FdConfig& cfg) {
  model.check_point(p, c);
  using cplx = std::complex<double>;
  const cplx i_unit{0.0, 1.0};
  cplx dpsi_dt, lap_psi;
  Vec3 A = model.vector_potential(p, t, c);
  cplx a_dot_grad;  // (A, grad Psi)
  if (model.use_analytic_derivatives) {
    dpsi_dt = model.ddt_psi(p, t, c);
    lap_psi = model.laplacian_psi(p, t, c);
    a_dot_grad = norm(A) > 0.0 ? directional_grad_psi(model, p, t, c, A) : cplx{};
  } else {
    const num::FdConfig fd = model_fd(model, c, cfg);
    auto re = [&](const Point3& q) { return model.psi(q, t, c).real(); };
    auto im = [&](const Point3& q) { return model.psi(q, t, c).imag(); };
    dpsi_dt = {num::fd_time_derivative(
                   [&](double s) { return model.psi(p, s, c).real(); }, t, fd),
               num::fd_time_derivative(
                   [&](double s) { return model.psi(p, s, c).imag(); }, t, fd)};
    lap_psi = {num::fd_laplacian(re, p, fd), num::fd_laplacian(im, p, fd)};
    if (norm(A) > 0.0) {
      const Vec3 gr = num::fd_gradient(re, p, fd);
      const Vec3 gi = num::fd_gradient(im, p, fd);
      a_dot_grad = {dot(A, gr), dot(A, gi)};
    }
  }
  const double U = schrodinger_potential(model, p, t, c, cfg);
  const cplx psi = model.psi(p, t, c);

  const cplx term_t = i_unit * c.hbar * dpsi_dt;
  const cplx term_lap = c.hbar * c.hbar / (2.0 * c.mass) * lap_psi;
  // (q_e/m)(A, p̂)Psi with p̂ = -i hbar grad.
  const cplx term_A = c.charge / c.mass * (-i_unit * c.hbar) * a_dot_grad;
  const cplx term_U = U * psi;

  const double scale =
      std::abs(term_t) + std::abs(term_lap) + std::abs(term_A) + std::abs(term_U);
  return scale > 0.0 ? std::abs(term_t + term_lap + term_A - term_U) / scale : 0.0;
}

}  // namespace qmflow::madelung

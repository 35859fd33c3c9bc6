#include "qmflow/quantization.hpp"

#include <cmath>
#include <cstdio>

#include "qmflow/madelung.hpp"

namespace qmflow::quant {

namespace {

// grad(azimuth) = e_phi / rho, the multivalued angle's single-valued gradient.
Vec3 grad_azimuth(const Point3& p) {
  const double rho2 = p.x * p.x + p.y * p.y;
  return {-p.y / rho2, p.x / rho2, 0.0};
}

int snap_integer(double value, double unit, const char* what) {
  const double turns = value / unit;
  const double nearest = std::round(turns);
  if (std::abs(turns - nearest) > 1e-6) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%s: residue %.3e from integer exceeds 1e-6", what,
                  turns - nearest);
    throw UnresolvedWindingError(buf);
  }
  return int(nearest);
}

num::Path3 shifted_circle(double radius, const Point3& center, int turns) {
  const double span = 2.0 * M_PI * turns;
  auto gamma = [radius, center](double t) {
    return Point3{center.x + radius * std::cos(t), center.y + radius * std::sin(t), center.z};
  };
  auto dgamma = [radius](double t) {
    return Vec3{-radius * std::sin(t), radius * std::cos(t), 0.0};
  };
  return num::Path3::parametric(gamma, dgamma, 0.0, span);
}

}  // namespace

void LoopSpec::validate() const {
  if (!(radius > 0.0)) throw PreconditionError("loop: radius must be positive");
  if (!(theta > 0.0) || !(theta < M_PI))
    throw PreconditionError("loop: theta must lie strictly between 0 and pi");
  if (turns == 0) throw DegenerateOrbitError("loop: zero turns is degenerate");
  if (samples < 64 * std::abs(turns))
    throw PreconditionError("loop: need at least 64 samples per turn");
}

num::Path3 LoopSpec::path() const {
  validate();
  return num::circle_path(cyl_rho(), height(), turns);
}

double circulation_of_angle_gradient(const LoopSpec& loop, const num::QuadConfig& cfg) {
  return num::line_integral(grad_azimuth, loop.path(), cfg);
}

double circulation_off_axis(double radius, const Point3& center, int turns,
                            const num::QuadConfig& cfg) {
  if (cyl_radius(center) <= radius)
    throw PreconditionError("off-axis circulation: loop must not enclose the axis");
  return num::line_integral(grad_azimuth, shifted_circle(radius, center, turns), cfg);
}

MomentumLoopReport momentum_loop_integral(const WaveModel& model, const LoopSpec& loop,
                                          const PhysicalConstants& c,
                                          const num::QuadConfig& cfg) {
  const num::Path3 path = loop.path();
  auto p_total = [&](const Point3& q) { return c.mass * model.velocity(q, 0.0, c); };
  auto p_phase = [&](const Point3& q) {
    return c.mass * model.velocity_potential_part(q, 0.0, c);
  };
  auto p_flux = [&](const Point3& q) {
    return c.mass * model.velocity_solenoidal_part(q, 0.0, c);
  };
  MomentumLoopReport rep;
  rep.total = num::line_integral(p_total, path, cfg);
  rep.phase_part = num::line_integral(p_phase, path, cfg);
  rep.flux_part = num::line_integral(p_flux, path, cfg);
  const double unit = 2.0 * M_PI * c.hbar;
  rep.residue = rep.total / unit - std::round(rep.total / unit);
  rep.recovered_k = snap_integer(rep.total, unit, "momentum loop");
  return rep;
}

LoopActionReport loop_action_decomposition(const WaveModel& model, double rho,
                                           const PhysicalConstants& c, int time_samples) {
  if (model.k == 0) throw DegenerateOrbitError("orbit with zero winding has no period");
  if (!(rho > model.pole_exclusion(c)))
    throw PreconditionError("orbit radius inside the pole exclusion zone");
  if (time_samples < 3) throw PreconditionError("need at least 3 time samples");

  LoopActionReport rep;
  // Angular speed of the flow is hbar k / (m rho^2); one revolution.
  const double omega = c.hbar * model.k / (c.mass * rho * rho);
  rep.period = 2.0 * M_PI / std::abs(omega);

  double action = 0.0, energy = 0.0;
  double prev_l = 0.0, prev_h = 0.0;
  for (int i = 0; i < time_samples; ++i) {
    const double t = rep.period * i / double(time_samples - 1);
    const double ang = omega * t;
    const Point3 p{rho * std::cos(ang), rho * std::sin(ang), 0.0};
    const double L = madelung::lagrangian(model, p, t, c);
    const double H = madelung::hamiltonian(model, p, t, c);
    if (i > 0) {
      const double dt = rep.period / double(time_samples - 1);
      action += 0.5 * dt * (L + prev_l);
      energy += 0.5 * dt * (H + prev_h);
    }
    prev_l = L;
    prev_h = H;
  }
  rep.action_term = action;
  rep.energy_term = energy;

  const int orientation = model.k > 0 ? 1 : -1;
  auto p_phase = [&](const Point3& q) {
    return c.mass * model.velocity_potential_part(q, 0.0, c);
  };
  rep.loop_integral =
      num::line_integral(p_phase, num::circle_path(rho, 0.0, orientation), {});
  rep.balance_residual = std::abs(rep.loop_integral - (rep.action_term + rep.energy_term));
  rep.recovered_k = snap_integer(rep.loop_integral, 2.0 * M_PI * c.hbar, "orbit action");
  return rep;
}

Vec3 angular_momentum(const WaveModel& model, const Point3& p, const PhysicalConstants& c) {
  const Vec3 rho_vec{p.x, p.y, 0.0};
  return cross(rho_vec, c.mass * model.velocity(p, 0.0, c));
}

double orbit_energy_profile(double r, int k, int Z, const PhysicalConstants& c) {
  if (!(r > 0.0)) throw PreconditionError("orbit energy: r must be positive");
  const double hk = c.hbar * k;
  return hk * hk / (2.0 * c.mass * r * r) -
         Z * c.charge * c.charge / (4.0 * M_PI * c.eps0 * r);
}

BohrOrbit bohr_model(int Z, int k, const PhysicalConstants& c, const num::FdConfig& cfg) {
  if (k == 0) throw DegenerateOrbitError("orbit with zero winding has no stationary radius");
  if (Z < 1) throw PreconditionError("bohr model: Z must be >= 1");
  BohrOrbit orbit;
  const double e2 = c.charge * c.charge;
  orbit.radius = 4.0 * M_PI * c.eps0 * c.hbar * c.hbar * double(k) * double(k) /
                 (Z * e2 * c.mass);
  orbit.energy = -double(Z) * double(Z) * e2 * e2 * c.mass /
                 (32.0 * M_PI * M_PI * c.eps0 * c.eps0 * c.hbar * c.hbar * double(k) * double(k));

  // Find the stationary point of W by bisecting its finite-difference
  // derivative; the profile has exactly one interior extremum.
  num::FdConfig fd = cfg;
  fd.characteristic_length = orbit.radius;
  auto dW = [&](double r) {
    const double h = fd.h();
    if (fd.order == 2)
      return (orbit_energy_profile(r + h, k, Z, c) - orbit_energy_profile(r - h, k, Z, c)) /
             (2.0 * h);
    return (-orbit_energy_profile(r + 2.0 * h, k, Z, c) +
            8.0 * orbit_energy_profile(r + h, k, Z, c) -
            8.0 * orbit_energy_profile(r - h, k, Z, c) +
            orbit_energy_profile(r - 2.0 * h, k, Z, c)) /
           (12.0 * h);
  };
  double lo = 0.05 * orbit.radius, hi = 20.0 * orbit.radius;
  double flo = dW(lo);
  if (!(flo < 0.0)) throw PreconditionError("bohr model: derivative bracket failed at r_lo");
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (dW(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-14 * orbit.radius) break;
  }
  orbit.fd_radius = 0.5 * (lo + hi);
  orbit.fd_energy = orbit_energy_profile(orbit.fd_radius, k, Z, c);
  orbit.stationarity =
      std::abs(dW(orbit.fd_radius)) * orbit.fd_radius / std::abs(orbit.fd_energy);
  return orbit;
}

DiracPotentialReport dirac_vector_potential(const Point3& p, int k,
                                            const PhysicalConstants& c,
                                            const num::FdConfig& cfg) {
  DiracPotentialReport rep;
  if (k == 0) return rep;  // zero field, zero derivatives

  const double rho = cyl_radius(p);
  if (!(rho > 0.0)) throw PoleError("string potential evaluated on its axis");
  auto A = [&](const Point3& q) -> Vec3 {
    const double qrho = cyl_radius(q);
    if (!(qrho > 0.0)) throw PoleError("string potential stencil touched the axis");
    return -c.hbar * double(k) / (c.charge * qrho) * unit_e_phi(q);
  };
  rep.A = A(p);
  num::FdConfig fd = cfg;
  fd.characteristic_length = rho;  // keep stencils proportionate to axis distance
  rep.div_A = num::fd_divergence(A, p, fd);
  rep.curl_A_norm = norm(num::fd_curl(A, p, fd));
  return rep;
}

DiracChargeReport dirac_flux_and_charge(const LoopSpec& loop, int k,
                                        const PhysicalConstants& c,
                                        const num::QuadConfig& cfg) {
  DiracChargeReport rep;
  auto A = [&](const Point3& q) -> Vec3 {
    if (k == 0) return {};
    const double qrho = cyl_radius(q);
    return -c.hbar * double(k) / (c.charge * qrho) * unit_e_phi(q);
  };
  rep.flux = num::line_integral(A, loop.path(), cfg);
  rep.charge_wb = 2.0 * M_PI * c.hbar * double(k) / c.charge;
  rep.charge_am = rep.charge_wb / c.mu0;
  rep.ratio_wb = c.charge * rep.charge_wb / (2.0 * M_PI * c.hbar);
  rep.ratio_am = c.charge * rep.charge_am / (2.0 * M_PI * c.eps0 * c.hbar * c.c * c.c);
  rep.recovered_k = k == 0 ? 0 : snap_integer(rep.ratio_wb, 1.0, "string charge ratio");
  rep.encloses_axis = true;
  return rep;
}

double dirac_flux_off_axis(double radius, const Point3& center, int k,
                           const PhysicalConstants& c, const num::QuadConfig& cfg) {
  if (cyl_radius(center) <= radius)
    throw PreconditionError("off-axis flux: loop must not enclose the axis");
  auto A = [&](const Point3& q) -> Vec3 {
    if (k == 0) return {};
    const double qrho = cyl_radius(q);
    return -c.hbar * double(k) / (c.charge * qrho) * unit_e_phi(q);
  };
  return num::line_integral(A, shifted_circle(radius, center, 1), cfg);
}

double delta_field_consistency(int k, const std::vector<double>& radii,
                               const PhysicalConstants& c, const num::QuadConfig& cfg) {
  if (radii.empty()) throw PreconditionError("flux sweep: need at least one radius");
  const double expected = -2.0 * M_PI * c.hbar * double(k) / c.charge;
  double worst = 0.0;
  for (double r : radii) {
    LoopSpec loop;
    loop.radius = r;
    const DiracChargeReport rep = dirac_flux_and_charge(loop, k, c, cfg);
    const double scale = std::max(std::abs(expected), 1e-300);
    worst = std::max(worst, std::abs(rep.flux - expected) / scale);
  }
  return worst;
}

}  // namespace qmflow::quant

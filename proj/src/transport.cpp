#include "qmflow/transport.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "json.hpp"

#include "qmflow/madelung.hpp"

namespace qmflow::transport {

namespace {

bool vortex_kind(const WaveModel& m) {
  return m.kind == WaveKind::CentralField || m.kind == WaveKind::DiracString;
}

void require_vortex(const WaveModel& m, const char* what) {
  if (!vortex_kind(m)) throw PreconditionError(std::string(what) + ": vortex model required");
  if (m.k == 0) throw DegenerateOrbitError(std::string(what) + ": zero winding is degenerate");
}

}  // namespace

Vec3 characteristic_rhs(const Point3& p, int k, const PhysicalConstants& c) {
  const double rho2 = p.x * p.x + p.y * p.y;
  if (!(rho2 > 0.0)) throw PoleError("characteristic through the axis");
  const double w = c.hbar * double(k) / (c.mass * rho2);
  return {w * p.y, -w * p.x, 0.0};
}

Characteristic integrate_characteristic(const WaveModel& model, const Point3& start,
                                        int steps_per_revolution, int revolutions,
                                        const PhysicalConstants& c) {
  require_vortex(model, "characteristic");
  if (steps_per_revolution < 16) throw PreconditionError("characteristic: need >= 16 steps/rev");
  if (revolutions < 1) throw PreconditionError("characteristic: need >= 1 revolution");
  const double rho0 = cyl_radius(start);
  if (!(rho0 > model.pole_exclusion(c)))
    throw PoleError("characteristic start inside the pole exclusion zone");

  const double period = 2.0 * M_PI * c.mass * rho0 * rho0 / (c.hbar * std::abs(model.k));
  const double dt = period / steps_per_revolution;
  const long nsteps = long(steps_per_revolution) * revolutions;

  Characteristic out;
  out.t.reserve(nsteps + 1);
  out.r.reserve(nsteps + 1);
  out.f.reserve(nsteps + 1);

  Point3 p = start;
  double t = 0.0;
  double angle = std::atan2(p.y, p.x);
  double unwound = 0.0;
  double prev_angle = angle;
  double f0 = model.density(p, 0.0, c);
  double fmin = f0, fmax = f0;
  double rmin = rho0, rmax = rho0;

  out.t.push_back(t);
  out.r.push_back(p);
  out.f.push_back(f0);

  auto rhs = [&](const Point3& q) { return characteristic_rhs(q, model.k, c); };
  for (long i = 0; i < nsteps; ++i) {
    const Vec3 k1 = rhs(p);
    const Vec3 k2 = rhs(p + 0.5 * dt * k1);
    const Vec3 k3 = rhs(p + 0.5 * dt * k2);
    const Vec3 k4 = rhs(p + dt * k3);
    p += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += dt;

    const double a = std::atan2(p.y, p.x);
    double d = a - prev_angle;
    d -= 2.0 * M_PI * std::round(d / (2.0 * M_PI));
    unwound += d;
    prev_angle = a;

    const double rho = cyl_radius(p);
    rmin = std::min(rmin, rho);
    rmax = std::max(rmax, rho);
    const double f = model.density(p, t, c);
    fmin = std::min(fmin, f);
    fmax = std::max(fmax, f);

    out.t.push_back(t);
    out.r.push_back(p);
    out.f.push_back(f);
  }

  out.radius_drift = std::max(rmax - rho0, rho0 - rmin) / rho0;
  out.density_spread = (fmax - fmin) / f0;
  out.measured_period = std::abs(unwound) > 0.0 ? t * 2.0 * M_PI / std::abs(unwound) : 0.0;
  out.return_distance = norm(out.r.back() - start) / rho0;
  return out;
}

void Characteristic::write_csv(const std::string& filename) const {
  std::ofstream out(filename);
  if (!out) throw PreconditionError("cannot open for writing: " + filename);
  out << "t,x,y,z,f\n";
  char buf[192];
  for (size_t i = 0; i < t.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.15e,%.15e,%.15e,%.15e,%.15e\n", t[i], r[i].x, r[i].y,
                  r[i].z, f[i]);
    out << buf;
  }
}

FlowTrajectory circular_flow(const WaveModel& model, const Point3& start, double t0,
                             double t1, int n, const PhysicalConstants& c) {
  require_vortex(model, "flow trajectory");
  if (n < 3) throw PreconditionError("flow trajectory: need >= 3 samples");
  if (!(t1 > t0)) throw PreconditionError("flow trajectory: need t1 > t0");
  const double rho = cyl_radius(start);
  if (!(rho > model.pole_exclusion(c)))
    throw PoleError("flow trajectory inside the pole exclusion zone");
  const double omega = c.hbar * model.k / (c.mass * rho * rho);
  const double phi0 = std::atan2(start.y, start.x);
  FlowTrajectory traj;
  traj.t.resize(n);
  traj.r.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = t0 + (t1 - t0) * i / double(n - 1);
    const double phi = phi0 + omega * (t - t0);
    traj.t[i] = t;
    traj.r[i] = {rho * std::cos(phi), rho * std::sin(phi), start.z};
  }
  return traj;
}

StationaryResiduals stationary_continuity_residual(const num::ScalarField& f_profile,
                                                   int k, const Point3& p,
                                                   const PhysicalConstants& c,
                                                   const num::FdConfig& cfg) {
  const double rho = cyl_radius(p);
  if (!(rho > 0.0)) throw PoleError("stationary residual on the axis");

  const Vec3 v = c.hbar * double(k) / (c.mass * rho) * unit_e_phi(p);
  const Vec3 gradf = num::fd_gradient(f_profile, p, cfg);
  StationaryResiduals out;
  {
    const double defect = dot(v, gradf);
    const double scale = norm(v) * norm(gradf);
    out.advective = scale > 0.0 ? std::abs(defect) / scale : 0.0;
  }
  {
    auto flow = [&](const Point3& q) -> Vec3 {
      const double q2 = q.x * q.x + q.y * q.y;
      return f_profile(q) / q2 * Vec3{-q.y, q.x, 0.0};  // f * grad(azimuth)
    };
    const double defect = num::fd_divergence(flow, p, cfg);
    const double f0 = std::abs(f_profile(p));
    const double scale = norm(gradf) / rho + f0 / (rho * rho);
    out.divergence_form = scale > 0.0 ? std::abs(defect) / scale : 0.0;
  }
  return out;
}

std::complex<double> evolution_rotate(std::complex<double> psi, double dphi) {
  return std::polar(std::abs(psi), std::arg(psi) + dphi);
}

PhaseReport evolution_phase(const WaveModel& model, const FlowTrajectory& traj,
                            const PhysicalConstants& c) {
  traj.validate();
  const size_t n = traj.t.size();
  if (n < 3) throw PreconditionError("evolution phase: need at least 3 samples");

  // The trajectory is a flow line, so dr = v dt with the field velocity.
  std::vector<double> p_dot_v(n), H(n);
  for (size_t i = 0; i < n; ++i) {
    const Point3& p = traj.r[i];
    const double t = traj.t[i];
    const Vec3 pp = c.mass * model.velocity_potential_part(p, t, c);
    p_dot_v[i] = dot(pp, model.velocity(p, t, c));
    H[i] = madelung::hamiltonian(model, p, t, c);
  }
  auto integrate_samples = [&](const std::vector<double>& g) {
    double acc = 0.0;
    for (size_t i = 0; i + 1 < n; ++i) {
      const size_t a = i == 0 ? 0 : i - 1;
      const size_t b = a + 1, d = a + 2;
      auto F = [&](size_t j, size_t q1, size_t q2, double x) {
        const double c1 = traj.t[q1] + traj.t[q2];
        return g[j] * (x * x * x / 3.0 - c1 * x * x / 2.0 + traj.t[q1] * traj.t[q2] * x) /
               ((traj.t[j] - traj.t[q1]) * (traj.t[j] - traj.t[q2]));
      };
      auto seg = [&](double x) { return F(a, b, d, x) + F(b, a, d, x) + F(d, a, b, x); };
      acc += seg(traj.t[i + 1]) - seg(traj.t[i]);
    }
    return acc;
  };

  PhaseReport rep;
  rep.p_dr_integral = integrate_samples(p_dot_v);
  rep.h_integral = integrate_samples(H);
  rep.action = rep.p_dr_integral - rep.h_integral;

  double unwound = 0.0;
  double prev = std::arg(model.psi(traj.r[0], traj.t[0], c));
  for (size_t i = 1; i < n; ++i) {
    const double cur = std::arg(model.psi(traj.r[i], traj.t[i], c));
    double d = cur - prev;
    d -= 2.0 * M_PI * std::round(d / (2.0 * M_PI));
    unwound += d;
    prev = cur;
  }
  rep.phase_action = c.hbar * unwound;  // (hbar/2) * (2 * unwrapped phase change)
  rep.residual = std::abs(rep.action - rep.phase_action);
  return rep;
}

void TrajectoryFamily::validate() const {
  if (members.empty()) throw PreconditionError("trajectory family: no members");
  const auto& first = members.front().path;
  first.validate();
  const double scale =
      std::max({std::abs(first.xi.front()), std::abs(first.xi.back()), 1e-300});
  for (const auto& m : members) {
    m.path.validate();
    if (std::abs(m.path.xi.front() - first.xi.front()) > 1e-9 * scale ||
        std::abs(m.path.xi.back() - first.xi.back()) > 1e-9 * scale)
      throw EndpointMismatchError("trajectory family: members do not share endpoints");
  }
}

FamilyMember member_from_flow(const WaveModel& model, const Point3& start, double t1,
                              double t2, int extra_turns, int samples,
                              const PhysicalConstants& c) {
  require_vortex(model, "family member");
  if (samples < 8) throw PreconditionError("family member: need >= 8 samples");
  const double rho = cyl_radius(start);
  if (!(rho > model.pole_exclusion(c)))
    throw PoleError("family member inside the pole exclusion zone");
  const double omega = c.hbar * model.k / (c.mass * rho * rho);
  const double phi0 = std::atan2(start.y, start.x);
  // Same endpoints and times as the plain flow arc; `extra_turns` whole extra
  // revolutions mark the homotopy class of the member.
  const double sweep = omega * (t2 - t1) + 2.0 * M_PI * extra_turns;

  FamilyMember member;
  std::vector<double> tau(samples);
  std::vector<std::complex<double>> xi(samples);
  for (int i = 0; i < samples; ++i) {
    const double s = i / double(samples - 1);
    const double t = t1 + (t2 - t1) * s;
    const double phi = phi0 + sweep * s;
    const Point3 p{rho * std::cos(phi), rho * std::sin(phi), start.z};
    tau[i] = t;
    xi[i] = model.psi(p, t, c);
  }
  member.path = contour::ComplexPath::from_samples(std::move(tau), std::move(xi));
  const contour::RefinedPath refined = contour::refine_and_unwrap(member.path);
  member.mag_ratio = std::abs(refined.path.xi.back() / refined.path.xi.front());
  // Transition action from the unwrapped phase ledger of the member itself.
  member.action = c.hbar * refined.total_turn;
  return member;
}

std::complex<double> path_sum(const TrajectoryFamily& family, double hbar) {
  family.validate();
  if (!(hbar > 0.0)) throw PreconditionError("path sum: hbar must be positive");
  std::complex<double> acc = 0.0;
  for (const auto& m : family.members)
    acc += std::polar(m.mag_ratio, m.action / hbar);
  return acc / double(family.members.size());
}

std::string TrajectoryFamily::json_text() const {
  nlohmann::json j;
  j["t1"] = t1;
  j["t2"] = t2;
  j["p1"] = {p1.x, p1.y, p1.z};
  j["p2"] = {p2.x, p2.y, p2.z};
  j["members"] = nlohmann::json::array();
  for (const auto& m : members) {
    nlohmann::json jm;
    jm["mag_ratio"] = m.mag_ratio;
    jm["action"] = m.action;
    jm["tau"] = m.path.tau;
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (const auto& z : m.path.xi) {
      re.push_back(z.real());
      im.push_back(z.imag());
    }
    jm["re"] = std::move(re);
    jm["im"] = std::move(im);
    j["members"].push_back(std::move(jm));
  }
  return j.dump(2) + "\n";
}

void TrajectoryFamily::write_json(const std::string& filename) const {
  std::ofstream out(filename);
  if (!out) throw PreconditionError("cannot open for writing: " + filename);
  out << json_text();
}

TrajectoryFamily TrajectoryFamily::read_json(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw PreconditionError("cannot open for reading: " + filename);
  nlohmann::json j;
  in >> j;
  TrajectoryFamily fam;
  fam.t1 = j.at("t1").get<double>();
  fam.t2 = j.at("t2").get<double>();
  const auto& jp1 = j.at("p1");
  const auto& jp2 = j.at("p2");
  fam.p1 = {jp1.at(0).get<double>(), jp1.at(1).get<double>(), jp1.at(2).get<double>()};
  fam.p2 = {jp2.at(0).get<double>(), jp2.at(1).get<double>(), jp2.at(2).get<double>()};
  for (const auto& jm : j.at("members")) {
    FamilyMember m;
    m.mag_ratio = jm.at("mag_ratio").get<double>();
    m.action = jm.at("action").get<double>();
    std::vector<double> tau = jm.at("tau").get<std::vector<double>>();
    std::vector<double> re = jm.at("re").get<std::vector<double>>();
    std::vector<double> im = jm.at("im").get<std::vector<double>>();
    if (re.size() != tau.size() || im.size() != tau.size())
      throw PreconditionError("family JSON: mismatched arrays");
    std::vector<std::complex<double>> xi(tau.size());
    for (size_t i = 0; i < tau.size(); ++i) xi[i] = {re[i], im[i]};
    m.path = contour::ComplexPath::from_samples(std::move(tau), std::move(xi));
    fam.members.push_back(std::move(m));
  }
  fam.validate();
  return fam;
}

}  // namespace qmflow::transport

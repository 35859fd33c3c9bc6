#include "qmflow/contour.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qmflow/madelung.hpp"

namespace qmflow::contour {

namespace {

constexpr double kMinModulus = 1e-300;
constexpr int kMaxRefineRounds = 48;
constexpr size_t kMaxSamples = 1 << 22;

double principal_turn(std::complex<double> from, std::complex<double> to) {
  return std::arg(to / from);
}

}  // namespace

bool ComplexPath::closed(double tol) const {
  if (xi.size() < 2) return false;
  const double scale = std::max(std::abs(xi.front()), std::abs(xi.back()));
  return std::abs(xi.front() - xi.back()) <= tol * std::max(scale, 1.0);
}

void ComplexPath::validate() const {
  if (tau.size() != xi.size() || xi.size() < 2)
    throw PreconditionError("path: need matching tau/xi samples (>= 2)");
  for (size_t i = 1; i < tau.size(); ++i)
    if (!(tau[i] > tau[i - 1])) throw PreconditionError("path: tau must increase");
  for (const auto& z : xi)
    if (!(std::abs(z) > kMinModulus))
      throw PreconditionError("path: sample at or too close to the origin");
}

ComplexPath ComplexPath::from_samples(std::vector<double> tau,
                                      std::vector<std::complex<double>> xi) {
  ComplexPath p;
  p.tau = std::move(tau);
  p.xi = std::move(xi);
  p.validate();
  return p;
}

ComplexPath ComplexPath::from_generator(std::function<std::complex<double>(double)> g,
                                        double tau0, double tau1, int initial_samples) {
  if (initial_samples < 2) throw PreconditionError("path: need >= 2 initial samples");
  ComplexPath p;
  p.gen = g;
  for (int i = 0; i < initial_samples; ++i) {
    const double t = tau0 + (tau1 - tau0) * i / double(initial_samples - 1);
    p.tau.push_back(t);
    p.xi.push_back(g(t));
  }
  p.validate();
  return p;
}

ComplexPath circle(double radius, int turns, int samples, std::complex<double> center) {
  if (!(radius > 0.0)) throw PreconditionError("circle path: radius must be positive");
  if (turns == 0) throw PreconditionError("circle path: turns must be nonzero");
  // The parameter always increases; the orientation sign lives in the angle.
  const double sign = turns > 0 ? 1.0 : -1.0;
  const double span = 2.0 * M_PI * std::abs(turns);
  auto gen = [radius, center, sign](double t) { return center + std::polar(radius, sign * t); };
  return ComplexPath::from_generator(gen, 0.0, span,
                                     std::max(samples, 8 * std::abs(turns) + 1));
}

ComplexPath log_segment(std::complex<double> a, std::complex<double> b, int extra_winding,
                        int samples) {
  if (!(std::abs(a) > kMinModulus) || !(std::abs(b) > kMinModulus))
    throw PreconditionError("log segment: endpoints must be nonzero");
  const std::complex<double> la = std::log(a);
  const std::complex<double> lb = std::log(b);
  const std::complex<double> extra{0.0, 2.0 * M_PI * extra_winding};
  auto gen = [la, lb, extra](double s) { return std::exp(la + s * (lb - la + extra)); };
  return ComplexPath::from_generator(gen, 0.0, 1.0,
                                     std::max(samples, 16 * (std::abs(extra_winding) + 1)));
}

ComplexPath unit_square_loop() {
  std::vector<std::complex<double>> xi = {
      {1.0, 1.0}, {-1.0, 1.0}, {-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}};
  std::vector<double> tau = {0.0, 1.0, 2.0, 3.0, 4.0};
  return ComplexPath::from_samples(std::move(tau), std::move(xi));
}

RefinedPath refine_and_unwrap(const ComplexPath& input) {
  input.validate();
  std::vector<double> tau = input.tau;
  std::vector<std::complex<double>> xi = input.xi;

  for (int round = 0; round < kMaxRefineRounds; ++round) {
    bool any_split = false;
    std::vector<double> ntau;
    std::vector<std::complex<double>> nxi;
    ntau.reserve(tau.size() * 2);
    nxi.reserve(xi.size() * 2);
    for (size_t i = 0; i + 1 < xi.size(); ++i) {
      ntau.push_back(tau[i]);
      nxi.push_back(xi[i]);
      if (std::abs(principal_turn(xi[i], xi[i + 1])) >= kMaxTurn) {
        const double tm = 0.5 * (tau[i] + tau[i + 1]);
        const std::complex<double> zm =
            input.gen ? input.gen(tm) : 0.5 * (xi[i] + xi[i + 1]);
        if (!(std::abs(zm) > kMinModulus))
          throw NearPoleError("refinement produced a sample at the origin");
        ntau.push_back(tm);
        nxi.push_back(zm);
        any_split = true;
      }
    }
    ntau.push_back(tau.back());
    nxi.push_back(xi.back());
    tau.swap(ntau);
    xi.swap(nxi);
    if (!any_split) break;
    if (xi.size() > kMaxSamples)
      throw NearPoleError("refinement budget exhausted; path passes too close to the origin");
    if (round == kMaxRefineRounds - 1)
      throw NearPoleError("refinement depth exhausted; path passes too close to the origin");
  }

  RefinedPath out;
  out.unwrapped.resize(xi.size());
  out.unwrapped[0] = std::arg(xi[0]);
  for (size_t i = 1; i < xi.size(); ++i)
    out.unwrapped[i] = out.unwrapped[i - 1] + principal_turn(xi[i - 1], xi[i]);
  out.total_turn = out.unwrapped.back() - out.unwrapped.front();
  out.path.tau = std::move(tau);
  out.path.xi = std::move(xi);
  out.path.gen = input.gen;
  return out;
}

int winding_number(const ComplexPath& loop) {
  if (!loop.closed())
    throw EndpointMismatchError("winding number: path is not closed");
  const RefinedPath r = refine_and_unwrap(loop);
  const double turns = r.total_turn / (2.0 * M_PI);
  const double nearest = std::round(turns);
  if (std::abs(turns - nearest) > 1e-6) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "winding residue %.3e exceeds 1e-6", turns - nearest);
    throw UnresolvedWindingError(buf);
  }
  return int(nearest);
}

std::complex<double> log_integral(const ComplexPath& path) {
  const RefinedPath r = refine_and_unwrap(path);
  // Per segment the integral of d(xi)/xi is exactly the principal log of the
  // ratio once the turn is below pi/4; summing gives the unwrapped total.
  const double re = std::log(std::abs(r.path.xi.back() / r.path.xi.front()));
  return {re, r.total_turn};
}

TransitionLog transition_log(std::complex<double> psi1, std::complex<double> psi2,
                             const ComplexPath& path) {
  path.validate();
  const double scale = std::max({std::abs(psi1), std::abs(psi2), 1e-300});
  if (std::abs(path.xi.front() - psi1) > 1e-12 * scale ||
      std::abs(path.xi.back() - psi2) > 1e-12 * scale)
    throw EndpointMismatchError("transition log: path endpoints do not match psi1/psi2");
  TransitionLog out;
  out.Z = log_integral(path);
  out.S12 = 2.0 * out.Z.real();
  out.Phi12 = 2.0 * out.Z.imag();
  return out;
}

ActionDecomposition complex_action_decompose(const WaveModel& model,
                                             const FlowTrajectory& traj,
                                             const PhysicalConstants& c) {
  traj.validate();
  const size_t n = traj.t.size();
  if (n < 3) throw PreconditionError("action decomposition: need at least 3 samples");

  std::vector<double> q(n), lag(n);
  std::vector<std::complex<double>> xi(n);
  for (size_t i = 0; i < n; ++i) {
    const Point3& p = traj.r[i];
    const double t = traj.t[i];
    q[i] = madelung::velocity_divergence(model, p, t, c);
    lag[i] = madelung::lagrangian(model, p, t, c);
    xi[i] = model.psi(p, t, c);
  }

  // Simpson on parabola triples (same scheme as the action-phase check).
  auto integrate_samples = [&](const std::vector<double>& g) {
    double acc = 0.0;
    for (size_t i = 0; i + 1 < n; ++i) {
      const size_t a = i == 0 ? 0 : i - 1;
      const size_t b = a + 1, d = a + 2;
      auto F = [&](size_t j, size_t p1, size_t p2, double x) {
        const double c1 = traj.t[p1] + traj.t[p2];
        return g[j] * (x * x * x / 3.0 - c1 * x * x / 2.0 + traj.t[p1] * traj.t[p2] * x) /
               ((traj.t[j] - traj.t[p1]) * (traj.t[j] - traj.t[p2]));
      };
      auto seg = [&](double x) { return F(a, b, d, x) + F(b, a, d, x) + F(d, a, b, x); };
      acc += seg(traj.t[i + 1]) - seg(traj.t[i]);
    }
    return acc;
  };

  ActionDecomposition out;
  out.q_integral = integrate_samples(q);
  out.action_integral = integrate_samples(lag);
  out.Z = {-0.5 * out.q_integral, out.action_integral / c.hbar};

  const ComplexPath wave_path = ComplexPath::from_samples(traj.t, xi);
  out.endpoint_Z = log_integral(wave_path);

  std::complex<double> diff = out.Z - out.endpoint_Z;
  diff.imag(diff.imag() - 2.0 * M_PI * std::round(diff.imag() / (2.0 * M_PI)));
  out.cross_residual = std::abs(diff);
  return out;
}

std::vector<double> lagrangian_on_path(const WaveModel& model, const FlowTrajectory& traj,
                                       const PhysicalConstants& c) {
  traj.validate();
  std::vector<double> out(traj.t.size());
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = madelung::lagrangian(model, traj.r[i], traj.t[i], c);
  return out;
}

double mirror_identity_residual(std::complex<double> psi) {
  if (!(std::abs(psi) > kMinModulus))
    throw PreconditionError("mirror identity: psi must be nonzero");
  const std::complex<double> lhs = 0.5 * log_integral(log_segment(1.0 / psi, psi));
  const std::complex<double> rhs = log_integral(log_segment({1.0, 0.0}, psi));
  return std::abs(lhs - rhs);
}

void write_csv(const ComplexPath& path, const std::string& filename) {
  std::ofstream out(filename);
  if (!out) throw PreconditionError("cannot open for writing: " + filename);
  out << "tau,re,im\n";
  char buf[128];
  for (size_t i = 0; i < path.tau.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.15e,%.15e,%.15e\n", path.tau[i], path.xi[i].real(),
                  path.xi[i].imag());
    out << buf;
  }
}

ComplexPath read_csv(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw PreconditionError("cannot open for reading: " + filename);
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> tau;
  std::vector<std::complex<double>> xi;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    double vals[3];
    for (int i = 0; i < 3; ++i) {
      if (!std::getline(row, cell, ',')) throw PreconditionError("malformed path CSV row");
      vals[i] = std::strtod(cell.c_str(), nullptr);
    }
    tau.push_back(vals[0]);
    xi.emplace_back(vals[1], vals[2]);
  }
  return ComplexPath::from_samples(std::move(tau), std::move(xi));
}

}  // namespace qmflow::contour

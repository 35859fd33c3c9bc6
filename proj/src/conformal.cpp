#include "qmflow/conformal.hpp"

#include <cmath>
#include <vector>

namespace qmflow::conformal {

void StripDomain::validate() const {
  if (std::isnan(s_min) || std::isnan(s_max) || !std::isfinite(phi_min) ||
      !std::isfinite(phi_max))
    throw PreconditionError("strip: phi bounds must be finite, s bounds non-NaN");
  if (!(s_min < s_max) || !(phi_min < phi_max))
    throw PreconditionError("strip: bounds must be ordered with nonzero extent");
}

std::complex<double> forward_map(std::complex<double> M) { return std::exp(0.5 * M); }

double jacobian(std::complex<double> M) { return std::exp(M.real()) / 4.0; }

double jacobian_fd(std::complex<double> M, double h, int order) {
  if (!(h > 0.0)) throw PreconditionError("jacobian_fd: step must be positive");
  if (order != 2 && order != 4) throw PreconditionError("jacobian_fd: order must be 2 or 4");
  auto d = [&](std::complex<double> dir) {
    if (order == 2) return (forward_map(M + h * dir) - forward_map(M - h * dir)) / (2.0 * h);
    return (-forward_map(M + 2.0 * h * dir) + 8.0 * forward_map(M + h * dir) -
            8.0 * forward_map(M - h * dir) + forward_map(M - 2.0 * h * dir)) /
           (12.0 * h);
  };
  const std::complex<double> dS = d({1.0, 0.0});   // d(u,v)/dS
  const std::complex<double> dP = d({0.0, 1.0});   // d(u,v)/dPhi
  return dS.real() * dP.imag() - dS.imag() * dP.real();
}

UnivalenceReport univalence_check(const StripDomain& strip, int lattice_s, int lattice_phi) {
  strip.validate();
  UnivalenceReport rep;
  const double width = strip.phi_width();
  rep.univalent = width <= 4.0 * M_PI;

  if (!rep.univalent) {
    // Construct the collision: two points one full period 4 pi apart in Phi.
    const double s_lo = std::isinf(strip.s_min) ? strip.s_max - 1.0 : strip.s_min;
    const double s_mid = 0.5 * (s_lo + strip.s_max);
    const double phi0 = strip.phi_min + 0.5 * (width - 4.0 * M_PI);
    rep.witness = {{std::complex<double>(s_mid, phi0),
                    std::complex<double>(s_mid, phi0 + 4.0 * M_PI)}};
    return rep;
  }

  // Claimed injective: scan a lattice for image collisions. The phi edge is
  // half-open so a width of exactly 4 pi does not alias its own boundary; the
  // s range is clamped so image points cannot crowd the origin spuriously.
  const double s_lo = std::max(std::isinf(strip.s_min) ? strip.s_max - 20.0 : strip.s_min,
                               strip.s_max - 20.0);
  std::vector<std::complex<double>> image;
  std::vector<std::complex<double>> arg;
  image.reserve(size_t(lattice_s) * lattice_phi);
  for (int i = 0; i < lattice_s; ++i) {
    const double s = lattice_s == 1 ? s_lo
                                    : s_lo + (strip.s_max - s_lo) * i / double(lattice_s - 1);
    for (int j = 0; j < lattice_phi; ++j) {
      const double phi = strip.phi_min + width * j / double(lattice_phi);
      arg.emplace_back(s, phi);
      image.push_back(forward_map({s, phi}));
    }
  }
  for (size_t a = 0; a < image.size(); ++a)
    for (size_t b = a + 1; b < image.size(); ++b)
      if (std::abs(image[a] - image[b]) < 1e-12) {
        rep.univalent = false;
        rep.witness = {{arg[a], arg[b]}};
        return rep;
      }
  return rep;
}

double area_integral(const StripDomain& strip, const num::QuadConfig& cfg) {
  strip.validate();
  if (std::isinf(strip.s_max) && strip.s_max > 0.0)
    throw DivergentDomainError("area integral: s_max = +infinity diverges");
  if (!(strip.phi_width() > 0.0) || !(strip.s_max > strip.s_min)) return 0.0;

  // Substitute w = exp(S): the integrand exp(S)/4 dS dPhi becomes dw dPhi / 4
  // and the improper lower end folds to w = 0.
  const double w_lo = std::isinf(strip.s_min) ? 0.0 : std::exp(strip.s_min);
  const double w_hi = std::exp(strip.s_max);
  auto over_w = [&](double) {
    return num::integrate([](double) { return 0.25; }, strip.phi_min, strip.phi_max, cfg);
  };
  return num::integrate(over_w, w_lo, w_hi, cfg);
}

double jacobian_continuity_residual(const WaveModel& model, const Point3& p, double t,
                                    const PhysicalConstants& c, const num::FdConfig& cfg) {
  // J = f/4 shares the continuity equation with f; the quarter scales out of
  // the residual normalization exactly, but compute it explicitly anyway.
  model.check_point(p, c);
  const double J = model.density(p, t, c) / 4.0;
  const Vec3 v = model.velocity(p, t, c);
  double dJdt, JQ;
  Vec3 gradJ;
  if (model.use_analytic_derivatives) {
    dJdt = model.ddt_density(p, t, c) / 4.0;
    gradJ = model.grad_density(p, t, c) / 4.0;
    JQ = J * model.velocity_divergence(p, t, c);
  } else {
    num::FdConfig fd = cfg;
    fd.characteristic_length = model.characteristic_length(c);
    dJdt = num::fd_time_derivative(
        [&](double s) { return model.density(p, s, c) / 4.0; }, t, fd);
    gradJ = num::fd_gradient(
        [&](const Point3& q) { return model.density(q, t, c) / 4.0; }, p, fd);
    JQ = J * num::fd_divergence([&](const Point3& q) { return model.velocity(q, t, c); }, p, fd);
  }
  const double defect = dJdt + dot(gradJ, v) + JQ;
  const double scale = std::abs(dJdt) + norm(gradJ) * norm(v) + std::abs(JQ);
  return scale > 0.0 ? std::abs(defect) / scale : 0.0;
}

}  // namespace qmflow::conformal

#include "qmflow/wave_model.hpp"

#include <cmath>
#include <cstdio>

namespace qmflow {

namespace {

constexpr double kPoleFraction = 1e-6;  // exclusion radius as fraction of char. length

// Gaussian packet helper: a(t) = 1 + i hbar t / (2 m sigma^2).
std::complex<double> gaussian_a(double t, double sigma, const PhysicalConstants& c) {
  return {1.0, c.hbar * t / (2.0 * c.mass * sigma * sigma)};
}

}  // namespace

WaveModel WaveModel::central_field(double nu, double kappa, int k, double E) {
  WaveModel m;
  m.kind = WaveKind::CentralField;
  m.nu = nu;
  m.kappa = kappa;
  m.k = k;
  m.E = E;
  m.validate();
  return m;
}

WaveModel WaveModel::dirac_string(double nu, double kappa, int k, double E) {
  WaveModel m = central_field(nu, kappa, k, E);
  m.kind = WaveKind::DiracString;
  return m;
}

WaveModel WaveModel::plane_wave(const Vec3& p, double E) {
  WaveModel m;
  m.kind = WaveKind::PlaneWave;
  m.momentum = p;
  m.E = E;
  return m;
}

WaveModel WaveModel::free_gaussian(double sigma) {
  WaveModel m;
  m.kind = WaveKind::FreeGaussian;
  m.sigma = sigma;
  m.validate();
  return m;
}

void WaveModel::validate() const {
  switch (kind) {
    case WaveKind::CentralField:
    case WaveKind::DiracString:
      if (!(nu >= 0.0)) throw PreconditionError("wave model: nu must be >= 0");
      if (!(kappa > 0.0)) throw PreconditionError("wave model: kappa must be > 0");
      break;
    case WaveKind::FreeGaussian:
      if (!(sigma > 0.0)) throw PreconditionError("wave model: sigma must be > 0");
      break;
    case WaveKind::PlaneWave:
      break;
  }
}

double WaveModel::characteristic_length(const PhysicalConstants& c) const {
  switch (kind) {
    case WaveKind::CentralField:
    case WaveKind::DiracString:
      return 1.0 / kappa;
    case WaveKind::FreeGaussian:
      return sigma;
    case WaveKind::PlaneWave: {
      const double p = norm(momentum);
      return p > 0.0 ? c.hbar / p : 1.0;
    }
  }
  return 1.0;
}

double WaveModel::pole_exclusion(const PhysicalConstants& c) const {
  if (kind == WaveKind::CentralField || kind == WaveKind::DiracString)
    return kPoleFraction * characteristic_length(c);
  return 0.0;
}

bool WaveModel::is_normalized() const { return kind != WaveKind::PlaneWave; }

double WaveModel::normalization() const {
  if (kind == WaveKind::CentralField || kind == WaveKind::DiracString) {
    // integral of C r^(2 nu) exp(-2 kappa r) over space:
    //   C * 4 pi * Gamma(2 nu + 3) / (2 kappa)^(2 nu + 3) = 1
    return std::pow(2.0 * kappa, 2.0 * nu + 3.0) / (4.0 * M_PI * std::tgamma(2.0 * nu + 3.0));
  }
  return 1.0;
}

void WaveModel::check_point(const Point3& p, const PhysicalConstants& c) const {
  const double excl = pole_exclusion(c);
  if (excl > 0.0 && cyl_radius(p) < excl) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "point within %.3e of the OZ axis singularity", excl);
    throw PoleError(buf);
  }
  const double f = density(p, 0.0, c);
  if (!(f > 0.0) || !std::isfinite(std::log(f)))
    throw NodalPointError("density vanishes at the requested point; log-density undefined");
}

std::complex<double> WaveModel::psi(const Point3& p, double t, const PhysicalConstants& c) const {
  switch (kind) {
    case WaveKind::CentralField:
    case WaveKind::DiracString: {
      const double r = norm(p);
      const double amp = std::sqrt(normalization()) * std::pow(r, nu) * std::exp(-kappa * r);
      return std::polar(amp, phase(p, t, c));
    }
    case WaveKind::PlaneWave:
      return std::polar(1.0, phase(p, t, c));
    case WaveKind::FreeGaussian: {
      const std::complex<double> a = gaussian_a(t, sigma, c);
      const double r2 = dot(p, p);
      const double norm0 = std::pow(2.0 * M_PI * sigma * sigma, -0.75);
      return norm0 * std::pow(a, -1.5) * std::exp(-r2 / (4.0 * sigma * sigma * a));
    }
  }
  return {};
}

std::complex<double> WaveModel::ddt_psi(const Point3& p, double t,
                                        const PhysicalConstants& c) const {
  switch (kind) {
    case WaveKind::CentralField:
    case WaveKind::DiracString:
    case WaveKind::PlaneWave:
      return std::complex<double>(0.0, -E / c.hbar) * psi(p, t, c);
    case WaveKind::FreeGaussian: {
      const std::complex<double> a = gaussian_a(t, sigma, c);
      const std::complex<double> da{0.0, c.hbar / (2.0 * c.mass * sigma * sigma)};
      const double r2 = dot(p, p);
      return psi(p, t, c) * da * (-1.5 / a + r2 / (4.0 * sigma * sigma * a * a));
    }
  }
  return {};
}

std::complex<double> WaveModel::laplacian_psi(const Point3& p, double t,
                                              const PhysicalConstants& c) const {
  switch (kind) {
    case WaveKind::CentralField: {
      const double r = norm(p);
      const double rho2 = p.x * p.x + p.y * p.y;
      const double radial = nu * (nu + 1.0) / (r * r) - 2.0 * kappa * (nu + 1.0) / r +
                            kappa * kappa;
      return psi(p, t, c) * (radial - double(k) * double(k) / rho2);
    }
    case WaveKind::DiracString: {
      const double r = norm(p);
      const double radial = nu * (nu + 1.0) / (r * r) - 2.0 * kappa * (nu + 1.0) / r +
                            kappa * kappa;
      return psi(p, t, c) * radial;
    }
    case WaveKind::PlaneWave:
      return psi(p, t, c) * (-dot(momentum, momentum) / (c.hbar * c.hbar));
    case WaveKind::FreeGaussian: {
      const std::complex<double> a = gaussian_a(t, sigma, c);
      const double r2 = dot(p, p);
      const double s2 = sigma * sigma;
      return psi(p, t, c) * (r2 / (4.0 * s2 * s2 * a * a) - 3.0 / (2.0 * s2 * a));
    }
  }
  return {};
}

double WaveModel::density(const Point3& p, double t, const PhysicalConstants& c) const {
  switch (kind) {
    case WaveKind::CentralField:
    case WaveKind::DiracString: {
      const double r = norm(p);
      return normalization() * std::pow(r, 2.0 * nu) * std::exp(-2.0 * kappa * r);
    }
    case WaveKind::PlaneWave:
      return 1.0;
    case WaveKind::FreeGaussian: {
      const double tau = c.hbar * t / (2.0 * c.mass * sigma * sigma);
      const double spread = 1.0 + tau * tau;
      const double r2 = dot(p, p);
      return std::pow(2.0 * M_PI * sigma * sigma * spread, -1.5) *
             std::exp(-r2 / (2.0 * sigma * sigma * spread));
    }
  }
  return 0.0;
}

Vec3 WaveModel::grad_density(const Point3& p, double t, const PhysicalConstants& c) const {
  switch (kind) {
    case WaveKind::CentralField:
    case WaveKind::DiracString: {
      const double r = norm(p);
      return density(p, t, c) * (2.0 * nu / r - 2.0 * kappa) * (p / r);
    }
    case WaveKind::PlaneWave:
      return {};
    case WaveKind::FreeGaussian: {
      const double tau = c.hbar * t / (2.0 * c.mass * sigma * sigma);
      const double spread = 1.0 + tau * tau;
      return density(p, t, c) * (-1.0 / (sigma * sigma * spread)) * p;
    }
  }
  return {};
}

double WaveModel::ddt_density(const Point3& p, double t, const PhysicalConstants& c) const {
  switch (kind) {
    case WaveKind::CentralField:
    case WaveKind::DiracString:
    case WaveKind::PlaneWave:
      return 0.0;
    case WaveKind::FreeGaussian: {
      const double dtau = c.hbar / (2.0 * c.mass * sigma * sigma);
      const double tau = dtau * t;
      const double spread = 1.0 + tau * tau;
      const double r2 = dot(p, p);
      const double dspread = 2.0 * tau * dtau;
      return density(p, t, c) *
             (-1.5 * dspread / spread + r2 * dspread / (2.0 * sigma * sigma * spread * spread));
    }
  }
  return 0.0;
}

double WaveModel::lap_amp_over_amp(const Point3& p, double t, const PhysicalConstants& c) const {
  switch (kind) {
    case WaveKind::CentralField:
    case WaveKind::DiracString: {
      const double r = norm(p);
      return nu * (nu + 1.0) / (r * r) - 2.0 * kappa * (nu + 1.0) / r + kappa * kappa;
    }
    case WaveKind::PlaneWave:
      return 0.0;
    case WaveKind::FreeGaussian: {
      const double tau = c.hbar * t / (2.0 * c.mass * sigma * sigma);
      const double spread = 1.0 + tau * tau;
      const double s2eff = sigma * sigma * spread;
      const double r2 = dot(p, p);
      // |Psi| is Gaussian with effective variance sigma^2 * spread.
      return r2 / (4.0 * s2eff * s2eff) - 1.5 / s2eff;
    }
  }
  return 0.0;
}

double WaveModel::phase(const Point3& p, double t, const PhysicalConstants& c) const {
  switch (kind) {
    case WaveKind::CentralField:
      return double(k) * azimuth(p) - E * t / c.hbar;
    case WaveKind::DiracString:
      return -E * t / c.hbar;
    case WaveKind::PlaneWave:
      return (dot(momentum, p) - E * t) / c.hbar;
    case WaveKind::FreeGaussian: {
      const std::complex<double> a = gaussian_a(t, sigma, c);
      const double r2 = dot(p, p);
      return std::arg(std::pow(a, -1.5)) + r2 / (4.0 * sigma * sigma) * (std::imag(a) / std::norm(a));
    }
  }
  return 0.0;
}

double WaveModel::ddt_phase(const Point3& p, double t, const PhysicalConstants& c) const {
  switch (kind) {
    case WaveKind::CentralField:
    case WaveKind::DiracString:
    case WaveKind::PlaneWave:
      return -E / c.hbar;
    case WaveKind::FreeGaussian: {
      const double dtau = c.hbar / (2.0 * c.mass * sigma * sigma);
      const double tau = dtau * t;
      const double spread = 1.0 + tau * tau;
      const double r2 = dot(p, p);
      // phase = -(3/2) atan(tau) + r^2 tau / (4 sigma^2 (1 + tau^2))
      return -1.5 * dtau / spread +
             r2 * dtau * (1.0 - tau * tau) / (4.0 * sigma * sigma * spread * spread);
    }
  }
  return 0.0;
}

Vec3 WaveModel::grad_phase(const Point3& p, double t, const PhysicalConstants& c) const {
  switch (kind) {
    case WaveKind::CentralField: {
      const double rho = cyl_radius(p);
      return double(k) / rho * unit_e_phi(p);
    }
    case WaveKind::DiracString:
      return {};
    case WaveKind::PlaneWave:
      return momentum / c.hbar;
    case WaveKind::FreeGaussian: {
      const double tau = c.hbar * t / (2.0 * c.mass * sigma * sigma);
      const double spread = 1.0 + tau * tau;
      return tau / (2.0 * sigma * sigma * spread) * p;
    }
  }
  return {};
}

Vec3 WaveModel::vector_potential(const Point3& p, double t, const PhysicalConstants& c) const {
  (void)t;
  if (kind != WaveKind::DiracString) return {};
  const double rho = cyl_radius(p);
  return -c.hbar * double(k) / (c.charge * rho) * unit_e_phi(p);
}

Vec3 WaveModel::velocity(const Point3& p, double t, const PhysicalConstants& c) const {
  switch (kind) {
    case WaveKind::CentralField:
    case WaveKind::DiracString: {
      // Both carry the same observed vortex flow around the axis.
      const double rho = cyl_radius(p);
      return c.hbar * double(k) / (c.mass * rho) * unit_e_phi(p);
    }
    case WaveKind::PlaneWave:
      return momentum / c.mass;
    case WaveKind::FreeGaussian:
      return (c.hbar / c.mass) * grad_phase(p, t, c);
  }
  return {};
}

Vec3 WaveModel::velocity_potential_part(const Point3& p, double t,
                                        const PhysicalConstants& c) const {
  return (c.hbar / c.mass) * grad_phase(p, t, c);
}

Vec3 WaveModel::velocity_solenoidal_part(const Point3& p, double t,
                                         const PhysicalConstants& c) const {
  return c.gamma() * vector_potential(p, t, c);
}

double WaveModel::velocity_divergence(const Point3& p, double t,
                                      const PhysicalConstants& c) const {
  (void)p;
  switch (kind) {
    case WaveKind::CentralField:
    case WaveKind::DiracString:
    case WaveKind::PlaneWave:
      return 0.0;
    case WaveKind::FreeGaussian: {
      const double tau = c.hbar * t / (2.0 * c.mass * sigma * sigma);
      const double spread = 1.0 + tau * tau;
      return 3.0 * c.hbar * tau / (2.0 * c.mass * sigma * sigma * spread);
    }
  }
  return 0.0;
}

}  // namespace qmflow

#include "doctest.h"

#include <cmath>
#include <complex>

#include "qmflow/numerics.hpp"
#include "qmflow/wave_model.hpp"

using namespace qmflow;

namespace {

const PhysicalConstants kNat = PhysicalConstants::natural();

num::FdConfig tight_fd() {
  num::FdConfig cfg;
  cfg.step = 1e-4;
  cfg.order = 4;
  return cfg;
}

// Cut-free phase gradient oracle: differentiate arg(psi(q) conj(psi(p))),
// which vanishes at q = p, so no stencil point can straddle the azimuth seam.
Vec3 fd_phase_gradient(const WaveModel& m, const Point3& p, double t) {
  const std::complex<double> ref = std::conj(m.psi(p, t, kNat));
  return num::fd_gradient(
      [&](const Point3& q) { return std::arg(m.psi(q, t, kNat) * ref); }, p, tight_fd());
}

}  // namespace

TEST_CASE("model validation rejects unusable parameters") {
  CHECK_THROWS_AS(WaveModel::central_field(1.0, 0.0, 1, -0.5), PreconditionError);
  CHECK_THROWS_AS(WaveModel::central_field(-0.5, 1.0, 1, -0.5), PreconditionError);
  CHECK_THROWS_AS(WaveModel::free_gaussian(0.0), PreconditionError);
}

TEST_CASE("density equals the squared magnitude of the wave") {
  const auto models = {WaveModel::central_field(1.3, 0.8, 2, -0.32),
                       WaveModel::dirac_string(0.5, 1.4, -1, -0.98),
                       WaveModel::plane_wave({0.3, -0.2, 0.5}, 0.19),
                       WaveModel::free_gaussian(0.7)};
  const Point3 p{0.8, -0.6, 0.4};
  for (const auto& m : models) {
    const double f = m.density(p, 0.37, kNat);
    CHECK(f == doctest::Approx(std::norm(m.psi(p, 0.37, kNat))).epsilon(1e-13));
  }
}

TEST_CASE("normalization constant makes the density integrate to one") {
  for (const auto& m : {WaveModel::central_field(1.0, 1.0, 1, -0.5),
                        WaveModel::central_field(0.5, 2.3, 1, -0.5),
                        WaveModel::central_field(2.0, 0.7, 3, -0.5)}) {
    // Radial quadrature of 4 pi C r^(2 nu + 2) exp(-2 kappa r) done here, not
    // through the closed form the library uses.
    const double C = m.normalization();
    const num::QuadConfig cfg{num::QuadRule::GaussLegendre, 64, 10};
    const double upper = 40.0 / m.kappa;
    const double total = num::integrate(
        [&](double r) {
          return 4.0 * M_PI * C * std::pow(r, 2.0 * m.nu + 2.0) * std::exp(-2.0 * m.kappa * r);
        },
        1e-12, upper, cfg);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK(WaveModel::plane_wave({1.0, 0.0, 0.0}, 0.5).is_normalized() == false);
}

TEST_CASE("analytic spatial derivatives agree with finite differences") {
  const auto models = {WaveModel::central_field(1.2, 0.9, 2, -0.405),
                       WaveModel::dirac_string(0.8, 1.1, -2, -0.605),
                       WaveModel::plane_wave({0.4, 0.1, -0.3}, 0.13),
                       WaveModel::free_gaussian(0.9)};
  const Point3 pts[] = {{0.8, -0.6, 0.4}, {-1.1, 0.5, -0.2}, {0.3, 1.4, 0.9}};
  const double t = 0.21;
  for (const auto& m : models) {
    for (const auto& p : pts) {
      const Vec3 gf = m.grad_density(p, t, kNat);
      const Vec3 gf_fd = num::fd_gradient(
          [&](const Point3& q) { return m.density(q, t, kNat); }, p, tight_fd());
      CHECK(norm(gf - gf_fd) < 1e-9 * (1.0 + norm(gf)));

      const Vec3 gp = m.grad_phase(p, t, kNat);
      CHECK(norm(gp - fd_phase_gradient(m, p, t)) < 1e-9 * (1.0 + norm(gp)));
    }
  }
}

TEST_CASE("analytic time derivatives agree with finite differences") {
  const auto models = {WaveModel::central_field(1.0, 1.0, 1, -0.5),
                       WaveModel::free_gaussian(0.8)};
  const Point3 p{0.7, 0.4, -0.3};
  num::FdConfig cfg = tight_fd();
  for (const auto& m : models) {
    const auto dd = m.ddt_psi(p, 0.4, kNat);
    const double re = num::fd_time_derivative(
        [&](double s) { return m.psi(p, s, kNat).real(); }, 0.4, cfg);
    const double im = num::fd_time_derivative(
        [&](double s) { return m.psi(p, s, kNat).imag(); }, 0.4, cfg);
    CHECK(std::abs(dd - std::complex<double>(re, im)) < 1e-9 * (1.0 + std::abs(dd)));

    const double dfdt = m.ddt_density(p, 0.4, kNat);
    const double dfdt_fd = num::fd_time_derivative(
        [&](double s) { return m.density(p, s, kNat); }, 0.4, cfg);
    CHECK(std::abs(dfdt - dfdt_fd) < 1e-9 * (1.0 + std::abs(dfdt)));
  }
}

TEST_CASE("laplacian of the wave matches component-wise finite differences") {
  const auto models = {WaveModel::central_field(1.5, 0.6, 1, -0.18),
                       WaveModel::dirac_string(1.0, 1.0, 2, -0.5),
                       WaveModel::free_gaussian(1.1)};
  const Point3 p{-0.9, 0.5, 0.6};
  const double t = 0.15;
  for (const auto& m : models) {
    const auto lap = m.laplacian_psi(p, t, kNat);
    const double re = num::fd_laplacian(
        [&](const Point3& q) { return m.psi(q, t, kNat).real(); }, p, tight_fd());
    const double im = num::fd_laplacian(
        [&](const Point3& q) { return m.psi(q, t, kNat).imag(); }, p, tight_fd());
    CHECK(std::abs(lap - std::complex<double>(re, im)) < 1e-6 * (1.0 + std::abs(lap)));
  }
}

TEST_CASE("amplitude laplacian ratio matches finite differences of the magnitude") {
  const auto m = WaveModel::central_field(1.4, 0.8, 1, -0.32);
  const Point3 p{0.6, -1.0, 0.8};
  const double got = m.lap_amp_over_amp(p, 0.0, kNat);
  const double amp = std::abs(m.psi(p, 0.0, kNat));
  const double lap_fd = num::fd_laplacian(
      [&](const Point3& q) { return std::abs(m.psi(q, 0.0, kNat)); }, p, tight_fd());
  CHECK(got == doctest::Approx(lap_fd / amp).epsilon(1e-7));
}

TEST_CASE("vortex velocity is azimuthal with magnitude hbar k over m rho") {
  const auto central = WaveModel::central_field(1.0, 1.0, 3, -0.5);
  const auto dirac = WaveModel::dirac_string(1.0, 1.0, 3, -0.5);
  const Point3 p{0.8, 0.5, -1.2};
  const double rho = cyl_radius(p);
  const Vec3 expect = kNat.hbar * 3.0 / (kNat.mass * rho) * unit_e_phi(p);
  CHECK(norm(central.velocity(p, 0.0, kNat) - expect) < 1e-14);
  CHECK(norm(dirac.velocity(p, 0.0, kNat) - expect) < 1e-14);

  // Same observed flow, opposite bookkeeping: the string model carries it all
  // in the solenoidal part, the plain vortex all in the potential part.
  CHECK(norm(central.velocity_solenoidal_part(p, 0.0, kNat)) == 0.0);
  CHECK(norm(dirac.velocity_potential_part(p, 0.0, kNat)) == 0.0);
  CHECK(norm(central.velocity_potential_part(p, 0.0, kNat) - expect) < 1e-14);
  CHECK(norm(dirac.velocity_solenoidal_part(p, 0.0, kNat) - expect) < 1e-14);
}

TEST_CASE("string vector potential is the frozen closed form") {
  const auto m = WaveModel::dirac_string(1.0, 1.0, 2, -0.5);
  const Point3 p{0.3, -0.4, 2.0};
  const double rho = cyl_radius(p);
  const Vec3 expect = -kNat.hbar * 2.0 / (kNat.charge * rho) * unit_e_phi(p);
  CHECK(norm(m.vector_potential(p, 0.0, kNat) - expect) < 1e-14);
  CHECK(norm(WaveModel::central_field(1.0, 1.0, 2, -0.5).vector_potential(p, 0.0, kNat)) == 0.0);
}

TEST_CASE("gaussian packet velocity divergence matches its closed form") {
  const auto m = WaveModel::free_gaussian(0.8);
  const double t = 0.6;
  const double tau = kNat.hbar * t / (2.0 * kNat.mass * 0.8 * 0.8);
  const double expect = 3.0 * kNat.hbar * tau / (2.0 * kNat.mass * 0.8 * 0.8 * (1.0 + tau * tau));
  const Point3 p{0.5, -0.2, 0.9};
  CHECK(m.velocity_divergence(p, t, kNat) == doctest::Approx(expect).epsilon(1e-13));

  const double div_fd = num::fd_divergence(
      [&](const Point3& q) { return m.velocity(q, t, kNat); }, p, tight_fd());
  CHECK(div_fd == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("points inside the pole exclusion zone are rejected") {
  const auto m = WaveModel::central_field(1.0, 2.0, 1, -2.0);
  const double excl = m.pole_exclusion(kNat);
  CHECK(excl > 0.0);
  CHECK_THROWS_AS(m.check_point({0.3 * excl, 0.0, 1.0}, kNat), PoleError);
  CHECK_NOTHROW(m.check_point({10.0 * excl, 0.0, 1.0}, kNat));
  CHECK(WaveModel::plane_wave({1.0, 0.0, 0.0}, 0.5).pole_exclusion(kNat) == 0.0);
}

TEST_CASE("characteristic length follows the model scale") {
  CHECK(WaveModel::central_field(1.0, 2.5, 1, -0.5).characteristic_length(kNat) ==
        doctest::Approx(0.4));
  CHECK(WaveModel::free_gaussian(0.3).characteristic_length(kNat) == doctest::Approx(0.3));
  const PhysicalConstants si = PhysicalConstants::si();
  CHECK(WaveModel::plane_wave({0.0, 0.0, 1e-24}, 0.5).characteristic_length(si) ==
        doctest::Approx(si.hbar / 1e-24));
}

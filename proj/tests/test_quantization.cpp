#include "doctest.h"

#include <cmath>

#include "qmflow/quantization.hpp"

using namespace qmflow;

namespace {
const PhysicalConstants kNat = PhysicalConstants::natural();
const PhysicalConstants kSi = PhysicalConstants::si();
}  // namespace

TEST_CASE("loop specifications reject degenerate parameters") {
  quant::LoopSpec loop;
  loop.radius = 0.0;
  CHECK_THROWS_AS(loop.validate(), PreconditionError);
  loop.radius = 1.0;
  loop.turns = 0;
  CHECK_THROWS_AS(loop.validate(), DegenerateOrbitError);
  loop.turns = 1;
  loop.theta = 0.0;
  CHECK_THROWS_AS(loop.validate(), PreconditionError);
}

TEST_CASE("angle-gradient circulation counts enclosed turns") {
  for (int turns : {-3, -1, 1, 2}) {
    quant::LoopSpec loop;
    loop.radius = 1.7;
    loop.theta = 1.0;  // any polar angle: only the enclosed axis matters
    loop.turns = turns;
    CHECK(quant::circulation_of_angle_gradient(loop) ==
          doctest::Approx(2.0 * M_PI * turns).epsilon(1e-12));
  }
  CHECK(std::abs(quant::circulation_off_axis(0.4, {2.0, 1.0, 0.0}, 1)) < 1e-12);
}

TEST_CASE("momentum circulation recovers the winding integer") {
  const auto m = WaveModel::central_field(1.0, 1.0, 3, -0.5);
  quant::LoopSpec loop;
  loop.radius = 1.2;
  const auto rep = quant::momentum_loop_integral(m, loop, kNat);
  CHECK(rep.total == doctest::Approx(2.0 * M_PI * kNat.hbar * 3.0).epsilon(1e-12));
  CHECK(rep.recovered_k == 3);
  CHECK(rep.residue < 1e-9);
  CHECK(rep.flux_part == 0.0);
  CHECK(rep.phase_part == doctest::Approx(rep.total));
}

TEST_CASE("the string model moves the circulation into the flux part") {
  const auto m = WaveModel::dirac_string(1.0, 1.0, 2, -0.5);
  quant::LoopSpec loop;
  loop.radius = 0.8;
  loop.turns = -1;
  const auto rep = quant::momentum_loop_integral(m, loop, kNat);
  CHECK(rep.total == doctest::Approx(-2.0 * M_PI * kNat.hbar * 2.0).epsilon(1e-11));
  CHECK(rep.recovered_k == -2);
  CHECK(std::abs(rep.phase_part) < 1e-12);
  CHECK(rep.flux_part == doctest::Approx(rep.total));
}

TEST_CASE("one revolution balances loop momentum against action plus energy") {
  const auto m = WaveModel::central_field(1.0, 1.0, 2, -0.5);
  const double rho = 1.4;
  const auto rep = quant::loop_action_decomposition(m, rho, kNat);
  const double expect_T = 2.0 * M_PI * kNat.mass * rho * rho / (kNat.hbar * 2.0);
  CHECK(rep.period == doctest::Approx(expect_T).epsilon(1e-12));
  CHECK(rep.loop_integral == doctest::Approx(4.0 * M_PI * kNat.hbar).epsilon(1e-10));
  CHECK(rep.balance_residual < 1e-8 * std::abs(rep.loop_integral));
  CHECK(rep.recovered_k == 2);

  CHECK_THROWS_AS(
      quant::loop_action_decomposition(WaveModel::central_field(1.0, 1.0, 0, -0.5), rho, kNat),
      DegenerateOrbitError);
}

TEST_CASE("angular momentum points along the axis with magnitude hbar k") {
  const auto m = WaveModel::central_field(1.0, 1.0, -2, -0.5);
  const Vec3 L = quant::angular_momentum(m, {0.7, -0.9, 1.3}, kNat);
  CHECK(std::abs(L.x) < 1e-15);
  CHECK(std::abs(L.y) < 1e-15);
  CHECK(L.z == doctest::Approx(-2.0 * kNat.hbar).epsilon(1e-13));
}

TEST_CASE("orbit radii and energies follow the closed forms") {
  for (int Z : {1, 2, 3}) {
    for (int k : {1, 2, 4}) {
      const auto orbit = quant::bohr_model(Z, k, kSi);
      const double e2 = kSi.charge * kSi.charge;
      const double r_expect = 4.0 * M_PI * kSi.eps0 * kSi.hbar * kSi.hbar * k * k /
                              (Z * e2 * kSi.mass);
      const double E_expect = -Z * Z * e2 * e2 * kSi.mass /
                              (32.0 * M_PI * M_PI * kSi.eps0 * kSi.eps0 * kSi.hbar *
                               kSi.hbar * k * k);
      CHECK(orbit.radius == doctest::Approx(r_expect).epsilon(1e-14));
      CHECK(orbit.energy == doctest::Approx(E_expect).epsilon(1e-14));
      CHECK(std::abs(orbit.fd_radius - orbit.radius) < 1e-6 * orbit.radius);
      CHECK(std::abs(orbit.fd_energy - orbit.energy) < 1e-8 * std::abs(orbit.energy));
      CHECK(orbit.stationarity < 1e-8);
    }
  }
}

TEST_CASE("ground state lands on the reference hydrogen numbers") {
  const auto orbit = quant::bohr_model(1, 1, kSi);
  CHECK(orbit.radius == doctest::Approx(5.29177210903e-11).epsilon(1e-5));
  CHECK(orbit.energy / kElectronVolt == doctest::Approx(-13.605693122994).epsilon(1e-5));
}

TEST_CASE("zero winding has no stationary orbit") {
  CHECK_THROWS_AS(quant::bohr_model(1, 0, kSi), DegenerateOrbitError);
  CHECK_THROWS_AS(quant::orbit_energy_profile(-1.0, 1, 1, kSi), PreconditionError);
}

TEST_CASE("string potential is azimuthal, divergence free, and curl free off axis") {
  const Point3 p{0.6, -1.1, 0.8};
  const auto rep = quant::dirac_vector_potential(p, 2, kNat);
  const double rho = cyl_radius(p);
  const Vec3 expect = -kNat.hbar * 2.0 / (kNat.charge * rho) * unit_e_phi(p);
  CHECK(norm(rep.A - expect) < 1e-14);
  CHECK(std::abs(rep.div_A) * rho / norm(rep.A) < 1e-6);
  CHECK(rep.curl_A_norm * rho / norm(rep.A) < 1e-6);
  CHECK_THROWS_AS(quant::dirac_vector_potential({0.0, 0.0, 1.0}, 2, kNat), PoleError);
}

TEST_CASE("string flux is radius independent and quantizes the charge ratio") {
  quant::LoopSpec loop;
  loop.radius = 0.9;
  for (int k : {-5, -2, 1, 3, 5}) {
    const auto rep = quant::dirac_flux_and_charge(loop, k, kNat);
    const double expect_flux = -2.0 * M_PI * kNat.hbar * k / kNat.charge;
    CHECK(rep.flux == doctest::Approx(expect_flux).epsilon(1e-11));
    CHECK(rep.charge_wb == doctest::Approx(2.0 * M_PI * kNat.hbar * k / kNat.charge));
    CHECK(rep.charge_am == doctest::Approx(rep.charge_wb / kNat.mu0));
    CHECK(rep.ratio_wb == doctest::Approx(double(k)).epsilon(1e-12));
    CHECK(rep.ratio_am == doctest::Approx(double(k)).epsilon(1e-12));
    CHECK(rep.recovered_k == k);
    CHECK(rep.encloses_axis);
  }

  const std::vector<double> radii{0.05, 0.5, 5.0, 50.0};
  CHECK(quant::delta_field_consistency(3, radii, kNat) < 1e-10);
  CHECK(std::abs(quant::dirac_flux_off_axis(0.3, {2.0, 0.0, 0.0}, 3, kNat)) < 1e-12);
}

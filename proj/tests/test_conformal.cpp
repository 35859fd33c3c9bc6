#include "doctest.h"

#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include "qmflow/conformal.hpp"

using namespace qmflow;
using std::complex;

TEST_CASE("the half-map and its jacobian take their closed forms") {
  const complex<double> M{-1.4, 2.3};
  const auto w = conformal::forward_map(M);
  CHECK(std::abs(w - std::exp(M / 2.0)) < 1e-15);
  CHECK(conformal::jacobian(M) == doctest::Approx(std::exp(-1.4) / 4.0).epsilon(1e-14));
}

TEST_CASE("squared magnitude of the image is four times the jacobian") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> s(-8.0, 3.0), phi(0.0, 4.0 * M_PI);
  for (int i = 0; i < 1000; ++i) {
    const complex<double> M{s(gen), phi(gen)};
    const double lhs = std::norm(conformal::forward_map(M));
    const double rhs = 4.0 * conformal::jacobian(M);
    CHECK(std::abs(lhs - rhs) <= 1e-13 * rhs);
  }
}

TEST_CASE("finite-difference jacobian converges to the analytic one") {
  const complex<double> M{0.4, 1.7};
  const double J = conformal::jacobian(M);
  CHECK(conformal::jacobian_fd(M, 1e-4, 4) == doctest::Approx(J).epsilon(1e-11));

  const double e1 = std::abs(conformal::jacobian_fd(M, 2e-2, 2) - J);
  const double e2 = std::abs(conformal::jacobian_fd(M, 1e-2, 2) - J);
  CHECK(std::log2(e1 / e2) > 1.9);
}

TEST_CASE("strip domains are validated before use") {
  conformal::StripDomain bad{1.0, 0.0, 0.0, 2.0 * M_PI};
  CHECK_THROWS_AS(bad.validate(), PreconditionError);
  conformal::StripDomain inf_phi{-1.0, 0.0, 0.0, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(inf_phi.validate(), PreconditionError);
}

TEST_CASE("strips are injective exactly up to the map period") {
  CHECK(conformal::univalence_check({-5.0, 0.0, 0.0, 4.0 * M_PI}).univalent);
  CHECK(conformal::univalence_check({-5.0, 0.0, 1.0, 1.0 + 2.0 * M_PI}).univalent);

  const auto wide = conformal::univalence_check({-5.0, 0.0, 0.0, 4.0 * M_PI + 0.1});
  CHECK(!wide.univalent);
  REQUIRE(wide.witness.has_value());
  const auto [m1, m2] = *wide.witness;
  CHECK(std::abs(m1 - m2) > 1.0);  // genuinely distinct preimages
  CHECK(std::abs(conformal::forward_map(m1) - conformal::forward_map(m2)) < 1e-12);
}

TEST_CASE("image area of a finite strip matches its exact value") {
  // integral of exp(s)/4 over [s1,s2] x [phi1,phi2].
  const conformal::StripDomain strip{-2.0, 0.5, 0.3, 5.1};
  const double expect = (std::exp(0.5) - std::exp(-2.0)) * (5.1 - 0.3) / 4.0;
  CHECK(conformal::area_integral(strip) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("the full one-period strip fills the unit disk") {
  conformal::StripDomain strip;
  strip.s_min = -std::numeric_limits<double>::infinity();
  strip.s_max = 0.0;
  strip.phi_min = 0.0;
  strip.phi_max = 4.0 * M_PI;
  CHECK(conformal::area_integral(strip) == doctest::Approx(M_PI).epsilon(1e-10));

  strip.phi_max = 2.0 * M_PI;  // half the period covers half the disk
  CHECK(conformal::area_integral(strip) == doctest::Approx(M_PI / 2.0).epsilon(1e-10));
}

TEST_CASE("an unbounded upper edge diverges loudly") {
  conformal::StripDomain strip;
  strip.s_min = 0.0;
  strip.s_max = std::numeric_limits<double>::infinity();
  strip.phi_min = 0.0;
  strip.phi_max = 2.0 * M_PI;
  CHECK_THROWS_AS(conformal::area_integral(strip), DivergentDomainError);
}

TEST_CASE("the quarter-density jacobian is transported by the flow") {
  const PhysicalConstants c = PhysicalConstants::natural();
  auto m = WaveModel::central_field(1.0, 1.0, 1, -0.5);
  m.use_analytic_derivatives = false;
  num::FdConfig cfg;
  cfg.step = 1e-3;
  cfg.order = 4;
  for (const Point3& p : {Point3{0.8, -0.5, 0.3}, Point3{-1.1, 0.6, -0.7}}) {
    CHECK(conformal::jacobian_continuity_residual(m, p, 0.2, c, cfg) < 1e-6);
  }
}

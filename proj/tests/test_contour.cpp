#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdio>
#include <random>

#include "qmflow/contour.hpp"
#include "qmflow/transport.hpp"

using namespace qmflow;
using std::complex;

TEST_CASE("path construction enforces ordered parameters and nonzero samples") {
  CHECK_THROWS_AS(contour::ComplexPath::from_samples({0.0, 0.0}, {1.0, 2.0}),
                  PreconditionError);
  CHECK_THROWS_AS(contour::ComplexPath::from_samples({0.0, 1.0}, {1.0, 0.0}),
                  PreconditionError);
  CHECK_THROWS_AS(contour::ComplexPath::from_samples({0.0}, {complex<double>(1.0)}),
                  PreconditionError);
}

TEST_CASE("circles are closed and carry their turn count as winding number") {
  for (int k : {-3, -2, -1, 1, 2, 3}) {
    const auto loop = contour::circle(2.0, k);
    CHECK(loop.closed());
    CHECK(contour::winding_number(loop) == k);
  }
  CHECK(contour::winding_number(contour::unit_square_loop()) == 1);
}

TEST_CASE("refinement brings every angular step under the threshold") {
  const auto refined = contour::refine_and_unwrap(contour::circle(1.0, 2, 9));
  for (size_t i = 1; i < refined.path.xi.size(); ++i) {
    const double turn = std::abs(std::arg(refined.path.xi[i] / refined.path.xi[i - 1]));
    CHECK(turn < contour::kMaxTurn);
  }
  CHECK(refined.total_turn == doctest::Approx(4.0 * M_PI).epsilon(1e-12));
}

TEST_CASE("winding demands a closed loop") {
  const auto open = contour::log_segment(1.0, complex<double>(0.0, 2.0));
  CHECK_THROWS_AS(contour::winding_number(open), EndpointMismatchError);
}

TEST_CASE("chord refinement through the origin fails as NearPoleError") {
  // Straight chord from 1 to -1: every midpoint subdivision collapses to 0.
  const auto bad = contour::ComplexPath::from_samples({0.0, 1.0}, {1.0, -1.0});
  CHECK_THROWS_AS(contour::refine_and_unwrap(bad), NearPoleError);
}

TEST_CASE("closed-loop log integrals are purely imaginary with quantized period") {
  for (int k : {1, 2, 3}) {
    const auto Z = contour::log_integral(contour::circle(1.5, k));
    CHECK(std::abs(Z.real()) < 1e-13);
    CHECK(Z.imag() == doctest::Approx(2.0 * M_PI * k).epsilon(1e-13));
  }
}

TEST_CASE("segment log integrals agree with a brute-force quadrature") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> mag(0.3, 3.0), ang(-3.0, 3.0);
  for (int trial = 0; trial < 32; ++trial) {
    const auto a = std::polar(mag(gen), ang(gen));
    const auto b = std::polar(mag(gen), ang(gen));
    const int w = int(gen() % 5) - 2;

    // Oracle: midpoint sum of d(xi)/xi over a very fine sweep of the same
    // log-line parametrization the segment uses.
    const auto la = std::log(a);
    const auto step = std::log(b) - la + complex<double>(0.0, 2.0 * M_PI * w);
    complex<double> acc = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
      const auto z0 = std::exp(la + step * (double(i) / n));
      const auto z1 = std::exp(la + step * (double(i + 1) / n));
      acc += (z1 - z0) / std::exp(la + step * ((i + 0.5) / n));
    }

    const auto Z = contour::log_integral(contour::log_segment(a, b, w));
    CHECK(std::abs(Z - acc) < 1e-8);
  }
}

TEST_CASE("the winding marker moves the integral by whole turns") {
  const complex<double> a{1.2, 0.4}, b{-0.7, 0.9};
  const auto Z0 = contour::log_integral(contour::log_segment(a, b, 0));
  const auto Z2 = contour::log_integral(contour::log_segment(a, b, 2));
  CHECK(std::abs(Z2 - Z0 - complex<double>(0.0, 4.0 * M_PI)) < 1e-12);
}

TEST_CASE("transition log reproduces the doubled bookkeeping of a known pair") {
  const complex<double> psi1 = 1.0;
  const complex<double> psi2 = 2.0 * std::polar(1.0, M_PI / 4.0);
  const auto rep = contour::transition_log(psi1, psi2, contour::log_segment(psi1, psi2));
  CHECK(rep.Z.real() == doctest::Approx(std::log(2.0)).epsilon(1e-13));
  CHECK(rep.Z.imag() == doctest::Approx(M_PI / 4.0).epsilon(1e-13));
  CHECK(rep.S12 == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-13));
  CHECK(rep.Phi12 == doctest::Approx(M_PI / 2.0).epsilon(1e-13));
}

TEST_CASE("transition log rejects paths that do not join the declared states") {
  const complex<double> psi1 = 1.0, psi2{0.0, 3.0};
  const auto wrong = contour::log_segment(psi1, complex<double>(2.0, 0.1));
  CHECK_THROWS_AS(contour::transition_log(psi1, psi2, wrong), EndpointMismatchError);
}

TEST_CASE("the mirror identity holds across the unit circle") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> mag(0.2, 5.0), ang(-3.0, 3.0);
  for (int i = 0; i < 64; ++i) {
    CHECK(contour::mirror_identity_residual(std::polar(mag(gen), ang(gen))) < 1e-9);
  }
}

TEST_CASE("action decomposition on the circular flow is purely imaginary") {
  const PhysicalConstants c = PhysicalConstants::natural();
  const auto m = WaveModel::central_field(1.0, 1.0, 2, -0.5);
  const double rho = 1.3;
  const double T = 2.0 * M_PI * c.mass * rho * rho / (c.hbar * 2.0);
  const auto traj = transport::circular_flow(m, {rho, 0.0, 0.0}, 0.0, T, 1025, c);
  const auto dec = contour::complex_action_decompose(m, traj, c);

  CHECK(std::abs(dec.Z.real()) < 1e-10);  // no density change along the flow
  // One revolution: the mechanical action is (hk^2/(m rho^2) hbar - E) T.
  const double L = c.hbar * c.hbar * 4.0 / (c.mass * rho * rho) - m.E;
  CHECK(dec.Z.imag() == doctest::Approx(L * T / c.hbar).epsilon(1e-8));
  CHECK(dec.cross_residual < 1e-6);
}

TEST_CASE("lagrangian samples along the circle sit on the closed form") {
  const PhysicalConstants c = PhysicalConstants::natural();
  const auto m = WaveModel::central_field(1.0, 1.0, 1, -0.5);
  const double rho = 0.9;
  const double T = 2.0 * M_PI * c.mass * rho * rho / c.hbar;
  const auto traj = transport::circular_flow(m, {rho, 0.0, 0.0}, 0.0, T / 2.0, 257, c);
  const auto L = contour::lagrangian_on_path(m, traj, c);
  const double expect = c.hbar * c.hbar / (c.mass * rho * rho) - m.E;
  REQUIRE(L.size() == traj.t.size());
  for (double val : L) CHECK(val == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("paths survive a csv round trip") {
  const auto original = contour::circle(1.1, 1, 16);
  const std::string file = "contour_roundtrip_test.csv";
  contour::write_csv(original, file);
  const auto loaded = contour::read_csv(file);
  std::remove(file.c_str());
  REQUIRE(loaded.xi.size() == original.xi.size());
  for (size_t i = 0; i < loaded.xi.size(); ++i) {
    CHECK(loaded.tau[i] == doctest::Approx(original.tau[i]).epsilon(1e-14));
    CHECK(std::abs(loaded.xi[i] - original.xi[i]) < 1e-14);
  }
}

#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdio>

#include "qmflow/transport.hpp"

using namespace qmflow;

namespace {
const PhysicalConstants kNat = PhysicalConstants::natural();
}

TEST_CASE("characteristic velocity opposes the observed flow") {
  // At (rho0, 0, z) the flow moves along +e_phi for k > 0; the characteristic
  // of the transported density runs backwards.
  const Point3 p{1.5, 0.0, 0.7};
  const Vec3 rhs = transport::characteristic_rhs(p, 2, kNat);
  CHECK(rhs.x == doctest::Approx(0.0));
  CHECK(rhs.y == doctest::Approx(-kNat.hbar * 2.0 / (kNat.mass * 1.5)).epsilon(1e-14));
  CHECK(rhs.z == 0.0);
}

TEST_CASE("characteristics close after whole revolutions") {
  const auto m = WaveModel::central_field(1.0, 1.0, 2, -0.5);
  const auto ch = transport::integrate_characteristic(m, {1.1, 0.0, 0.4}, 2048, 2, kNat);
  CHECK(ch.return_distance < 1e-8);
  CHECK(ch.radius_drift < 1e-10);
  CHECK(ch.density_spread < 1e-10);
  const double T = 2.0 * M_PI * kNat.mass * 1.1 * 1.1 / (kNat.hbar * 2.0);
  CHECK(ch.measured_period == doctest::Approx(T).epsilon(1e-8));
  REQUIRE(ch.t.size() == ch.r.size());
  REQUIRE(ch.t.size() == ch.f.size());
}

TEST_CASE("circular flow samples follow the field velocity") {
  const auto m = WaveModel::central_field(1.0, 1.0, 1, -0.5);
  const double rho = 1.3;
  const auto traj = transport::circular_flow(m, {rho, 0.0, -0.2}, 0.0, 2.0, 2001, kNat);
  // Central difference of the positions against the analytic velocity.
  const size_t i = 700;
  const double dt = traj.t[i + 1] - traj.t[i - 1];
  const Vec3 v_num = (traj.r[i + 1] - traj.r[i - 1]) / dt;
  CHECK(norm(v_num - m.velocity(traj.r[i], traj.t[i], kNat)) < 1e-6);
  CHECK(cyl_radius(traj.r[i]) == doctest::Approx(rho).epsilon(1e-12));
}

TEST_CASE("the vortex density is stationary and a sheared profile is not") {
  const auto m = WaveModel::central_field(1.0, 1.0, 1, -0.5);
  num::FdConfig cfg;
  cfg.step = 1e-3;
  cfg.order = 4;
  const Point3 p{0.9, -0.7, 0.5};
  auto density = [&](const Point3& q) { return m.density(q, 0.0, kNat); };
  auto sheared = [](const Point3& q) { return 2.0 + q.x; };
  const auto good = transport::stationary_continuity_residual(density, 1, p, kNat, cfg);
  const auto bad = transport::stationary_continuity_residual(sheared, 1, p, kNat, cfg);
  CHECK(good.advective < 1e-8);
  CHECK(good.divergence_form < 1e-6);
  CHECK(bad.advective > 1e6 * good.advective);
}

TEST_CASE("rigid rotation preserves the magnitude bit for bit") {
  const std::complex<double> psi{3.0, -4.0};
  const auto rotated = transport::evolution_rotate(psi, 17.3);
  CHECK(std::abs(rotated) == std::abs(psi));
  const auto back = transport::evolution_rotate(rotated, -17.3);
  CHECK(std::abs(back - psi) < 1e-14 * std::abs(psi) * 10.0);
}

TEST_CASE("transition action along the flow matches the phase ledger") {
  const auto m = WaveModel::central_field(1.0, 1.0, 1, -0.5);
  const double rho = 1.0;
  const double T = 2.0 * M_PI * kNat.mass * rho * rho / kNat.hbar;
  const double dt = T / 3.0;
  const auto traj = transport::circular_flow(m, {rho, 0.0, 0.0}, 0.0, dt, 513, kNat);
  const auto rep = transport::evolution_phase(m, traj, kNat);

  const double omega = kNat.hbar / (kNat.mass * rho * rho);
  const double expect = kNat.hbar * omega * dt - m.E * dt;
  CHECK(rep.action == doctest::Approx(expect).epsilon(1e-8));
  CHECK(rep.residual < 1e-8 * std::abs(rep.action));
  CHECK(rep.p_dr_integral == doctest::Approx(kNat.hbar * omega * dt).epsilon(1e-8));
  CHECK(rep.h_integral == doctest::Approx(m.E * dt).epsilon(1e-8));
}

TEST_CASE("family members differ by whole-turn action gaps") {
  const auto m = WaveModel::central_field(1.0, 1.0, 2, -0.5);
  const Point3 start{1.2, 0.0, 0.0};
  const auto base = transport::member_from_flow(m, start, 0.0, 0.8, 0, 257, kNat);
  const auto wound = transport::member_from_flow(m, start, 0.0, 0.8, 1, 1025, kNat);
  CHECK(base.mag_ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(wound.action - base.action ==
        doctest::Approx(2.0 * M_PI * kNat.hbar * 2.0).epsilon(1e-9));
}

TEST_CASE("a single-member family reproduces the direct transition") {
  const auto m = WaveModel::central_field(1.0, 1.0, 1, -0.5);
  const Point3 start{1.0, 0.0, 0.0};
  const auto member = transport::member_from_flow(m, start, 0.0, 0.9, 0, 257, kNat);
  transport::TrajectoryFamily fam;
  fam.t1 = 0.0;
  fam.t2 = 0.9;
  fam.p1 = start;
  fam.members = {member};
  const auto sum = transport::path_sum(fam, kNat.hbar);
  const auto expect = member.path.xi.back() / member.path.xi.front();
  CHECK(std::abs(sum - expect) < 1e-12 * std::abs(expect));
}

TEST_CASE("a half-period action shift cancels the pair exactly") {
  const auto m = WaveModel::central_field(1.0, 1.0, 1, -0.5);
  const auto member = transport::member_from_flow(m, {1.0, 0.0, 0.0}, 0.0, 0.5, 0, 257, kNat);
  auto shifted = member;
  shifted.action += M_PI * kNat.hbar;
  transport::TrajectoryFamily fam;
  fam.members = {member, shifted};
  CHECK(std::abs(transport::path_sum(fam, kNat.hbar)) < 1e-12);
}

TEST_CASE("families validate membership before use") {
  transport::TrajectoryFamily empty;
  CHECK_THROWS_AS(empty.validate(), PreconditionError);

  const auto m = WaveModel::central_field(1.0, 1.0, 1, -0.5);
  transport::TrajectoryFamily fam;
  fam.members.push_back(transport::member_from_flow(m, {1.0, 0.0, 0.0}, 0.0, 0.5, 0, 257, kNat));
  fam.members.push_back(transport::member_from_flow(m, {1.3, 0.0, 0.0}, 0.0, 0.5, 0, 257, kNat));
  CHECK_THROWS_AS(fam.validate(), EndpointMismatchError);  // different endpoints
}

TEST_CASE("families survive a json round trip") {
  const auto m = WaveModel::central_field(1.0, 1.0, 1, -0.5);
  transport::TrajectoryFamily fam;
  fam.t1 = 0.0;
  fam.t2 = 70.7;
  fam.p1 = {1.0, 0.0, 0.0};
  fam.p2 = {0.0, 1.0, 0.0};
  fam.members.push_back(transport::member_from_flow(m, fam.p1, 0.0, 0.7, 0, 257, kNat));
  fam.members.push_back(transport::member_from_flow(m, fam.p1, 0.0, 0.7, 2, 1025, kNat));

  const std::string file = "family_roundtrip_test.json";
  fam.write_json(file);
  const auto loaded = transport::TrajectoryFamily::read_json(file);
  std::remove(file.c_str());

  REQUIRE(loaded.members.size() == 2);
  CHECK(loaded.t2 == doctest::Approx(70.7));
  CHECK(loaded.members[1].action == doctest::Approx(fam.members[1].action).epsilon(1e-14));
  CHECK(loaded.members[0].path.xi.size() == fam.members[0].path.xi.size());
  CHECK(std::abs(transport::path_sum(loaded, kNat.hbar) -
                 transport::path_sum(fam, kNat.hbar)) < 1e-13);
}

TEST_CASE("characteristic curves can be exported as csv") {
  const auto m = WaveModel::central_field(1.0, 1.0, 1, -0.5);
  const auto ch = transport::integrate_characteristic(m, {1.0, 0.0, 0.2}, 256, 1, kNat);
  const std::string file = "characteristic_export_test.csv";
  ch.write_csv(file);
  std::FILE* f = std::fopen(file.c_str(), "r");
  REQUIRE(f != nullptr);
  char header[64] = {0};
  REQUIRE(std::fgets(header, sizeof(header), f) != nullptr);
  std::fclose(f);
  std::remove(file.c_str());
  CHECK(std::string(header).rfind("t,x,y,z,f", 0) == 0);
}

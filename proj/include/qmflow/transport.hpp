#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qmflow/constants.hpp"
#include "qmflow/contour.hpp"
#include "qmflow/numerics.hpp"
#include "qmflow/trajectory.hpp"
#include "qmflow/wave_model.hpp"

// Density transport along the vortex flow and the evolution bookkeeping built
// on it: characteristics of the stationary transport equation, the rigid
// phase-rotation operator, transition actions along flow trajectories, and
// uniform averages over trajectory families.

namespace qmflow::transport {

// Right-hand side of the characteristic system of the stationary transport
// equation for winding k:
//   dx/dt = (hbar k / m) y / rho^2,  dy/dt = -(hbar k / m) x / rho^2,  dz/dt = 0.
Vec3 characteristic_rhs(const Point3& p, int k, const PhysicalConstants& c);

struct Characteristic {
  std::vector<double> t;
  std::vector<Point3> r;
  std::vector<double> f;        // density sampled along the curve
  double radius_drift = 0.0;    // max relative drift of the cylindrical radius
  double density_spread = 0.0;  // max relative spread of f along the curve
  double measured_period = 0.0; // revolution period from the swept angle
  double return_distance = 0.0; // |r(end) - r(start)| / rho0 after whole revolutions

  void write_csv(const std::string& filename) const;
};

// Fixed-step RK4 integration of the characteristic through `start` for
// `revolutions` whole turns. The step count is explicit, no adaptivity, so a
// given configuration always produces the same samples bit for bit.
Characteristic integrate_characteristic(const WaveModel& model, const Point3& start,
                                        int steps_per_revolution, int revolutions,
                                        const PhysicalConstants& c);

// Exact circular flow trajectory (dr/dt = +velocity) used as input to action
// integrals: starts at `start`, spans [t0, t1] with n samples.
FlowTrajectory circular_flow(const WaveModel& model, const Point3& start, double t0,
                             double t1, int n, const PhysicalConstants& c);

struct StationaryResiduals {
  double advective = 0.0;        // scale-free |(v, grad f)|
  double divergence_form = 0.0;  // scale-free |div(f grad u)|, u = azimuth
};

// Residuals of the two stationary-transport identities for a density profile
// at one point, derivatives by finite differences.
StationaryResiduals stationary_continuity_residual(const num::ScalarField& f_profile,
                                                   int k, const Point3& p,
                                                   const PhysicalConstants& c,
                                                   const num::FdConfig& cfg = {});

// Rigid phase rotation: exp(i dphi) psi, with the magnitude preserved exactly
// (the result is rebuilt from |psi| and arg(psi) + dphi).
std::complex<double> evolution_rotate(std::complex<double> psi, double dphi);

struct PhaseReport {
  double action = 0.0;          // transition action along the trajectory
  double p_dr_integral = 0.0;   // integral of (p_potential, dr)
  double h_integral = 0.0;      // integral of H dt
  double phase_action = 0.0;    // (hbar/2) * unwrapped Phi change of the wave samples
  double residual = 0.0;        // |action - phase_action|
};

// Transition action along a flow trajectory: the (p, dr) integral minus the
// energy integral, cross-checked against the unwrapped doubled phase.
PhaseReport evolution_phase(const WaveModel& model, const FlowTrajectory& traj,
                            const PhysicalConstants& c);

// Family of transition paths between two fixed spacetime endpoints, each
// member carrying its own magnitude ratio and transition action.
struct FamilyMember {
  contour::ComplexPath path;  // wave-plane curve of the member
  double mag_ratio = 0.0;     // |psi2 / psi1| along this member
  double action = 0.0;        // transition action of this member
};

struct TrajectoryFamily {
  double t1 = 0.0, t2 = 0.0;
  Point3 p1{}, p2{};
  std::vector<FamilyMember> members;

  void validate() const;  // members must share wave-plane endpoints to 1e-9
  std::string json_text() const;
  void write_json(const std::string& filename) const;
  static TrajectoryFamily read_json(const std::string& filename);
};

// Build a family member by following the circular flow from p1 over [t1, t2]
// with `extra_turns` additional whole revolutions spliced in (the homotopy
// class marker of the member).
FamilyMember member_from_flow(const WaveModel& model, const Point3& start, double t1,
                              double t2, int extra_turns, int samples,
                              const PhysicalConstants& c);

// Uniform average of mag * exp(i action / hbar) over the family.
std::complex<double> path_sum(const TrajectoryFamily& family, double hbar);

}  // namespace qmflow::transport

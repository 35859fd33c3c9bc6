#pragma once

#include <vector>

#include "qmflow/constants.hpp"
#include "qmflow/numerics.hpp"
#include "qmflow/wave_model.hpp"

// Loop integrals that expose the integer content of the vortex fields:
// circulation of the azimuth gradient, momentum circulation and its split into
// phase and vector-potential parts, the orbit action balance, the Coulomb
// orbit energies, and the singular string potential with its flux and charge.

namespace qmflow::quant {

// Circle on the sphere of radius `radius` at polar angle theta, traversed
// `turns` times counterclockwise (negative = clockwise), centered on the OZ
// axis. `samples` controls exported tables, not quadrature accuracy.
struct LoopSpec {
  double radius = 1.0;
  double theta = M_PI / 2.0;
  int turns = 1;
  int samples = 256;

  double cyl_rho() const { return radius * std::sin(theta); }
  double height() const { return radius * std::cos(theta); }
  void validate() const;
  num::Path3 path() const;
};

// Loop integral of grad(azimuth); equals 2 pi * (enclosed turns).
double circulation_of_angle_gradient(const LoopSpec& loop,
                                     const num::QuadConfig& cfg = {});

// Same, for a circle whose axis-parallel center line is shifted off the OZ
// axis (used to show the integral vanishes when the axis is not enclosed).
double circulation_off_axis(double radius, const Point3& center, int turns,
                            const num::QuadConfig& cfg = {});

struct MomentumLoopReport {
  double total = 0.0;       // loop integral of (m v, dr)
  double phase_part = 0.0;  // potential-velocity contribution
  double flux_part = 0.0;   // vector-potential contribution, -q_e * (A-flux)
  int recovered_k = 0;      // total / (2 pi hbar), rounded
  double residue = 0.0;     // distance of total / (2 pi hbar) from the integer
};

// Momentum circulation around the loop; recovers 2 pi hbar k per enclosed
// turn and reports the phase/flux split. Residue above 1e-6 throws
// UnresolvedWindingError.
MomentumLoopReport momentum_loop_integral(const WaveModel& model, const LoopSpec& loop,
                                          const PhysicalConstants& c,
                                          const num::QuadConfig& cfg = {});

struct LoopActionReport {
  double loop_integral = 0.0;   // loop integral of the potential momentum
  double action_term = 0.0;     // integral of L dt over one revolution
  double energy_term = 0.0;     // integral of H dt over one revolution (H0 T)
  double period = 0.0;          // revolution period T
  double balance_residual = 0.0;  // |loop - (action + energy)|
  int recovered_k = 0;
};

// One full revolution of the circular flow: checks that the momentum loop
// integral equals the mechanical action plus H0 T, and that it equals
// 2 pi hbar k. Zero winding is a degenerate orbit.
LoopActionReport loop_action_decomposition(const WaveModel& model, double rho,
                                           const PhysicalConstants& c,
                                           int time_samples = 4097);

// rho x (m v): the angular momentum density direction and magnitude.
Vec3 angular_momentum(const WaveModel& model, const Point3& p,
                      const PhysicalConstants& c);

struct BohrOrbit {
  double radius = 0.0;          // closed-form stationary radius
  double energy = 0.0;          // closed-form orbit energy
  double fd_radius = 0.0;       // stationary point of W(r) found numerically
  double fd_energy = 0.0;       // W at that radius
  double stationarity = 0.0;    // |W'(fd_radius)| * fd_radius / |fd_energy|
};

// Orbit energy profile W(r) = hbar^2 k^2 / (2 m r^2) - Z e^2 / (4 pi eps0 r)
// in the equatorial plane: closed forms for the stationary radius and energy
// plus a finite-difference search that must land on them. k = 0 degenerates.
double orbit_energy_profile(double r, int k, int Z, const PhysicalConstants& c);
BohrOrbit bohr_model(int Z, int k, const PhysicalConstants& c,
                     const num::FdConfig& cfg = {});

struct DiracPotentialReport {
  Vec3 A{};
  double div_A = 0.0;       // finite-difference divergence at the point
  double curl_A_norm = 0.0; // finite-difference curl magnitude at the point
};

// The string potential A = -hbar k / (q_e rho) e_phi evaluated off-axis with
// its gauge checks. k = 0 gives the zero field.
DiracPotentialReport dirac_vector_potential(const Point3& p, int k,
                                            const PhysicalConstants& c,
                                            const num::FdConfig& cfg = {});

struct DiracChargeReport {
  double flux = 0.0;            // loop integral of (A, dl)
  double charge_wb = 0.0;       // 2 pi hbar k / q_e, flux-defined magnetic charge
  double charge_am = 0.0;       // same charge in A*m units, charge_wb / mu0
  double ratio_wb = 0.0;        // q_e * charge_wb / (2 pi hbar)
  double ratio_am = 0.0;        // q_e * charge_am / (2 pi eps0 hbar c^2)
  int recovered_k = 0;
  bool encloses_axis = true;
};

// Flux of the string potential through a loop and the magnetic charge it
// implies. The flux is radius-independent when the loop encloses the axis and
// zero otherwise (flagged, not an error). Both charge ratios must recover the
// same integer.
DiracChargeReport dirac_flux_and_charge(const LoopSpec& loop, int k,
                                        const PhysicalConstants& c,
                                        const num::QuadConfig& cfg = {});

// Off-axis circulation for a shifted loop that misses the axis.
double dirac_flux_off_axis(double radius, const Point3& center, int k,
                           const PhysicalConstants& c, const num::QuadConfig& cfg = {});

// Max relative deviation of the flux from -2 pi hbar k / q_e over a sweep of
// loop radii. The axis field exists only through this invariance; no
// pointwise field value on the axis is ever produced.
double delta_field_consistency(int k, const std::vector<double>& radii,
                               const PhysicalConstants& c,
                               const num::QuadConfig& cfg = {});

}  // namespace qmflow::quant

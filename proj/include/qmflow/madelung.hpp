#pragma once

#include <complex>

#include "qmflow/constants.hpp"
#include "qmflow/numerics.hpp"
#include "qmflow/trajectory.hpp"
#include "qmflow/wave_model.hpp"

// Hydrodynamic decomposition of a wave field: density and phase turned into
// log-density, doubled phase, velocity split into potential and solenoidal
// parts, and the energy bookkeeping that goes with them. Residual operations
// return scale-free numbers: |defect| divided by the sum of the magnitudes of
// the terms entering the balance (zero when all terms vanish).

namespace qmflow::madelung {

struct Fields {
  double f = 0.0;        // probability density
  double S = 0.0;        // log-density, ln f
  double phi = 0.0;      // wave phase, principal value in [0, 2 pi)
  int branch = 0;        // branch index n; pointwise evaluation fixes n = 0
  double Phi = 0.0;      // doubled phase 2 phi + 2 pi n
  Vec3 v{};              // observed velocity
  Vec3 v_potential{};    // -alpha grad(Phi)
  Vec3 v_solenoidal{};   // gamma A
  Vec3 A{};              // vector potential
  double Q = 0.0;        // velocity divergence
};

Fields decompose(const WaveModel& model, const Point3& p, double t,
                 const PhysicalConstants& c);

// Divergence of the observed velocity; analytic when the model allows it,
// otherwise central differences of the velocity field.
double velocity_divergence(const WaveModel& model, const Point3& p, double t,
                           const PhysicalConstants& c, const num::FdConfig& cfg = {});

// Scale-free residual of  df/dt + div(f v) = 0.
double continuity_residual(const WaveModel& model, const Point3& p, double t,
                           const PhysicalConstants& c, const num::FdConfig& cfg = {});

// -hbar^2/(2m) * laplacian(|Psi|)/|Psi|.
double quantum_potential(const WaveModel& model, const Point3& p, double t,
                         const PhysicalConstants& c, const num::FdConfig& cfg = {});

// Potential energy reconstructed from the wave: the scalar potential of the
// governing Schroedinger equation.
double schrodinger_potential(const WaveModel& model, const Point3& p, double t,
                             const PhysicalConstants& c, const num::FdConfig& cfg = {});

// Classical potential energy q_e chi: the Schroedinger potential minus the
// quantum potential term and the solenoidal kinetic term. When the model
// declares a Coulomb background (coulomb_Z > 0) that background is used
// directly.
double classical_potential(const WaveModel& model, const Point3& p, double t,
                           const PhysicalConstants& c, const num::FdConfig& cfg = {});

struct EnergyReport {
  double kinetic = 0.0;      // m |v|^2 / 2
  double potential = 0.0;    // q_e chi
  double total = 0.0;        // W
  double hj_residual = 0.0;  // scale-free residual of (hbar/2) dPhi/dt + H = 0
};

EnergyReport energy_report(const WaveModel& model, const Point3& p, double t,
                           const PhysicalConstants& c, const num::FdConfig& cfg = {});

// Checks that the mechanical action accumulated along a flow trajectory equals
// (hbar/2) * Phi up to one additive constant: returns the spread (max - min)
// of the difference across the samples, plus the total phase action for scale.
struct ActionPhaseReport {
  double spread = 0.0;          // absolute spread of the offset
  double total_action = 0.0;    // |hbar/2 * (Phi(end) - Phi(begin))|
  double relative_spread = 0.0;
};

ActionPhaseReport action_phase_check(const WaveModel& model, const FlowTrajectory& traj,
                                     const PhysicalConstants& c);

// Scale-free residual of the governing equation
//   i hbar dPsi/dt = -hbar^2/(2m) lap(Psi) - (q_e/m) (A, p̂) Psi + U Psi.
double schrodinger_residual(const WaveModel& model, const Point3& p, double t,
                            const PhysicalConstants& c, const num::FdConfig& cfg = {});

// Lagrangian of the flow, the Legendre transform of the energy: at a field
// point, L = (v, p_potential) - H with H = |p_p|^2/(2m) + (p_p, v_s) +
// m |v_s|^2/2 + q_e chi.
double lagrangian(const WaveModel& model, const Point3& p, double t,
                  const PhysicalConstants& c, const num::FdConfig& cfg = {});

// Hamiltonian (total energy density along the flow), same terms as above.
double hamiltonian(const WaveModel& model, const Point3& p, double t,
                   const PhysicalConstants& c, const num::FdConfig& cfg = {});

}  // namespace qmflow::madelung

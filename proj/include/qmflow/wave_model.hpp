#pragma once

#include <complex>

#include "qmflow/constants.hpp"
#include "qmflow/numerics.hpp"
#include "qmflow/vec3.hpp"

namespace qmflow {

// Closed-form wave fields the rest of the library is checked against.
//
//   CentralField  amplitude sqrt(C) r^nu exp(-kappa r), phase k*phi - E t / hbar;
//                 the velocity is a pure vortex around the z axis.
//   DiracString   same amplitude, phase -E t / hbar; the entire velocity comes
//                 from a singular vector potential along the z axis.
//   PlaneWave     exp(i (p.r - E t) / hbar), unit density.
//   FreeGaussian  spreading isotropic Gaussian packet, width sigma at t = 0.
//
// All derivatives are available analytically. Operations that can fall back to
// finite differences consult use_analytic_derivatives, so the analytic path
// can be cross-checked against the numeric one on the same model.
enum class WaveKind { CentralField, DiracString, PlaneWave, FreeGaussian };

struct WaveModel {
  WaveKind kind = WaveKind::CentralField;

  // CentralField / DiracString parameters. nu and kappa shape the amplitude
  // |Psi| = sqrt(C) r^nu exp(-kappa r); k is the integer winding of the phase;
  // E the energy entering the time phase.
  double nu = 1.0;
  double kappa = 1.0;
  int k = 1;
  double E = 0.0;

  // Optional Coulomb background for the orbit-energy profile: when Z > 0 the
  // classical potential is taken as -Z e^2 / (4 pi eps0 r) instead of the one
  // reconstructed from the wave itself.
  int coulomb_Z = 0;

  Vec3 momentum{};     // PlaneWave
  double sigma = 1.0;  // FreeGaussian width

  bool use_analytic_derivatives = true;

  static WaveModel central_field(double nu, double kappa, int k, double E);
  static WaveModel dirac_string(double nu, double kappa, int k, double E);
  static WaveModel plane_wave(const Vec3& p, double E);
  static WaveModel free_gaussian(double sigma);

  void validate() const;

  // Length scale of the model; pole exclusion zones and finite-difference
  // steps are expressed relative to it.
  double characteristic_length(const PhysicalConstants& c) const;

  // Radius of the exclusion zone around the OZ axis (zero when the model has
  // no axis singularity).
  double pole_exclusion(const PhysicalConstants& c) const;

  // True when the density is normalizable and integrates to one.
  bool is_normalized() const;

  // Amplitude normalization constant C such that integral of |Psi|^2 equals 1.
  double normalization() const;

  // Throws PoleError / NodalPointError per the rules above.
  void check_point(const Point3& p, const PhysicalConstants& c) const;

  std::complex<double> psi(const Point3& p, double t, const PhysicalConstants& c) const;
  std::complex<double> ddt_psi(const Point3& p, double t, const PhysicalConstants& c) const;
  std::complex<double> laplacian_psi(const Point3& p, double t, const PhysicalConstants& c) const;

  double density(const Point3& p, double t, const PhysicalConstants& c) const;
  Vec3 grad_density(const Point3& p, double t, const PhysicalConstants& c) const;
  double ddt_density(const Point3& p, double t, const PhysicalConstants& c) const;

  // laplacian(|Psi|) / |Psi|.
  double lap_amp_over_amp(const Point3& p, double t, const PhysicalConstants& c) const;

  // Phase in its smooth local representation (atan2 branch for the azimuth).
  double phase(const Point3& p, double t, const PhysicalConstants& c) const;
  double ddt_phase(const Point3& p, double t, const PhysicalConstants& c) const;
  Vec3 grad_phase(const Point3& p, double t, const PhysicalConstants& c) const;

  Vec3 vector_potential(const Point3& p, double t, const PhysicalConstants& c) const;

  // Observed velocity, its divergence, and the potential/solenoidal parts.
  Vec3 velocity(const Point3& p, double t, const PhysicalConstants& c) const;
  Vec3 velocity_potential_part(const Point3& p, double t, const PhysicalConstants& c) const;
  Vec3 velocity_solenoidal_part(const Point3& p, double t, const PhysicalConstants& c) const;
  double velocity_divergence(const Point3& p, double t, const PhysicalConstants& c) const;
};

}  // namespace qmflow

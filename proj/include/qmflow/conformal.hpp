#pragma once

#include <complex>
#include <optional>
#include <utility>

#include "qmflow/constants.hpp"
#include "qmflow/numerics.hpp"
#include "qmflow/wave_model.hpp"

// The exponential half-map Psi = exp(M/2) from the log-plane M = S + i Phi
// onto the wave plane. Its Jacobian ties the map geometry to the probability
// density: J = exp(S)/4, so |Psi|^2 = 4 J everywhere.

namespace qmflow::conformal {

// Rectangle S in (s_min, s_max), Phi in (phi_min, phi_max) in the log-plane.
// s_min may be -infinity (the map then reaches down to Psi = 0); phi bounds
// are finite.
struct StripDomain {
  double s_min = 0.0;
  double s_max = 0.0;
  double phi_min = 0.0;
  double phi_max = 0.0;

  double phi_width() const { return phi_max - phi_min; }
  void validate() const;
};

std::complex<double> forward_map(std::complex<double> M);

// Analytic Jacobian of the map at M.
double jacobian(std::complex<double> M);

// Jacobian by central differences of the map itself (2x2 determinant).
double jacobian_fd(std::complex<double> M, double h, int order = 2);

struct UnivalenceReport {
  bool univalent = false;
  // Two distinct log-plane points with the same image, present when the strip
  // is too wide to be injective.
  std::optional<std::pair<std::complex<double>, std::complex<double>>> witness;
};

// A strip is injective under the half-map exactly when its Phi-width does not
// exceed 4 pi (the map has period 4 pi i). The verdict is double-checked on a
// lattice: collisions are searched for when claiming univalence, and an
// explicit collision pair is constructed otherwise.
UnivalenceReport univalence_check(const StripDomain& strip, int lattice_s = 32,
                                  int lattice_phi = 32);

// Area of the image of the strip: integral of exp(S)/4 over the strip. The
// improper s_min = -infinity case is handled by the substitution w = exp(S),
// which makes the integrand constant. s_max = +infinity diverges.
double area_integral(const StripDomain& strip, const num::QuadConfig& cfg = {});

// Scale-free residual of dJ/dt + div(J v) = 0 for the density-quarter
// Jacobian carried by a wave model.
double jacobian_continuity_residual(const WaveModel& model, const Point3& p, double t,
                                    const PhysicalConstants& c,
                                    const num::FdConfig& cfg = {});

}  // namespace qmflow::conformal

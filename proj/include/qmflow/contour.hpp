#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "qmflow/constants.hpp"
#include "qmflow/numerics.hpp"
#include "qmflow/trajectory.hpp"
#include "qmflow/wave_model.hpp"

// Paths in the nonzero complex plane and the branch bookkeeping that makes
// log-integrals along them well defined. A path is refined until adjacent
// samples subtend less than pi/4 at the origin; after that the argument can
// be unwrapped segment by segment without ambiguity and every integral of
// d(xi)/xi reduces to exact per-segment log increments.

namespace qmflow::contour {

struct ComplexPath {
  std::vector<double> tau;                          // parameter values, increasing
  std::vector<std::complex<double>> xi;             // samples, all nonzero
  std::function<std::complex<double>(double)> gen;  // optional: xi(tau) for refinement

  bool closed(double tol = 1e-12) const;
  void validate() const;

  static ComplexPath from_samples(std::vector<double> tau,
                                  std::vector<std::complex<double>> xi);
  static ComplexPath from_generator(std::function<std::complex<double>(double)> g,
                                    double tau0, double tau1, int initial_samples);
};

// Circle |xi| = radius traversed `turns` times (sign = orientation).
ComplexPath circle(double radius, int turns, int samples = 64,
                   std::complex<double> center = 0.0);

// Path from a to b following exp of the straight segment between logs, with
// `extra_winding` additional full turns spliced in. The winding integer is the
// explicit homotopy class marker: two paths between the same endpoints are
// homotopic in the punctured plane exactly when the integer matches.
ComplexPath log_segment(std::complex<double> a, std::complex<double> b, int extra_winding = 0,
                        int samples = 64);

// Four-corner polyline loop (square) around the origin, counterclockwise.
ComplexPath unit_square_loop();

// Maximum angular step threshold; refinement subdivides until below this.
inline constexpr double kMaxTurn = M_PI / 4.0;

struct RefinedPath {
  ComplexPath path;
  std::vector<double> unwrapped;  // argument ledger, unwrapped[i] - arg(xi[0]) accumulated
  double total_turn = 0.0;        // unwrapped.back() - unwrapped.front()
};

// Subdivide (generator when available, chord midpoint otherwise) until every
// adjacent pair subtends < pi/4, then unwrap the argument cumulatively.
// Throws NearPoleError when subdivision keeps producing samples collapsing
// toward the origin.
RefinedPath refine_and_unwrap(const ComplexPath& input);

// Winding number of a closed path; the accumulated angle must sit within
// 1e-6 * 2 pi of an integer multiple of 2 pi, else UnresolvedWindingError.
int winding_number(const ComplexPath& loop);

// Integral of d(xi)/xi along the path: real part ln|xi_end / xi_start|,
// imaginary part the unwrapped argument change.
std::complex<double> log_integral(const ComplexPath& path);

// Logarithm of the transition ratio psi2/psi1 accumulated along a path whose
// endpoints match psi1 and psi2 (within 1e-12 relative): Z = (S12 + i Phi12)/2.
struct TransitionLog {
  std::complex<double> Z;
  double S12 = 0.0;   // log-density change, 2 Re Z
  double Phi12 = 0.0; // doubled-phase change, 2 Im Z
};

TransitionLog transition_log(std::complex<double> psi1, std::complex<double> psi2,
                             const ComplexPath& path);

// Action decomposition along a flow trajectory:
//   Re Z = -1/2 integral of Q dt,   Im Z = (1/hbar) integral of L dt,
// cross-checked against the endpoint transition log computed on the wave
// samples of the same trajectory (they agree modulo 2 pi i by construction of
// the unwrapping, so the residual is reported directly).
struct ActionDecomposition {
  std::complex<double> Z;            // from the two integrals
  std::complex<double> endpoint_Z;   // from the wave samples along the path
  double q_integral = 0.0;           // integral of Q dt
  double action_integral = 0.0;      // integral of L dt
  double cross_residual = 0.0;       // |Z - endpoint_Z| after 2 pi i reduction
};

ActionDecomposition complex_action_decompose(const WaveModel& model,
                                             const FlowTrajectory& traj,
                                             const PhysicalConstants& c);

// Lagrangian samples along a flow trajectory: L(t) = (hbar/2) dPhi/dt, with
// Phi the unwrapped doubled phase. Returned values are the field-side
// Legendre values; the phase-rate cross-check is the caller's business (see
// the action decomposition above).
std::vector<double> lagrangian_on_path(const WaveModel& model, const FlowTrajectory& traj,
                                       const PhysicalConstants& c);

// Residual of the mirror identity
//   1/2 * integral_{1/psi}^{psi} d(xi)/xi = integral_{1}^{psi} d(xi)/xi
// with both integrals taken along minimal log-segments.
double mirror_identity_residual(std::complex<double> psi);

// CSV round-trip: header "tau,re,im", one row per sample.
void write_csv(const ComplexPath& path, const std::string& filename);
ComplexPath read_csv(const std::string& filename);

}  // namespace qmflow::contour

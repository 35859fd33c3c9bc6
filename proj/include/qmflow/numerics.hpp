#pragma once

#include <functional>
#include <vector>

#include "qmflow/errors.hpp"
#include "qmflow/vec3.hpp"

// Finite-difference and quadrature kernels shared by all field modules.
// Everything here is dimension-agnostic: fields are plain callables and all
// steps are expressed as fractions of a caller-supplied characteristic length.

namespace qmflow::num {

using ScalarField = std::function<double(const Point3&)>;
using VectorField = std::function<Vec3(const Point3&)>;

struct FdConfig {
  double step = 1e-5;          // stencil step as a fraction of characteristic_length
  int order = 2;               // 2 or 4
  bool richardson = false;     // one Richardson extrapolation pass (halved step)
  double characteristic_length = 1.0;

  double h() const { return step * characteristic_length; }
  void validate() const;
};

enum class QuadRule { GaussLegendre, Simpson };

struct QuadConfig {
  QuadRule rule = QuadRule::GaussLegendre;
  int panels = 16;   // composite subdivisions
  int points = 8;    // nodes per panel (Gauss-Legendre only)

  void validate() const;
};

// Gauss-Legendre nodes/weights on [-1, 1], computed by Newton iteration on the
// Legendre recurrence and cached per order.
const std::vector<double>& gauss_nodes(int n);
const std::vector<double>& gauss_weights(int n);

// Composite quadrature of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadConfig& cfg);

// Central-difference derivatives. Stencil evaluation failures are rethrown as
// StencilError naming the offending point.
Vec3 fd_gradient(const ScalarField& f, const Point3& p, const FdConfig& cfg);
double fd_laplacian(const ScalarField& f, const Point3& p, const FdConfig& cfg);
Vec3 fd_curl(const VectorField& v, const Point3& p, const FdConfig& cfg);
double fd_divergence(const VectorField& v, const Point3& p, const FdConfig& cfg);

// Central difference of a time-dependent scalar sample.
double fd_time_derivative(const std::function<double(double)>& f, double t,
                          const FdConfig& cfg);

// Spatial curve for line integrals: either an analytic parametrization with
// its derivative, or a polyline through samples.
struct Path3 {
  std::function<Point3(double)> gamma;    // position at parameter tau
  std::function<Vec3(double)> dgamma;     // derivative; required with gamma
  double tau_begin = 0.0;
  double tau_end = 1.0;
  std::vector<Point3> polyline;           // used when gamma is absent

  static Path3 parametric(std::function<Point3(double)> g, std::function<Vec3(double)> dg,
                          double t0, double t1);
  static Path3 points(std::vector<Point3> pts);
};

// Circle of cylindrical radius rho at height z, traversed counterclockwise
// `turns` times (clockwise when turns < 0).
Path3 circle_path(double rho, double z, int turns);

// Line integral of (v, dr) along the path.
double line_integral(const VectorField& v, const Path3& path, const QuadConfig& cfg);

// Radial shell for volume integrals in spherical coordinates. r_max may be
// infinite if a tail truncation radius is supplied; the integrand is then cut
// at tail_radius and the discarded tail is estimated and checked.
struct SphericalShell {
  double r_min = 0.0;
  double r_max = 0.0;  // may be +infinity
  double tail_radius = 0.0;
  double tail_tolerance = 1e-12;  // relative
};

// Integral of field over the shell (full solid angle), spherical measure.
double volume_integral(const ScalarField& field, const SphericalShell& shell,
                       const QuadConfig& cfg);

}  // namespace qmflow::num

#include "qmflow/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <utility>

namespace qmflow::num {

namespace {

std::string point_str(const Point3& p) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "(%.6g, %.6g, %.6g)", p.x, p.y, p.z);
  return buf;
}

// Evaluate a stencil sample; any exception or non-finite value becomes a
// StencilError that names the point.
double probe(const ScalarField& f, const Point3& p) {
  double v;
  try {
    v = f(p);
  } catch (const std::exception& e) {
    throw StencilError("stencil point " + point_str(p) + " failed: " + e.what());
  }
  if (!std::isfinite(v)) throw StencilError("stencil point " + point_str(p) + " is not finite");
  return v;
}

Vec3 probe(const VectorField& f, const Point3& p) {
  Vec3 v;
  try {
    v = f(p);
  } catch (const std::exception& e) {
    throw StencilError("stencil point " + point_str(p) + " failed: " + e.what());
  }
  if (!finite(v)) throw StencilError("stencil point " + point_str(p) + " is not finite");
  return v;
}

Vec3 axis_unit(int axis) {
  switch (axis) {
    case 0: return {1.0, 0.0, 0.0};
    case 1: return {0.0, 1.0, 0.0};
    default: return {0.0, 0.0, 1.0};
  }
}

double partial(const ScalarField& f, const Point3& p, int axis, double h, int order) {
  const Vec3 e = axis_unit(axis);
  if (order == 2) return (probe(f, p + h * e) - probe(f, p - h * e)) / (2.0 * h);
  return (-probe(f, p + 2.0 * h * e) + 8.0 * probe(f, p + h * e) - 8.0 * probe(f, p - h * e) +
          probe(f, p - 2.0 * h * e)) /
         (12.0 * h);
}

double second_partial(const ScalarField& f, const Point3& p, int axis, double h, int order,
                      double f0) {
  const Vec3 e = axis_unit(axis);
  if (order == 2)
    return (probe(f, p + h * e) - 2.0 * f0 + probe(f, p - h * e)) / (h * h);
  return (-probe(f, p + 2.0 * h * e) + 16.0 * probe(f, p + h * e) - 30.0 * f0 +
          16.0 * probe(f, p - h * e) - probe(f, p - 2.0 * h * e)) /
         (12.0 * h * h);
}

}  // namespace

void FdConfig::validate() const {
  if (!(step > 0.0) || !std::isfinite(step))
    throw PreconditionError("fd config: step must be positive and finite");
  if (order != 2 && order != 4) throw PreconditionError("fd config: order must be 2 or 4");
  if (!(characteristic_length > 0.0))
    throw PreconditionError("fd config: characteristic length must be positive");
}

void QuadConfig::validate() const {
  if (panels < 1) throw PreconditionError("quadrature config: panels must be >= 1");
  if (rule == QuadRule::GaussLegendre && (points < 1 || points > 64))
    throw PreconditionError("quadrature config: points must be in [1, 64]");
}

namespace {

// Legendre nodes by Newton iteration with the Chebyshev-angle initial guess.
std::pair<std::vector<double>, std::vector<double>> make_gauss(int n) {
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Legendre P_n(xi) and derivative via the three-term recurrence.
      double p0 = 1.0, p1 = xi;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
      const double dx = p1 / dp;
      xi -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    x[i] = xi;
    w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
  }
  // The Chebyshev guess walks from +1 down; callers get ascending nodes.
  std::reverse(x.begin(), x.end());
  std::reverse(w.begin(), w.end());
  return {std::move(x), std::move(w)};
}

std::mutex g_gauss_mutex;
std::map<int, std::pair<std::vector<double>, std::vector<double>>> g_gauss_cache;

const std::pair<std::vector<double>, std::vector<double>>& gauss_table(int n) {
  std::lock_guard<std::mutex> lock(g_gauss_mutex);
  auto it = g_gauss_cache.find(n);
  if (it == g_gauss_cache.end()) it = g_gauss_cache.emplace(n, make_gauss(n)).first;
  return it->second;
}

}  // namespace

const std::vector<double>& gauss_nodes(int n) { return gauss_table(n).first; }
const std::vector<double>& gauss_weights(int n) { return gauss_table(n).second; }

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadConfig& cfg) {
  cfg.validate();
  if (a == b) return 0.0;
  const double panel = (b - a) / cfg.panels;
  double total = 0.0;
  if (cfg.rule == QuadRule::GaussLegendre) {
    const auto& x = gauss_nodes(cfg.points);
    const auto& w = gauss_weights(cfg.points);
    for (int k = 0; k < cfg.panels; ++k) {
      const double mid = a + (k + 0.5) * panel;
      const double half = 0.5 * panel;
      double acc = 0.0;
      for (int j = 0; j < cfg.points; ++j) acc += w[j] * f(mid + half * x[j]);
      total += acc * half;
    }
  } else {
    for (int k = 0; k < cfg.panels; ++k) {
      const double x0 = a + k * panel;
      total += panel / 6.0 * (f(x0) + 4.0 * f(x0 + 0.5 * panel) + f(x0 + panel));
    }
  }
  return total;
}

Vec3 fd_gradient(const ScalarField& f, const Point3& p, const FdConfig& cfg) {
  cfg.validate();
  const double h = cfg.h();
  Vec3 g;
  for (int axis = 0; axis < 3; ++axis) {
    double d = partial(f, p, axis, h, cfg.order);
    if (cfg.richardson) {
      const double d2 = partial(f, p, axis, 0.5 * h, cfg.order);
      const double denom = cfg.order == 2 ? 3.0 : 15.0;
      d = d2 + (d2 - d) / denom;
    }
    (axis == 0 ? g.x : axis == 1 ? g.y : g.z) = d;
  }
  return g;
}

double fd_laplacian(const ScalarField& f, const Point3& p, const FdConfig& cfg) {
  cfg.validate();
  const double h = cfg.h();
  const double f0 = probe(f, p);
  double lap = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    double d = second_partial(f, p, axis, h, cfg.order, f0);
    if (cfg.richardson) {
      const double d2 = second_partial(f, p, axis, 0.5 * h, cfg.order, f0);
      const double denom = cfg.order == 2 ? 3.0 : 15.0;
      d = d2 + (d2 - d) / denom;
    }
    lap += d;
  }
  return lap;
}

double fd_divergence(const VectorField& v, const Point3& p, const FdConfig& cfg) {
  cfg.validate();
  double div = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    ScalarField component = [&v, axis](const Point3& q) {
      const Vec3 val = probe(v, q);
      return axis == 0 ? val.x : axis == 1 ? val.y : val.z;
    };
    const Vec3 g = fd_gradient(component, p, cfg);
    div += axis == 0 ? g.x : axis == 1 ? g.y : g.z;
  }
  return div;
}

Vec3 fd_curl(const VectorField& v, const Point3& p, const FdConfig& cfg) {
  cfg.validate();
  auto comp = [&v](int axis) {
    return ScalarField([&v, axis](const Point3& q) {
      const Vec3 val = probe(v, q);
      return axis == 0 ? val.x : axis == 1 ? val.y : val.z;
    });
  };
  const Vec3 gx = fd_gradient(comp(0), p, cfg);
  const Vec3 gy = fd_gradient(comp(1), p, cfg);
  const Vec3 gz = fd_gradient(comp(2), p, cfg);
  return {gz.y - gy.z, gx.z - gz.x, gy.x - gx.y};
}

double fd_time_derivative(const std::function<double(double)>& f, double t, const FdConfig& cfg) {
  cfg.validate();
  const double h = cfg.h();
  if (cfg.order == 2) return (f(t + h) - f(t - h)) / (2.0 * h);
  return (-f(t + 2.0 * h) + 8.0 * f(t + h) - 8.0 * f(t - h) + f(t - 2.0 * h)) / (12.0 * h);
}

Path3 Path3::parametric(std::function<Point3(double)> g, std::function<Vec3(double)> dg,
                        double t0, double t1) {
  Path3 p;
  p.gamma = std::move(g);
  p.dgamma = std::move(dg);
  p.tau_begin = t0;
  p.tau_end = t1;
  return p;
}

Path3 Path3::points(std::vector<Point3> pts) {
  if (pts.size() < 2) throw PreconditionError("polyline path needs at least two points");
  Path3 p;
  p.polyline = std::move(pts);
  return p;
}

Path3 circle_path(double rho, double z, int turns) {
  if (!(rho > 0.0)) throw PreconditionError("circle path: radius must be positive");
  if (turns == 0) throw PreconditionError("circle path: turns must be nonzero");
  const double span = 2.0 * M_PI * turns;  // signed: negative turns go clockwise
  auto gamma = [rho, z](double tau) {
    return Point3{rho * std::cos(tau), rho * std::sin(tau), z};
  };
  auto dgamma = [rho](double tau) {
    return Vec3{-rho * std::sin(tau), rho * std::cos(tau), 0.0};
  };
  return Path3::parametric(gamma, dgamma, 0.0, span);
}

double line_integral(const VectorField& v, const Path3& path, const QuadConfig& cfg) {
  cfg.validate();
  auto sample = [&v](const Point3& p) {
    Vec3 val;
    try {
      val = v(p);
    } catch (const PoleError& e) {
      throw PoleOnPathError(std::string("quadrature node hit a pole: ") + e.what());
    }
    if (!finite(val)) throw PoleOnPathError("field is not finite on the path at " + point_str(p));
    return val;
  };
  if (path.gamma) {
    auto integrand = [&](double tau) {
      return dot(sample(path.gamma(tau)), path.dgamma(tau));
    };
    return integrate(integrand, path.tau_begin, path.tau_end, cfg);
  }
  if (path.polyline.size() < 2) throw PreconditionError("line integral: empty path");
  double total = 0.0;
  const QuadConfig seg = cfg;  // full panel budget per segment
  for (size_t i = 0; i + 1 < path.polyline.size(); ++i) {
    const Point3 a = path.polyline[i];
    const Vec3 d = path.polyline[i + 1] - a;
    auto integrand = [&](double s) { return dot(sample(a + s * d), d); };
    total += integrate(integrand, 0.0, 1.0, seg);
  }
  return total;
}

double volume_integral(const ScalarField& field, const SphericalShell& shell,
                       const QuadConfig& cfg) {
  cfg.validate();
  if (!(shell.r_min >= 0.0)) throw PreconditionError("volume integral: r_min must be >= 0");
  double r_hi = shell.r_max;
  const bool improper = std::isinf(shell.r_max);
  if (improper) {
    if (!(shell.tail_radius > shell.r_min))
      throw PreconditionError("volume integral: infinite r_max requires a tail radius");
    r_hi = shell.tail_radius;
  }
  if (!(r_hi > shell.r_min)) return 0.0;

  // theta quadrature uses its own modest panel count; phi and theta structure
  // is smooth for every field this library produces.
  QuadConfig ang = cfg;
  ang.panels = std::max(4, cfg.panels / 2);

  auto shell_integral = [&](double a, double b) {
    auto radial = [&](double r) {
      auto over_theta = [&](double theta) {
        auto over_phi = [&](double phi) {
          const Point3 p{r * std::sin(theta) * std::cos(phi),
                         r * std::sin(theta) * std::sin(phi), r * std::cos(theta)};
          return field(p);
        };
        return integrate(over_phi, 0.0, 2.0 * M_PI, ang) * std::sin(theta);
      };
      return integrate(over_theta, 0.0, M_PI, ang) * r * r;
    };
    return integrate(radial, a, b, cfg);
  };

  const double value = shell_integral(shell.r_min, r_hi);
  if (improper) {
    // Estimate the discarded tail from the next 35% of radius; for the
    // exponentially decaying fields this bounds the true remainder.
    const double tail = shell_integral(r_hi, 1.35 * r_hi);
    const double scale = std::max(std::abs(value), std::numeric_limits<double>::min());
    if (std::abs(tail) > shell.tail_tolerance * scale) {
      char buf[128];
      std::snprintf(buf, sizeof(buf),
                    "volume integral: tail estimate %.3e exceeds %.1e of the value %.6e",
                    tail, shell.tail_tolerance, value);
      throw TruncationError(buf);
    }
  }
  return value;
}

}  // namespace qmflow::num

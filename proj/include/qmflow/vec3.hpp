#pragma once

#include <cmath>

namespace qmflow {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
};

inline Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
inline Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
inline Vec3 operator*(double s, Vec3 v) { return v *= s; }
inline Vec3 operator*(Vec3 v, double s) { return v *= s; }
inline Vec3 operator/(Vec3 v, double s) { return v *= (1.0 / s); }
inline Vec3 operator-(const Vec3& v) { return {-v.x, -v.y, -v.z}; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

// Spatial sample point. Cartesian; the z axis is the symmetry axis of the
// vortex-type fields, so the cylindrical radius shows up everywhere.
using Point3 = Vec3;

inline double cyl_radius(const Point3& p) { return std::hypot(p.x, p.y); }

// Azimuth angle in [0, 2*pi).
inline double azimuth(const Point3& p) {
  double a = std::atan2(p.y, p.x);
  if (a < 0.0) a += 2.0 * M_PI;
  return a;
}

// Unit vectors of the cylindrical frame at p (undefined on the axis; callers
// are expected to stay outside the pole exclusion zone).
inline Vec3 unit_e_rho(const Point3& p) {
  const double rho = cyl_radius(p);
  return {p.x / rho, p.y / rho, 0.0};
}

inline Vec3 unit_e_phi(const Point3& p) {
  const double rho = cyl_radius(p);
  return {-p.y / rho, p.x / rho, 0.0};
}

inline bool finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

}  // namespace qmflow

#pragma once

#include <string>

#include "qmflow/errors.hpp"

namespace qmflow {

// Physical constants of the run. Two stock sets: SI (CODATA 2018) and natural
// units (hbar = m = q_e = eps0 = mu0 = c = 1). The derived coefficients alpha,
// beta, gamma are accessors, never stored, so they cannot drift out of sync
// with the primary values.
struct PhysicalConstants {
  double hbar = 1.0;    // reduced Planck constant
  double mass = 1.0;    // particle mass
  double charge = 1.0;  // particle charge q_e (sign carried by the value)
  double eps0 = 1.0;    // vacuum permittivity
  double mu0 = 1.0;     // vacuum permeability
  double c = 1.0;       // speed of light
  double eps_r = 1.0;   // relative permittivity of the medium
  double mu_r = 1.0;    // relative permeability of the medium

  // Velocity = -alpha() * grad(Phi) + gamma() * A.
  double alpha() const { return -hbar / (2.0 * mass); }
  double gamma() const { return -charge / mass; }
  double beta() const { return 1.0 / hbar; }

  static PhysicalConstants natural() { return PhysicalConstants{}; }

  static PhysicalConstants si() {
    PhysicalConstants k;
    k.hbar = 1.054571817e-34;      // J s
    k.mass = 9.1093837015e-31;     // kg (electron)
    k.charge = 1.602176634e-19;    // C (elementary charge, positive)
    k.eps0 = 8.8541878128e-12;     // F/m
    k.mu0 = 1.25663706212e-6;      // N/A^2
    k.c = 2.99792458e8;            // m/s
    return k;
  }

  static PhysicalConstants named(const std::string& name) {
    if (name == "natural") return natural();
    if (name == "SI" || name == "si") return si();
    throw ConfigError("unknown constants set: " + name);
  }
};

// One electron-volt in joules, used when reporting SI energies.
inline constexpr double kElectronVolt = 1.602176634e-19;

}  // namespace qmflow

#pragma once

#include <vector>

#include "qmflow/errors.hpp"
#include "qmflow/vec3.hpp"

namespace qmflow {

// Discretely sampled particle trajectory r(t). Used both for action integrals
// along the probability flow and for transported-density checks.
struct FlowTrajectory {
  std::vector<double> t;
  std::vector<Point3> r;

  void validate() const {
    if (t.size() != r.size() || t.size() < 2)
      throw PreconditionError("trajectory: need matching time/position samples (>= 2)");
    for (size_t i = 1; i < t.size(); ++i)
      if (!(t[i] > t[i - 1])) throw PreconditionError("trajectory: times must increase");
  }
};

}  // namespace qmflow

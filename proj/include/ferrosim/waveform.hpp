#pragma once

#include "ferrosim/errors.hpp"

namespace ferrosim {

// Quasi-static triangular drive: v_min -> v_max -> v_min at a fixed slew
// rate, sampled on steps_per_branch uniform voltage intervals per branch.
// polarity = -1 mirrors the whole waveform (useful for symmetry checks).
struct TriangularWave {
  double v_min = -3.0;   // V
  double v_max = 3.0;    // V
  double slew = 1.0;     // V/s
  int steps_per_branch = 600;
  int polarity = 1;

  void validate() const {
    if (!(v_max >= v_min)) throw ConfigError("waveform needs v_max >= v_min");
    if (!(slew > 0.0)) throw ConfigError("waveform slew rate must be positive");
    if (steps_per_branch < 1)
      throw ConfigError("waveform needs at least one step per branch");
    if (polarity != 1 && polarity != -1)
      throw ConfigError("waveform polarity must be +1 or -1");
  }

  double step_dv() const { return (v_max - v_min) / steps_per_branch; }
  // Duration of one voltage step; a flat waveform still advances in time.
  double step_dt() const {
    const double dv = step_dv();
    return dv > 0.0 ? dv / slew : 1.0 / slew;
  }
};

}  // namespace ferrosim

#pragma once

#include <vector>

#include "ferrosim/landau.hpp"
#include "ferrosim/waveform.hpp"

namespace ferrosim {

enum class Branch { kForward, kBackward };

inline const char* branch_name(Branch b) {
  return b == Branch::kForward ? "forward" : "backward";
}

// One sample of a polarization-voltage loop. p_t = p_s + eps0 eps_r E holds
// at every record; p_s is the area-weighted ferroelectric mean with spacer
// columns contributing only the linear background.
struct PvRecord {
  double time = 0.0;     // s
  double voltage = 0.0;  // V
  double e_field = 0.0;  // V/m
  double p_s = 0.0;      // C/m^2
  double p_t = 0.0;      // C/m^2
  Branch branch = Branch::kForward;
};

struct PvTrace {
  std::vector<PvRecord> records;
  std::vector<double> final_polarizations;  // per grain, C/m^2
};

// Metal-ferroelectric-metal capacitor loop: every grain sees the same field
// V(t)/t_f, each is relaxed quasi-statically at every voltage step, and the
// trace reports one full period starting at v_min. Grain polarizations start
// from the values stored in the ensemble.
PvTrace mfm_loop(const GrainEnsemble& ensemble, const TriangularWave& wave,
                 double eps_r_f, double t_f = 10e-9);

}  // namespace ferrosim

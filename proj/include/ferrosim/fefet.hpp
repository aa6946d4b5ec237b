#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ferrosim/mfm.hpp"
#include "ferrosim/poisson.hpp"

namespace ferrosim {

// Channel mobility: either a constant (polycrystalline channels) or an
// effective-field roll-off mu0 / (1 + (E_eff/E_crit)^exponent).
struct MobilityModel {
  enum class Kind { kConstant, kEffectiveField };
  Kind kind = Kind::kEffectiveField;
  double mu0 = 300e-4;     // m^2/(V s)
  double e_crit = 1e8;     // V/m
  double exponent = 1.6;

  double value(double e_eff) const;
};

enum class ChannelMode { kEnhancement, kDepletion };

inline const char* mode_name(ChannelMode m) {
  return m == ChannelMode::kEnhancement ? "enhancement" : "depletion";
}

// One transistor: a gate stack shared by all slices, one grain per slice
// along the transport direction, spacer columns in between.
struct FefetDesign {
  Stack1D stack;           // mesh is built on first use if absent
  GrainEnsemble ensemble;
  MobilityModel mobility;
  std::optional<TrapDistribution> traps;
  double gate_length = 24e-9;  // m, approx n*grain + (n-1)*spacer
  double width = 1e-6;         // m
};

// Double voltage ramp for the transfer sweep, plus the read conditions the
// metrics are extracted at.
struct SweepProgram {
  double v_start = -3.0;   // V
  double v_peak = 3.0;     // V
  double slew = 1.0;       // V/s
  int steps_per_branch = 300;
  double v_ds = 0.05;      // V
  double i_ref = 1e-8;     // A/um, memory-window reference current
  double v_read = 1.75;    // V, HRS/LRS read voltage

  void validate() const;
};

struct IvRecord {
  double v_gs = 0.0;
  Branch branch = Branch::kForward;
  double i_ds = 0.0;               // A/um of width
  std::vector<double> p_s;         // per grain, C/m^2
  std::vector<double> n_inv;       // per slice, 1/m^2
  std::vector<double> q_trap;      // per slice, C/m^2
  bool open_channel = false;       // some slice had zero conductance
};

struct IVTrace {
  std::vector<IvRecord> records;
  int n_slices = 0;

  double n_inv_mean(const IvRecord& r) const;
  double q_trap_mean(const IvRecord& r) const;
  double p_s_mean(const IvRecord& r) const;
};

// Sheet conductance of one slice, G = W q mu_eff N_inv / L.
double slice_conductance(const SliceState& state, const MobilityModel& mob,
                         double length, double width);

// Slices and spacer segments in series; a spacer conducts with the mean
// sheet density and mean effective field of its two neighbours. Any zero
// link opens the channel (zero current).
double series_current(const std::vector<SliceState>& slices,
                      const GrainEnsemble& ensemble, const MobilityModel& mob,
                      double width, double v_ds, bool* open_channel);

// Quasi-static transfer sweep v_start -> v_peak -> v_start. All grains start
// at -P_r (erased), each bias step relaxes every slice self-consistently.
// The peak record is emitted on both branches so the two branches cover
// identical voltage grids.
IVTrace sweep_ids_vgs(const FefetDesign& design, const SweepProgram& program,
                      const SelfConsistentOptions& opts = {});

// |V_fwd - V_bwd| where each branch crosses i_ref, interpolating linearly in
// log(I). Throws SolverError naming the branch that never crosses.
double memory_window(const IVTrace& trace, double i_ref);

struct ResistancePair {
  double hrs = 0.0;   // Ohm (for the full device width)
  double lrs = 0.0;   // Ohm
  double ratio = 1.0;
  bool zero_current = false;  // HRS read current vanished; hrs is +inf
};

// Branch currents at v_read mapped to states by comparison: the lower
// current is the HRS. ratio = HRS/LRS >= 1.
ResistancePair hrs_lrs(const IVTrace& trace, double v_read, double v_ds,
                       double width);

// Gate voltages where the grain-averaged P_S crosses zero on each branch;
// the difference is the polarization loop width.
double ps_loop_width(const IVTrace& trace);

// One entry of the technology grid study.
struct DesignResult {
  std::string id;
  ChannelMode mode = ChannelMode::kDepletion;
  double doping_cm3 = 0.0;   // magnitude
  double t_ch_nm = 0.0;
  double mw = 0.0;           // V, NaN when undefined
  double hrs = 0.0;          // Ohm
  double lrs = 0.0;          // Ohm
  double ratio = 0.0;
  double peak_i_fwd = 0.0;   // A/um
  double peak_i_bwd = 0.0;   // A/um
  std::string status = "ok";
  IVTrace trace;
};

struct DesignGrid {
  std::vector<ChannelMode> modes = {ChannelMode::kDepletion,
                                    ChannelMode::kEnhancement};
  std::vector<double> dopings_cm3 = {1e16, 1e17, 1e18};
  std::vector<double> t_ch_nm = {40.0, 80.0};
};

// Runs the full mode x doping x thickness grid on a common grain ensemble
// (one draw from the master seed, so designs differ only by the knob under
// study). Designs run in parallel on at most `jobs` workers; failures are
// recorded in the row's status and do not stop the study.
std::vector<DesignResult> design_study(const FefetDesign& base,
                                       const SweepProgram& program,
                                       const DesignGrid& grid, int jobs,
                                       const SelfConsistentOptions& opts = {});

}  // namespace ferrosim

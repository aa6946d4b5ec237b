#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ferrosim/fefet.hpp"

namespace ferrosim {

enum class StudyKind { kMfmLoop, kFefetSweep, kDesignStudy, kLandauExtract };

const char* study_name(StudyKind k);

// Full run description in the units of the config file (nm, cm^-3, eV, V,
// V/s, cm^2/Vs). Values stay in these units so the manifest echo re-parses
// bit-identically; conversion to SI happens once, in the make_* resolvers.
struct SimConfig {
  StudyKind kind = StudyKind::kMfmLoop;

  // [ferro]
  double alpha = -5.37e8;       // m/F
  double beta = 9.62e8;         // m^5/(F C^2)
  double gamma = 9.59e10;       // m^9/(F C^4)
  double eps_r_ferro = 30.0;
  double resistivity = 30.0;    // Ohm m
  double t_ferro_nm = 10.0;
  int n_grains = 100;
  double grain_length_nm = 6.0;
  double spacer_nm = 0.5;
  double sigma_ec_ratio = 0.0;

  // [stack]
  double t_il_nm = 1.0;
  double t_ch_nm = 6.0;
  double t_box_nm = 30.0;
  double eps_il = 3.9;
  double eps_ch = 11.7;
  double eps_box = 3.9;
  double doping_cm3 = 0.0;      // magnitude
  int doping_sign = 0;          // +1 donor, -1 acceptor, 0 from channel mode
  double gate_workfunction_ev = 4.6;
  double back_workfunction_ev = 4.6;
  double temperature_k = 300.0;

  // [traps]
  bool traps_enabled = true;
  double d_acc_percm3ev = 8e20;
  double d_don_percm3ev = 4e20;
  double acc_low_ev = -0.56;    // trap bands, eV relative to midgap
  double acc_high_ev = 0.56;
  double don_low_ev = -0.56;
  double don_high_ev = 0.56;
  int trap_grid_points = 33;
  double fast_exchange_nm = 0.5;  // depth of the always-equilibrated zone

  // [waveform]
  double v_min = -3.0;
  double v_max = 3.0;
  double wave_slew = 1.0;       // V/s
  int wave_steps = 600;
  int polarity = 1;

  // [sweep]
  double v_start = -3.0;
  double v_peak = 3.0;
  double sweep_slew = 1.0;      // V/s
  int sweep_steps = 300;
  double v_ds = 0.05;
  double i_ref = 1e-8;          // A/um
  double v_read = 1.75;

  // [fefet]
  ChannelMode mode = ChannelMode::kEnhancement;
  double width_um = 1.0;
  double gate_length_nm = 24.0;
  MobilityModel::Kind mobility_kind = MobilityModel::Kind::kEffectiveField;
  double mu0_cm2 = 300.0;       // cm^2/(V s)
  double e_crit = 1e8;          // V/m
  double mobility_exponent = 1.6;

  // [study]
  std::vector<std::string> study_modes = {"depletion", "enhancement"};
  std::vector<double> study_dopings_cm3 = {1e16, 1e17, 1e18};
  std::vector<double> study_t_ch_nm = {40.0, 80.0};

  // [numerics]
  double mesh_refinement = 1.0;
  double poisson_tol = 1e-6;
  double dp_tol = 1e-4;

  // [run]
  std::uint64_t seed = 1;
  int jobs = 0;                 // 0: one worker per hardware thread
};

// Study-specific defaults: the MFM loop is the 100-grain capacitor, the
// transfer sweep is the 4-grain SOI device, the design study is the 25-grain
// 150 nm-gate polycrystalline-channel device on a 200 nm back oxide with
// constant 10 cm^2/Vs mobility.
SimConfig default_config(StudyKind kind);

// Parses a flat sectioned key-value document. Unknown sections or keys,
// malformed values and out-of-range settings raise ConfigError with the
// line number. `kind_hint` (the CLI subcommand) supplies the study kind when
// the document has no `study` key; a conflicting key is an error.
SimConfig parse_config(const std::string& text,
                       std::optional<StudyKind> kind_hint = std::nullopt);

// Canonical config document with every key spelled out. Guaranteed to
// re-parse to the same SimConfig (values printed with round-trip precision).
std::string serialize_config(const SimConfig& cfg);

// SI resolvers; these are the only unit conversions outside the parser.
LandauCoefficients make_coefficients(const SimConfig& cfg);
GrainEnsemble make_ensemble(const SimConfig& cfg);
Stack1D make_stack(const SimConfig& cfg);  // mesh built at cfg.mesh_refinement
std::optional<TrapDistribution> make_traps(const SimConfig& cfg);
TriangularWave make_wave(const SimConfig& cfg);
SweepProgram make_sweep(const SimConfig& cfg);
MobilityModel make_mobility(const SimConfig& cfg);
FefetDesign make_design(const SimConfig& cfg);
DesignGrid make_grid(const SimConfig& cfg);
SelfConsistentOptions make_numerics(const SimConfig& cfg);

}  // namespace ferrosim

#include "ferrosim/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "ferrosim/errors.hpp"

namespace ferrosim {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double to_double(const std::string& v, int line) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    fail(line, "expected a number, got '" + v + "'");
  return x;
}

int to_int(const std::string& v, int line) {
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    fail(line, "expected an integer, got '" + v + "'");
  return static_cast<int>(x);
}

std::uint64_t to_u64(const std::string& v, int line) {
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    fail(line, "expected an unsigned integer, got '" + v + "'");
  return static_cast<std::uint64_t>(x);
}

bool to_bool(const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  fail(line, "expected a boolean, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(v);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

StudyKind to_study(const std::string& v, int line) {
  if (v == "mfm-loop") return StudyKind::kMfmLoop;
  if (v == "fefet-sweep") return StudyKind::kFefetSweep;
  if (v == "design-study") return StudyKind::kDesignStudy;
  if (v == "landau-extract") return StudyKind::kLandauExtract;
  fail(line, "unknown study kind '" + v + "'");
}

ChannelMode to_mode(const std::string& v, int line) {
  if (v == "depletion") return ChannelMode::kDepletion;
  if (v == "enhancement") return ChannelMode::kEnhancement;
  fail(line, "unknown channel mode '" + v + "'");
}

// "1e17", "1e17 donor" or "1e17 acceptor".
void parse_doping(const std::string& v, int line, SimConfig& cfg) {
  const std::size_t sp = v.find_first_of(" \t");
  const std::string num = sp == std::string::npos ? v : trim(v.substr(0, sp));
  const std::string word = sp == std::string::npos ? "" : trim(v.substr(sp));
  cfg.doping_cm3 = to_double(num, line);
  if (cfg.doping_cm3 < 0.0) fail(line, "doping magnitude must be >= 0");
  if (word.empty())
    cfg.doping_sign = 0;
  else if (word == "donor")
    cfg.doping_sign = 1;
  else if (word == "acceptor")
    cfg.doping_sign = -1;
  else
    fail(line, "doping polarity must be 'donor' or 'acceptor', got '" + word +
                   "'");
}

// Shortest decimal form that parses back to the same double, so the
// manifest echo is bit-exact.
std::string fmt(double x) {
  char buf[40];
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

std::string fmt_list(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += fmt(xs[i]);
  }
  return out;
}

void apply_key(SimConfig& cfg, const std::string& sec, const std::string& key,
               const std::string& val, int line,
               std::optional<StudyKind>* study_key) {
  auto d = [&] { return to_double(val, line); };
  auto i = [&] { return to_int(val, line); };

  if (sec.empty() || sec == "run") {
    if (key == "study") { *study_key = to_study(val, line); return; }
    if (sec.empty()) fail(line, "key '" + key + "' before any [section]");
    if (key == "seed") { cfg.seed = to_u64(val, line); return; }
    if (key == "jobs") { cfg.jobs = i(); return; }
  } else if (sec == "ferro") {
    if (key == "alpha") { cfg.alpha = d(); return; }
    if (key == "beta") { cfg.beta = d(); return; }
    if (key == "gamma") { cfg.gamma = d(); return; }
    if (key == "eps_r") { cfg.eps_r_ferro = d(); return; }
    if (key == "resistivity_ohm_m") { cfg.resistivity = d(); return; }
    if (key == "t_ferro_nm") { cfg.t_ferro_nm = d(); return; }
    if (key == "n_grains") { cfg.n_grains = i(); return; }
    if (key == "grain_length_nm") { cfg.grain_length_nm = d(); return; }
    if (key == "spacer_nm") { cfg.spacer_nm = d(); return; }
    if (key == "sigma_ec_ratio") { cfg.sigma_ec_ratio = d(); return; }
  } else if (sec == "stack") {
    if (key == "t_il_nm") { cfg.t_il_nm = d(); return; }
    if (key == "t_ch_nm") { cfg.t_ch_nm = d(); return; }
    if (key == "t_box_nm") { cfg.t_box_nm = d(); return; }
    if (key == "eps_il") { cfg.eps_il = d(); return; }
    if (key == "eps_ch") { cfg.eps_ch = d(); return; }
    if (key == "eps_box") { cfg.eps_box = d(); return; }
    if (key == "doping_cm3") { parse_doping(val, line, cfg); return; }
    if (key == "gate_workfunction_ev") { cfg.gate_workfunction_ev = d(); return; }
    if (key == "back_workfunction_ev") { cfg.back_workfunction_ev = d(); return; }
    if (key == "temperature_k") { cfg.temperature_k = d(); return; }
  } else if (sec == "traps") {
    if (key == "enabled") { cfg.traps_enabled = to_bool(val, line); return; }
    if (key == "density_acceptor_percm3ev") { cfg.d_acc_percm3ev = d(); return; }
    if (key == "density_donor_percm3ev") { cfg.d_don_percm3ev = d(); return; }
    if (key == "acceptor_band_low_ev") { cfg.acc_low_ev = d(); return; }
    if (key == "acceptor_band_high_ev") { cfg.acc_high_ev = d(); return; }
    if (key == "donor_band_low_ev") { cfg.don_low_ev = d(); return; }
    if (key == "donor_band_high_ev") { cfg.don_high_ev = d(); return; }
    if (key == "energy_grid_points") { cfg.trap_grid_points = i(); return; }
    if (key == "fast_exchange_nm") { cfg.fast_exchange_nm = d(); return; }
  } else if (sec == "waveform") {
    if (key == "v_min") { cfg.v_min = d(); return; }
    if (key == "v_max") { cfg.v_max = d(); return; }
    if (key == "slew_v_per_s") { cfg.wave_slew = d(); return; }
    if (key == "steps_per_branch") { cfg.wave_steps = i(); return; }
    if (key == "polarity") { cfg.polarity = i(); return; }
  } else if (sec == "sweep") {
    if (key == "v_start") { cfg.v_start = d(); return; }
    if (key == "v_peak") { cfg.v_peak = d(); return; }
    if (key == "slew_v_per_s") { cfg.sweep_slew = d(); return; }
    if (key == "steps_per_branch") { cfg.sweep_steps = i(); return; }
    if (key == "v_ds") { cfg.v_ds = d(); return; }
    if (key == "i_ref_a_per_um") { cfg.i_ref = d(); return; }
    if (key == "v_read") { cfg.v_read = d(); return; }
  } else if (sec == "fefet") {
    if (key == "mode") { cfg.mode = to_mode(val, line); return; }
    if (key == "width_um") { cfg.width_um = d(); return; }
    if (key == "gate_length_nm") { cfg.gate_length_nm = d(); return; }
    if (key == "mobility") {
      if (val == "constant") cfg.mobility_kind = MobilityModel::Kind::kConstant;
      else if (val == "effective-field")
        cfg.mobility_kind = MobilityModel::Kind::kEffectiveField;
      else fail(line, "mobility must be 'constant' or 'effective-field'");
      return;
    }
    if (key == "mu0_cm2") { cfg.mu0_cm2 = d(); return; }
    if (key == "e_crit_v_per_m") { cfg.e_crit = d(); return; }
    if (key == "mobility_exponent") { cfg.mobility_exponent = d(); return; }
  } else if (sec == "study") {
    if (key == "modes") {
      cfg.study_modes.clear();
      for (const auto& m : split_list(val)) {
        to_mode(m, line);  // validate
        cfg.study_modes.push_back(m);
      }
      if (cfg.study_modes.empty()) fail(line, "modes list is empty");
      return;
    }
    if (key == "dopings_cm3") {
      cfg.study_dopings_cm3.clear();
      for (const auto& m : split_list(val))
        cfg.study_dopings_cm3.push_back(to_double(m, line));
      if (cfg.study_dopings_cm3.empty()) fail(line, "dopings list is empty");
      return;
    }
    if (key == "t_ch_nm") {
      cfg.study_t_ch_nm.clear();
      for (const auto& m : split_list(val))
        cfg.study_t_ch_nm.push_back(to_double(m, line));
      if (cfg.study_t_ch_nm.empty()) fail(line, "thickness list is empty");
      return;
    }
  } else if (sec == "numerics") {
    if (key == "mesh_refinement") { cfg.mesh_refinement = d(); return; }
    if (key == "poisson_tol") { cfg.poisson_tol = d(); return; }
    if (key == "dp_tol") { cfg.dp_tol = d(); return; }
  } else {
    fail(line, "unknown section [" + sec + "]");
  }
  fail(line, "unknown key '" + key + "' in section [" + sec + "]");
}

void check_positive(double x, const char* name) {
  if (!(x > 0.0))
    throw ConfigError(std::string(name) + " must be positive");
}

void validate_config(const SimConfig& cfg) {
  if (!(cfg.sigma_ec_ratio >= 0.0 && cfg.sigma_ec_ratio < 1.0))
    throw ConfigError("sigma_ec_ratio must lie in [0, 1)");
  if (cfg.n_grains < 1) throw ConfigError("n_grains must be at least 1");
  check_positive(cfg.t_ferro_nm, "t_ferro_nm");
  check_positive(cfg.t_il_nm, "t_il_nm");
  check_positive(cfg.t_ch_nm, "t_ch_nm");
  check_positive(cfg.t_box_nm, "t_box_nm");
  check_positive(cfg.grain_length_nm, "grain_length_nm");
  if (cfg.spacer_nm < 0.0) throw ConfigError("spacer_nm must be >= 0");
  check_positive(cfg.eps_r_ferro, "eps_r");
  check_positive(cfg.eps_il, "eps_il");
  check_positive(cfg.eps_ch, "eps_ch");
  check_positive(cfg.eps_box, "eps_box");
  check_positive(cfg.resistivity, "resistivity_ohm_m");
  check_positive(cfg.temperature_k, "temperature_k");
  check_positive(cfg.width_um, "width_um");
  check_positive(cfg.gate_length_nm, "gate_length_nm");
  check_positive(cfg.mu0_cm2, "mu0_cm2");
  check_positive(cfg.e_crit, "e_crit_v_per_m");
  check_positive(cfg.mesh_refinement, "mesh_refinement");
  if (cfg.mesh_refinement > 16.0)
    throw ConfigError("mesh_refinement above 16 is not supported");
  check_positive(cfg.poisson_tol, "poisson_tol");
  check_positive(cfg.dp_tol, "dp_tol");
  if (cfg.d_acc_percm3ev < 0.0 || cfg.d_don_percm3ev < 0.0)
    throw ConfigError("trap densities must be >= 0");
  if (cfg.trap_grid_points < 2)
    throw ConfigError("energy_grid_points must be at least 2");
  if (cfg.fast_exchange_nm < 0.0)
    throw ConfigError("fast_exchange_nm must be >= 0");
  if (cfg.jobs < 0) throw ConfigError("jobs must be >= 0");
  // Doping polarity must agree with the channel mode for the studies that
  // build a transistor.
  if ((cfg.kind == StudyKind::kFefetSweep ||
       cfg.kind == StudyKind::kDesignStudy) &&
      cfg.doping_cm3 > 0.0 && cfg.doping_sign != 0) {
    const int wanted = cfg.mode == ChannelMode::kDepletion ? 1 : -1;
    if (cfg.doping_sign != wanted)
      throw ConfigError(std::string("doping polarity conflicts with ") +
                        mode_name(cfg.mode) +
                        " mode (depletion needs donors, enhancement needs "
                        "acceptors)");
  }
}

}  // namespace

const char* study_name(StudyKind k) {
  switch (k) {
    case StudyKind::kMfmLoop: return "mfm-loop";
    case StudyKind::kFefetSweep: return "fefet-sweep";
    case StudyKind::kDesignStudy: return "design-study";
    case StudyKind::kLandauExtract: return "landau-extract";
  }
  return "?";
}

SimConfig default_config(StudyKind kind) {
  SimConfig cfg;  // member initializers are the MFM-capacitor defaults
  cfg.kind = kind;
  switch (kind) {
    case StudyKind::kMfmLoop:
    case StudyKind::kLandauExtract:
      break;
    case StudyKind::kFefetSweep:
      cfg.n_grains = 4;
      cfg.sigma_ec_ratio = 0.4;
      break;
    case StudyKind::kDesignStudy:
      cfg.n_grains = 25;
      cfg.sigma_ec_ratio = 0.4;
      cfg.gate_length_nm = 150.0;
      cfg.t_ch_nm = 40.0;
      cfg.t_box_nm = 200.0;
      cfg.mode = ChannelMode::kDepletion;
      cfg.mobility_kind = MobilityModel::Kind::kConstant;
      cfg.mu0_cm2 = 10.0;
      break;
  }
  return cfg;
}

SimConfig parse_config(const std::string& text,
                       std::optional<StudyKind> kind_hint) {
  struct Entry {
    std::string sec, key, val;
    int line;
  };
  std::vector<Entry> entries;
  std::optional<StudyKind> study_key;

  std::string sec;
  std::stringstream ss(text);
  std::string raw;
  int line = 0;
  while (std::getline(ss, raw)) {
    ++line;
    const std::size_t hash = raw.find_first_of("#;");
    if (hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "unterminated section header");
      sec = trim(s.substr(1, s.size() - 2));
      if (sec.empty()) fail(line, "empty section name");
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    Entry e{sec, trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line};
    if (e.key.empty()) fail(line, "empty key");
    entries.push_back(std::move(e));
  }

  // The study kind decides the defaults, so resolve it first.
  SimConfig probe;
  for (const auto& e : entries)
    if ((e.sec.empty() || e.sec == "run") && e.key == "study")
      apply_key(probe, e.sec, e.key, e.val, e.line, &study_key);
  if (study_key && kind_hint && *study_key != *kind_hint)
    throw ConfigError(std::string("config study kind '") +
                      study_name(*study_key) + "' conflicts with requested '" +
                      study_name(*kind_hint) + "'");
  if (!study_key && !kind_hint)
    throw ConfigError("config does not set the study kind");
  const StudyKind kind = study_key ? *study_key : *kind_hint;

  SimConfig cfg = default_config(kind);
  std::optional<StudyKind> ignored;
  for (const auto& e : entries)
    apply_key(cfg, e.sec, e.key, e.val, e.line, &ignored);
  validate_config(cfg);
  return cfg;
}

std::string serialize_config(const SimConfig& cfg) {
  std::string out;
  auto kv = [&](const char* key, const std::string& val) {
    out += key;
    out += " = ";
    out += val;
    out += "\n";
  };
  out += "[run]\n";
  kv("study", study_name(cfg.kind));
  kv("seed", std::to_string(cfg.seed));
  kv("jobs", std::to_string(cfg.jobs));
  out += "\n[ferro]\n";
  kv("alpha", fmt(cfg.alpha));
  kv("beta", fmt(cfg.beta));
  kv("gamma", fmt(cfg.gamma));
  kv("eps_r", fmt(cfg.eps_r_ferro));
  kv("resistivity_ohm_m", fmt(cfg.resistivity));
  kv("t_ferro_nm", fmt(cfg.t_ferro_nm));
  kv("n_grains", std::to_string(cfg.n_grains));
  kv("grain_length_nm", fmt(cfg.grain_length_nm));
  kv("spacer_nm", fmt(cfg.spacer_nm));
  kv("sigma_ec_ratio", fmt(cfg.sigma_ec_ratio));
  out += "\n[stack]\n";
  kv("t_il_nm", fmt(cfg.t_il_nm));
  kv("t_ch_nm", fmt(cfg.t_ch_nm));
  kv("t_box_nm", fmt(cfg.t_box_nm));
  kv("eps_il", fmt(cfg.eps_il));
  kv("eps_ch", fmt(cfg.eps_ch));
  kv("eps_box", fmt(cfg.eps_box));
  {
    std::string dop = fmt(cfg.doping_cm3);
    if (cfg.doping_sign > 0) dop += " donor";
    if (cfg.doping_sign < 0) dop += " acceptor";
    kv("doping_cm3", dop);
  }
  kv("gate_workfunction_ev", fmt(cfg.gate_workfunction_ev));
  kv("back_workfunction_ev", fmt(cfg.back_workfunction_ev));
  kv("temperature_k", fmt(cfg.temperature_k));
  out += "\n[traps]\n";
  kv("enabled", cfg.traps_enabled ? "true" : "false");
  kv("density_acceptor_percm3ev", fmt(cfg.d_acc_percm3ev));
  kv("density_donor_percm3ev", fmt(cfg.d_don_percm3ev));
  kv("acceptor_band_low_ev", fmt(cfg.acc_low_ev));
  kv("acceptor_band_high_ev", fmt(cfg.acc_high_ev));
  kv("donor_band_low_ev", fmt(cfg.don_low_ev));
  kv("donor_band_high_ev", fmt(cfg.don_high_ev));
  kv("energy_grid_points", std::to_string(cfg.trap_grid_points));
  kv("fast_exchange_nm", fmt(cfg.fast_exchange_nm));
  out += "\n[waveform]\n";
  kv("v_min", fmt(cfg.v_min));
  kv("v_max", fmt(cfg.v_max));
  kv("slew_v_per_s", fmt(cfg.wave_slew));
  kv("steps_per_branch", std::to_string(cfg.wave_steps));
  kv("polarity", std::to_string(cfg.polarity));
  out += "\n[sweep]\n";
  kv("v_start", fmt(cfg.v_start));
  kv("v_peak", fmt(cfg.v_peak));
  kv("slew_v_per_s", fmt(cfg.sweep_slew));
  kv("steps_per_branch", std::to_string(cfg.sweep_steps));
  kv("v_ds", fmt(cfg.v_ds));
  kv("i_ref_a_per_um", fmt(cfg.i_ref));
  kv("v_read", fmt(cfg.v_read));
  out += "\n[fefet]\n";
  kv("mode", mode_name(cfg.mode));
  kv("width_um", fmt(cfg.width_um));
  kv("gate_length_nm", fmt(cfg.gate_length_nm));
  kv("mobility", cfg.mobility_kind == MobilityModel::Kind::kConstant
                     ? "constant"
                     : "effective-field");
  kv("mu0_cm2", fmt(cfg.mu0_cm2));
  kv("e_crit_v_per_m", fmt(cfg.e_crit));
  kv("mobility_exponent", fmt(cfg.mobility_exponent));
  out += "\n[study]\n";
  {
    std::string modes;
    for (std::size_t i = 0; i < cfg.study_modes.size(); ++i) {
      if (i) modes += ", ";
      modes += cfg.study_modes[i];
    }
    kv("modes", modes);
  }
  kv("dopings_cm3", fmt_list(cfg.study_dopings_cm3));
  kv("t_ch_nm", fmt_list(cfg.study_t_ch_nm));
  out += "\n[numerics]\n";
  kv("mesh_refinement", fmt(cfg.mesh_refinement));
  kv("poisson_tol", fmt(cfg.poisson_tol));
  kv("dp_tol", fmt(cfg.dp_tol));
  return out;
}

LandauCoefficients make_coefficients(const SimConfig& cfg) {
  LandauCoefficients c;
  c.alpha = cfg.alpha;
  c.beta = cfg.beta;
  c.gamma = cfg.gamma;
  c.eps_r_background = cfg.eps_r_ferro;
  c.resistivity = cfg.resistivity;
  return c;
}

GrainEnsemble make_ensemble(const SimConfig& cfg) {
  GrainEnsemble e =
      sample_ensemble(cfg.n_grains, cfg.grain_length_nm * 1e-9,
                      make_coefficients(cfg), cfg.sigma_ec_ratio, cfg.seed);
  e.spacer_thickness = cfg.spacer_nm * 1e-9;
  e.spacer_eps_r = cfg.eps_r_ferro;
  return e;
}

Stack1D make_stack(const SimConfig& cfg) {
  Stack1D s;
  s.t_ferro = cfg.t_ferro_nm * 1e-9;
  s.t_il = cfg.t_il_nm * 1e-9;
  s.t_semi = cfg.t_ch_nm * 1e-9;
  s.t_box = cfg.t_box_nm * 1e-9;
  s.eps_ferro = cfg.eps_r_ferro;
  s.eps_il = cfg.eps_il;
  s.eps_semi = cfg.eps_ch;
  s.eps_box = cfg.eps_box;
  const int sign = cfg.doping_sign != 0
                       ? cfg.doping_sign
                       : (cfg.mode == ChannelMode::kDepletion ? 1 : -1);
  s.doping = sign * cfg.doping_cm3 * 1e6;
  s.gate_workfunction = cfg.gate_workfunction_ev;
  s.back_workfunction = cfg.back_workfunction_ev;
  s.temperature = cfg.temperature_k;
  return build_mesh(s, cfg.mesh_refinement);
}

std::optional<TrapDistribution> make_traps(const SimConfig& cfg) {
  if (!cfg.traps_enabled) return std::nullopt;
  TrapDistribution t;
  t.density_acceptor = cfg.d_acc_percm3ev * 1e6;
  t.density_donor = cfg.d_don_percm3ev * 1e6;
  t.acc_e_low = cfg.acc_low_ev;
  t.acc_e_high = cfg.acc_high_ev;
  t.don_e_low = cfg.don_low_ev;
  t.don_e_high = cfg.don_high_ev;
  t.spatial_extent = cfg.t_il_nm * 1e-9;
  t.fast_exchange_depth = cfg.fast_exchange_nm * 1e-9;
  t.energy_grid_points = cfg.trap_grid_points;
  t.validate();
  return t;
}

TriangularWave make_wave(const SimConfig& cfg) {
  TriangularWave w;
  w.v_min = cfg.v_min;
  w.v_max = cfg.v_max;
  w.slew = cfg.wave_slew;
  w.steps_per_branch = cfg.wave_steps;
  w.polarity = cfg.polarity;
  w.validate();
  return w;
}

SweepProgram make_sweep(const SimConfig& cfg) {
  SweepProgram p;
  p.v_start = cfg.v_start;
  p.v_peak = cfg.v_peak;
  p.slew = cfg.sweep_slew;
  p.steps_per_branch = cfg.sweep_steps;
  p.v_ds = cfg.v_ds;
  p.i_ref = cfg.i_ref;
  p.v_read = cfg.v_read;
  p.validate();
  return p;
}

MobilityModel make_mobility(const SimConfig& cfg) {
  MobilityModel m;
  m.kind = cfg.mobility_kind;
  m.mu0 = cfg.mu0_cm2 * 1e-4;
  m.e_crit = cfg.e_crit;
  m.exponent = cfg.mobility_exponent;
  return m;
}

FefetDesign make_design(const SimConfig& cfg) {
  FefetDesign d;
  d.stack = make_stack(cfg);
  d.ensemble = make_ensemble(cfg);
  d.mobility = make_mobility(cfg);
  d.traps = make_traps(cfg);
  d.gate_length = cfg.gate_length_nm * 1e-9;
  d.width = cfg.width_um * 1e-6;
  return d;
}

DesignGrid make_grid(const SimConfig& cfg) {
  DesignGrid g;
  g.modes.clear();
  for (const auto& m : cfg.study_modes)
    g.modes.push_back(m == "depletion" ? ChannelMode::kDepletion
                                       : ChannelMode::kEnhancement);
  g.dopings_cm3 = cfg.study_dopings_cm3;
  g.t_ch_nm = cfg.study_t_ch_nm;
  return g;
}

SelfConsistentOptions make_numerics(const SimConfig& cfg) {
  SelfConsistentOptions o;
  o.dp_tol = cfg.dp_tol;
  o.poisson.tol = cfg.poisson_tol;
  return o;
}

}  // namespace ferrosim

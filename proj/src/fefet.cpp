#include "ferrosim/fefet.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include "ferrosim/constants.hpp"
#include "ferrosim/errors.hpp"

namespace ferrosim {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Per-branch samples of one quantity, in ascending gate-voltage order.
struct BranchCurve {
  std::vector<double> v;
  std::vector<double> y;
};

template <typename F>
BranchCurve branch_curve(const IVTrace& trace, Branch b, F&& f) {
  BranchCurve c;
  for (const auto& r : trace.records) {
    if (r.branch != b) continue;
    c.v.push_back(r.v_gs);
    c.y.push_back(f(r));
  }
  if (b == Branch::kBackward) {  // recorded descending
    std::reverse(c.v.begin(), c.v.end());
    std::reverse(c.y.begin(), c.y.end());
  }
  return c;
}

// First v where the curve crosses `ref`, interpolated linearly in log(y).
// Pairs with a non-positive sample cannot be log-interpolated and are
// skipped, which also skips open-channel records.
double log_crossing(const BranchCurve& c, double ref, const char* name) {
  for (std::size_t k = 0; k + 1 < c.y.size(); ++k) {
    const double y0 = c.y[k], y1 = c.y[k + 1];
    if (!(y0 > 0.0) || !(y1 > 0.0)) continue;
    if (y0 == ref) return c.v[k];
    if ((y0 - ref) * (y1 - ref) > 0.0) continue;
    const double t =
        (std::log(ref) - std::log(y0)) / (std::log(y1) - std::log(y0));
    return c.v[k] + t * (c.v[k + 1] - c.v[k]);
  }
  throw SolverError(std::string("memory window undefined: ") + name +
                    " branch never crosses the reference current");
}

// Sample the curve at v, logarithmic in y where both bracket values allow.
double value_at(const BranchCurve& c, double v, const char* name) {
  if (c.v.size() < 2 || v < c.v.front() || v > c.v.back())
    throw ConfigError(std::string("read voltage outside the ") + name +
                      " branch sweep range");
  std::size_t k = 0;
  while (k + 2 < c.v.size() && c.v[k + 1] < v) ++k;
  const double v0 = c.v[k], v1 = c.v[k + 1];
  const double y0 = c.y[k], y1 = c.y[k + 1];
  const double t = v1 > v0 ? (v - v0) / (v1 - v0) : 0.0;
  if (y0 > 0.0 && y1 > 0.0)
    return std::exp(std::log(y0) + t * (std::log(y1) - std::log(y0)));
  return y0 + t * (y1 - y0);
}

// First zero crossing of y over the samples in the order given (native
// sweep order for hysteretic quantities), linear interpolation.
double zero_crossing(const std::vector<double>& v, const std::vector<double>& y,
                     const char* name) {
  for (std::size_t k = 0; k + 1 < y.size(); ++k) {
    if (y[k] == 0.0) return v[k];
    if (y[k] * y[k + 1] > 0.0) continue;
    const double t = -y[k] / (y[k + 1] - y[k]);
    return v[k] + t * (v[k + 1] - v[k]);
  }
  throw SolverError(std::string("polarization loop width undefined: ") + name +
                    " branch never crosses zero");
}

std::string format_doping(double cm3) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.0e", cm3);
  std::string s(buf);  // "1e+16" -> "1e16"
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '+') continue;
    if (i > 0 && (s[i - 1] == 'e' || s[i - 1] == '-') && s[i] == '0') continue;
    out += s[i];
  }
  return out;
}

}  // namespace

double MobilityModel::value(double e_eff) const {
  if (kind == Kind::kConstant) return mu0;
  const double ratio = std::max(e_eff, 0.0) / e_crit;
  return mu0 / (1.0 + std::pow(ratio, exponent));
}

void SweepProgram::validate() const {
  if (!(v_peak > v_start))
    throw ConfigError("transfer sweep needs v_peak > v_start");
  if (!(slew > 0.0)) throw ConfigError("sweep slew rate must be positive");
  if (steps_per_branch < 1)
    throw ConfigError("sweep needs at least one step per branch");
  if (!(v_ds > 0.0)) throw ConfigError("drain bias must be positive");
  if (!(i_ref > 0.0))
    throw ConfigError("reference current must be positive");
  if (v_read < v_start || v_read > v_peak)
    throw ConfigError("read voltage must lie inside the sweep range");
}

double IVTrace::n_inv_mean(const IvRecord& r) const {
  double s = 0.0;
  for (double x : r.n_inv) s += x;
  return r.n_inv.empty() ? 0.0 : s / static_cast<double>(r.n_inv.size());
}

double IVTrace::q_trap_mean(const IvRecord& r) const {
  double s = 0.0;
  for (double x : r.q_trap) s += x;
  return r.q_trap.empty() ? 0.0 : s / static_cast<double>(r.q_trap.size());
}

double IVTrace::p_s_mean(const IvRecord& r) const {
  double s = 0.0;
  for (double x : r.p_s) s += x;
  return r.p_s.empty() ? 0.0 : s / static_cast<double>(r.p_s.size());
}

double slice_conductance(const SliceState& state, const MobilityModel& mob,
                         double length, double width) {
  const double mu = mob.value(state.e_eff);
  return width * kElementaryCharge * mu * state.n_inv / length;
}

double series_current(const std::vector<SliceState>& slices,
                      const GrainEnsemble& ensemble, const MobilityModel& mob,
                      double width, double v_ds, bool* open_channel) {
  double resistance = 0.0;
  bool open = false;
  const std::size_t n = slices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double g =
        slice_conductance(slices[i], mob, ensemble.grains[i].length, width);
    if (!(g > 0.0)) { open = true; break; }
    resistance += 1.0 / g;
    if (ensemble.spacer_thickness > 0.0 && i + 1 < n) {
      const double n_sp = 0.5 * (slices[i].n_inv + slices[i + 1].n_inv);
      const double e_sp = 0.5 * (slices[i].e_eff + slices[i + 1].e_eff);
      const double g_sp = width * kElementaryCharge * mob.value(e_sp) * n_sp /
                          ensemble.spacer_thickness;
      if (!(g_sp > 0.0)) { open = true; break; }
      resistance += 1.0 / g_sp;
    }
  }
  if (open_channel) *open_channel = open;
  return open ? 0.0 : v_ds / resistance;
}

IVTrace sweep_ids_vgs(const FefetDesign& design, const SweepProgram& program,
                      const SelfConsistentOptions& opts) {
  program.validate();
  const auto& grains = design.ensemble.grains;
  if (grains.empty())
    throw ConfigError("transfer sweep needs at least one grain");

  Stack1D stack = design.stack;
  if (stack.mesh.x.empty()) stack = build_mesh(stack);

  const std::size_t n = grains.size();
  std::vector<SliceState> slices(n);
  for (std::size_t i = 0; i < n; ++i)
    slices[i].p_s = -extract_ec_pr(grains[i].coeffs).p_r;

  // Walk the gate bias from zero to the sweep start with the polarization
  // frozen, so the first self-consistent point starts from a converged
  // nearby field profile instead of a cold guess at full bias, and so the
  // trap bands pick up the charge history of the approach.
  if (program.v_start != 0.0) {
    const double step = program.v_start > 0.0 ? 0.25 : -0.25;
    for (int k = 1;; ++k) {
      double v = k * step;
      if (std::abs(v) >= std::abs(program.v_start)) v = program.v_start;
      for (std::size_t i = 0; i < n; ++i)
        slices[i] = frozen_polarization_point(stack, design.traps, slices[i],
                                              slices[i].p_s, v, opts);
      if (v == program.v_start) break;
    }
  }

  IVTrace trace;
  trace.n_slices = static_cast<int>(n);
  const double dv =
      (program.v_peak - program.v_start) / program.steps_per_branch;

  auto record = [&](double v, Branch b) {
    IvRecord r;
    r.v_gs = v;
    r.branch = b;
    r.i_ds = series_current(slices, design.ensemble, design.mobility,
                            design.width, program.v_ds, &r.open_channel) /
             (design.width * 1e6);
    r.p_s.reserve(n);
    r.n_inv.reserve(n);
    r.q_trap.reserve(n);
    for (const auto& s : slices) {
      r.p_s.push_back(s.p_s);
      r.n_inv.push_back(s.n_inv);
      r.q_trap.push_back(s.q_trap);
    }
    trace.records.push_back(std::move(r));
  };

  auto relax = [&](double v) {
    for (std::size_t i = 0; i < n; ++i)
      slices[i] = self_consistent_point(stack, grains[i].coeffs, design.traps,
                                        slices[i], v, opts);
  };

  for (int k = 0; k <= program.steps_per_branch; ++k) {
    const double v = program.v_start + k * dv;
    relax(v);
    record(v, Branch::kForward);
  }
  // The peak sample belongs to both branches; re-emit it so forward and
  // backward cover identical voltage grids.
  record(program.v_peak, Branch::kBackward);
  for (int k = 1; k <= program.steps_per_branch; ++k) {
    const double v = program.v_peak - k * dv;
    relax(v);
    record(v, Branch::kBackward);
  }
  return trace;
}

double memory_window(const IVTrace& trace, double i_ref) {
  auto current = [](const IvRecord& r) { return r.i_ds; };
  const auto fwd = branch_curve(trace, Branch::kForward, current);
  const auto bwd = branch_curve(trace, Branch::kBackward, current);
  const double v_fwd = log_crossing(fwd, i_ref, "forward");
  const double v_bwd = log_crossing(bwd, i_ref, "backward");
  return std::abs(v_fwd - v_bwd);
}

ResistancePair hrs_lrs(const IVTrace& trace, double v_read, double v_ds,
                       double width) {
  auto current = [](const IvRecord& r) { return r.i_ds; };
  const auto fwd = branch_curve(trace, Branch::kForward, current);
  const auto bwd = branch_curve(trace, Branch::kBackward, current);
  const double width_um = width * 1e6;
  const double i_f = value_at(fwd, v_read, "forward") * width_um;  // A
  const double i_b = value_at(bwd, v_read, "backward") * width_um;
  const double i_lo = std::min(i_f, i_b);
  const double i_hi = std::max(i_f, i_b);
  ResistancePair out;
  out.lrs = i_hi > 0.0 ? v_ds / i_hi : kInf;
  if (!(i_lo > 0.0)) {
    out.zero_current = true;
    out.hrs = kInf;
    out.ratio = kInf;
  } else {
    out.hrs = v_ds / i_lo;
    out.ratio = out.hrs / out.lrs;
  }
  return out;
}

double ps_loop_width(const IVTrace& trace) {
  std::vector<double> vf, pf, vb, pb;
  for (const auto& r : trace.records) {
    double mean = 0.0;
    for (double x : r.p_s) mean += x;
    mean /= static_cast<double>(r.p_s.size());
    if (r.branch == Branch::kForward) {
      vf.push_back(r.v_gs);
      pf.push_back(mean);
    } else {
      vb.push_back(r.v_gs);
      pb.push_back(mean);
    }
  }
  const double v_fwd = zero_crossing(vf, pf, "forward");
  const double v_bwd = zero_crossing(vb, pb, "backward");
  return std::abs(v_fwd - v_bwd);
}

namespace {

DesignResult run_design(const FefetDesign& base, const SweepProgram& program,
                        const SelfConsistentOptions& opts, ChannelMode mode,
                        double doping_cm3, double t_ch_nm) {
  DesignResult res;
  res.mode = mode;
  res.doping_cm3 = doping_cm3;
  res.t_ch_nm = t_ch_nm;
  char tbuf[32];
  std::snprintf(tbuf, sizeof tbuf, "%gnm", t_ch_nm);
  res.id = std::string(mode_name(mode)) + "_" + format_doping(doping_cm3) +
           "cm3_" + tbuf;

  FefetDesign d = base;
  d.stack.t_semi = t_ch_nm * 1e-9;
  // Depletion devices are doped with donors, enhancement with acceptors.
  d.stack.doping =
      (mode == ChannelMode::kDepletion ? 1.0 : -1.0) * doping_cm3 * 1e6;
  d.stack.mesh = Mesh{};  // thickness changed, sweep rebuilds it

  try {
    res.trace = sweep_ids_vgs(d, program, opts);
    const auto rp = hrs_lrs(res.trace, program.v_read, program.v_ds, d.width);
    res.hrs = rp.hrs;
    res.lrs = rp.lrs;
    res.ratio = rp.ratio;
    for (const auto& r : res.trace.records) {
      auto& peak =
          r.branch == Branch::kForward ? res.peak_i_fwd : res.peak_i_bwd;
      peak = std::max(peak, std::abs(r.i_ds));
    }
    try {
      res.mw = memory_window(res.trace, program.i_ref);
    } catch (const SolverError&) {
      res.mw = kNan;  // never shuts off (or never turns on): no window
    }
  } catch (const std::exception& e) {
    res.status = e.what();
    res.mw = kNan;
    res.hrs = res.lrs = res.ratio = kNan;
  }
  return res;
}

}  // namespace

std::vector<DesignResult> design_study(const FefetDesign& base,
                                       const SweepProgram& program,
                                       const DesignGrid& grid, int jobs,
                                       const SelfConsistentOptions& opts) {
  struct Row {
    ChannelMode mode;
    double doping;
    double t_ch;
  };
  std::vector<Row> rows;
  for (ChannelMode mode : grid.modes)
    for (double doping : grid.dopings_cm3)
      for (double t : grid.t_ch_nm) rows.push_back({mode, doping, t});

  std::vector<DesignResult> results(rows.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= rows.size()) return;
      results[i] = run_design(base, program, opts, rows[i].mode,
                              rows[i].doping, rows[i].t_ch);
    }
  };

  int workers = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(rows.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return results;
}

}  // namespace ferrosim

#include "ferrosim/runner.hpp"

#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "ferrosim/errors.hpp"

namespace ferrosim {

namespace {

void append_num(std::string& out, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  out += buf;
}

// Error messages may contain commas; keep the CSV parseable.
void append_quoted(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::FILE* f = std::fopen(path.string().c_str(), "wb");
  if (!f)
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  const std::size_t n = std::fwrite(body.data(), 1, body.size(), f);
  std::fclose(f);
  if (n != body.size())
    throw std::runtime_error("short write to " + path.string());
}

}  // namespace

std::string render_manifest(const SimConfig& cfg) {
  std::string out = "# ferrosim ";
  out += kVersion;
  out += "\n";
  out += serialize_config(cfg);
  return out;
}

std::string render_pv_csv(const PvTrace& trace) {
  std::string out = "time_s,v_V,e_field_Vpm,p_s_Cpm2,p_t_Cpm2,branch\n";
  for (const auto& r : trace.records) {
    append_num(out, r.time);
    out += ',';
    append_num(out, r.voltage);
    out += ',';
    append_num(out, r.e_field);
    out += ',';
    append_num(out, r.p_s);
    out += ',';
    append_num(out, r.p_t);
    out += ',';
    out += branch_name(r.branch);
    out += '\n';
  }
  return out;
}

std::string render_iv_csv(const IVTrace& trace) {
  std::string out = "v_gs_V,branch,i_ds_A_per_um,n_inv_mean_cm2,q_trap_mean_Cpcm2";
  char buf[48];
  for (int k = 0; k < trace.n_slices; ++k) {
    std::snprintf(buf, sizeof buf, ",p_s_grain_%d_Cpm2", k);
    out += buf;
  }
  for (int k = 0; k < trace.n_slices; ++k) {
    std::snprintf(buf, sizeof buf, ",n_inv_slice_%d_cm2", k);
    out += buf;
  }
  for (int k = 0; k < trace.n_slices; ++k) {
    std::snprintf(buf, sizeof buf, ",q_trap_slice_%d_Cpcm2", k);
    out += buf;
  }
  out += '\n';
  for (const auto& r : trace.records) {
    append_num(out, r.v_gs);
    out += ',';
    out += branch_name(r.branch);
    out += ',';
    append_num(out, r.i_ds);
    out += ',';
    append_num(out, trace.n_inv_mean(r) * 1e-4);  // 1/m^2 -> 1/cm^2
    out += ',';
    append_num(out, trace.q_trap_mean(r) * 1e-4);  // C/m^2 -> C/cm^2
    for (double x : r.p_s) {
      out += ',';
      append_num(out, x);
    }
    for (double x : r.n_inv) {
      out += ',';
      append_num(out, x * 1e-4);
    }
    for (double x : r.q_trap) {
      out += ',';
      append_num(out, x * 1e-4);
    }
    out += '\n';
  }
  return out;
}

std::string render_metrics_csv(const std::vector<DesignResult>& rows) {
  std::string out =
      "id,mode,doping_cm3,t_ch_nm,mw_V,hrs_ohm,lrs_ohm,ratio,"
      "peak_ids_fwd_A_per_um,peak_ids_bwd_A_per_um,status\n";
  for (const auto& r : rows) {
    out += r.id;
    out += ',';
    out += mode_name(r.mode);
    out += ',';
    append_num(out, r.doping_cm3);
    out += ',';
    append_num(out, r.t_ch_nm);
    out += ',';
    append_num(out, r.mw);
    out += ',';
    append_num(out, r.hrs);
    out += ',';
    append_num(out, r.lrs);
    out += ',';
    append_num(out, r.ratio);
    out += ',';
    append_num(out, r.peak_i_fwd);
    out += ',';
    append_num(out, r.peak_i_bwd);
    out += ',';
    append_quoted(out, r.status);
    out += '\n';
  }
  return out;
}

void run_study(const SimConfig& cfg, const std::string& out_dir) {
  if (cfg.kind == StudyKind::kLandauExtract) {
    const LandauSignature sig = extract_ec_pr(make_coefficients(cfg));
    std::printf("P_r_C_per_m2 = %.12g\n", sig.p_r);
    std::printf("E_c_V_per_m = %.12g\n", sig.e_c);
    std::printf("tau_s = %.12g\n", sig.tau);
    return;
  }

  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  write_file(dir / "manifest.txt", render_manifest(cfg));

  switch (cfg.kind) {
    case StudyKind::kMfmLoop: {
      const GrainEnsemble ensemble = make_ensemble(cfg);
      const TriangularWave wave = make_wave(cfg);
      const PvTrace trace =
          mfm_loop(ensemble, wave, cfg.eps_r_ferro, cfg.t_ferro_nm * 1e-9);
      write_file(dir / "pv_trace.csv", render_pv_csv(trace));
      break;
    }
    case StudyKind::kFefetSweep: {
      const FefetDesign design = make_design(cfg);
      const IVTrace trace =
          sweep_ids_vgs(design, make_sweep(cfg), make_numerics(cfg));
      write_file(dir / "iv_trace.csv", render_iv_csv(trace));
      break;
    }
    case StudyKind::kDesignStudy: {
      const FefetDesign base = make_design(cfg);  // one shared grain draw
      const auto results = design_study(base, make_sweep(cfg), make_grid(cfg),
                                        cfg.jobs, make_numerics(cfg));
      write_file(dir / "metrics.csv", render_metrics_csv(results));
      for (const auto& r : results)
        if (r.status == "ok")
          write_file(dir / ("iv_trace_" + r.id + ".csv"),
                     render_iv_csv(r.trace));
      // A failed design is a partial-result condition for the whole run.
      for (const auto& r : results)
        if (r.status != "ok")
          throw SolverError("design " + r.id + " failed: " + r.status);
      break;
    }
    case StudyKind::kLandauExtract:
      break;  // handled above
  }
}

}  // namespace ferrosim

#pragma once

#include <string>
#include <vector>

#include "ferrosim/config.hpp"
#include "ferrosim/mfm.hpp"

namespace ferrosim {

inline constexpr const char* kVersion = "0.1.0";

// Executes the configured study and writes its artifacts into out_dir
// (created if missing): manifest.txt plus pv_trace.csv (mfm-loop),
// iv_trace.csv (fefet-sweep) or metrics.csv and per-design traces
// (design-study). landau-extract prints to standard output and writes
// nothing. The manifest is written before any computation so a solver
// failure still leaves a self-describing partial output directory.
void run_study(const SimConfig& cfg, const std::string& out_dir);

// Renderers are pure so the CSV schemas can be golden-tested. All numbers
// are printed with "%.12g" and rows end in "\n"; identical inputs render
// byte-identical documents.
std::string render_manifest(const SimConfig& cfg);
std::string render_pv_csv(const PvTrace& trace);
std::string render_iv_csv(const IVTrace& trace);
std::string render_metrics_csv(const std::vector<DesignResult>& rows);

}  // namespace ferrosim

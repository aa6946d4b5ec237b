// ferrosim: grain-resolved quasi-static simulator for ferroelectric
// capacitors and FeFETs. Four studies share one config format; see
// README.md for the schema and output layout.

#include <clocale>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ferrosim/errors.hpp"
#include "ferrosim/runner.hpp"

namespace {

struct CliArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::optional<double> alpha, beta, gamma;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ferrosim::ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(ferrosim::StudyKind kind, const CliArgs& args) {
  ferrosim::SimConfig cfg =
      args.config_path.empty()
          ? ferrosim::default_config(kind)
          : ferrosim::parse_config(slurp(args.config_path), kind);
  if (args.seed) cfg.seed = *args.seed;
  if (args.jobs) cfg.jobs = *args.jobs;
  if (args.alpha) cfg.alpha = *args.alpha;
  if (args.beta) cfg.beta = *args.beta;
  if (args.gamma) cfg.gamma = *args.gamma;

  std::string out = args.out_dir;
  if (const char* env = std::getenv("FERROSIM_OUT"); env && *env) out = env;

  ferrosim::run_study(cfg, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");  // stable numeric formatting

  CLI::App app{"grain-resolved ferroelectric capacitor / FeFET simulator"};
  app.require_subcommand(1);

  CliArgs args;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", args.config_path,
                    "config file (flat INI; omit for the study's defaults)")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", args.out_dir,
                    "output directory (FERROSIM_OUT overrides)");
    sub->add_option("--seed", args.seed, "master RNG seed (overrides config)");
    sub->add_option("--jobs", args.jobs,
                    "worker threads for design-study (0: all cores)");
  };

  CLI::App* mfm = app.add_subcommand(
      "mfm-loop", "polarization-voltage loop of a grain-ensemble capacitor");
  CLI::App* sweep = app.add_subcommand(
      "fefet-sweep", "quasi-static transfer sweep of one FeFET");
  CLI::App* study = app.add_subcommand(
      "design-study", "mode x doping x thickness technology grid");
  CLI::App* landau = app.add_subcommand(
      "landau-extract", "print P_r, E_c and tau of a coefficient set");
  for (CLI::App* sub : {mfm, sweep, study, landau}) add_common(sub);
  landau->add_option("--alpha", args.alpha, "m/F, overrides config");
  landau->add_option("--beta", args.beta, "m^5/(F C^2), overrides config");
  landau->add_option("--gamma", args.gamma, "m^9/(F C^4), overrides config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad usage is a config error
  }

  ferrosim::StudyKind kind = ferrosim::StudyKind::kMfmLoop;
  if (sweep->parsed()) kind = ferrosim::StudyKind::kFefetSweep;
  if (study->parsed()) kind = ferrosim::StudyKind::kDesignStudy;
  if (landau->parsed()) kind = ferrosim::StudyKind::kLandauExtract;

  try {
    return run(kind, args);
  } catch (const ferrosim::ConfigError& e) {
    std::fprintf(stderr, "ferrosim: config error: %s\n", e.what());
    return 2;
  } catch (const ferrosim::SolverError& e) {
    std::fprintf(stderr, "ferrosim: solver error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ferrosim: %s\n", e.what());
    return 1;
  }
}

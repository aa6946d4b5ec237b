#include "ferrosim/mfm.hpp"

#include <cmath>

#include "ferrosim/constants.hpp"

namespace ferrosim {

PvTrace mfm_loop(const GrainEnsemble& ensemble, const TriangularWave& wave,
                 double eps_r_f, double t_f) {
  wave.validate();
  if (!(t_f > 0.0)) throw ConfigError("mfm_loop needs a positive thickness");
  if (ensemble.grains.empty()) throw ConfigError("mfm_loop needs grains");

  // Area weights: grains of equal footprint separated by spacer columns
  // that hold no spontaneous polarization.
  const std::size_t n = ensemble.grains.size();
  double grain_area = 0.0;
  for (const Grain& g : ensemble.grains) grain_area += g.length;
  const double total_area =
      grain_area + ensemble.spacer_thickness * static_cast<double>(n - 1);

  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = ensemble.grains[i].polarization;

  const int steps = wave.steps_per_branch;
  const double dt = wave.step_dt();
  const double dv = wave.step_dv();

  PvTrace trace;
  trace.records.reserve(static_cast<std::size_t>(2 * steps + 1));

  double time = 0.0;
  auto sample = [&](int k, Branch br, double t_now) {
    const double v =
        wave.polarity *
        (br == Branch::kForward ? wave.v_min + dv * k : wave.v_max - dv * k);
    const double e = v / t_f;
    double p_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = lgk_advance(ensemble.grains[i].coeffs, p[i], e, dt);
      p_sum += p[i] * ensemble.grains[i].length;
    }
    PvRecord rec;
    rec.time = t_now;
    rec.voltage = v;
    rec.e_field = e;
    rec.p_s = p_sum / total_area;
    rec.p_t = rec.p_s + kVacuumPermittivity * eps_r_f * e;
    rec.branch = br;
    trace.records.push_back(rec);
  };

  for (int k = 0; k <= steps; ++k) {
    sample(k, Branch::kForward, time);
    time += dt;
  }
  for (int k = 1; k <= steps; ++k) {
    sample(k, Branch::kBackward, time);
    time += dt;
  }

  trace.final_polarizations = p;
  return trace;
}

}  // namespace ferrosim

#include "ferrosim/landau.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ferrosim/errors.hpp"
#include "ferrosim/rng.hpp"

namespace ferrosim {

namespace {

void validate(const LandauCoefficients& c) {
  if (!(c.alpha < 0.0) || !(c.gamma > 0.0) || !(c.beta >= 0.0))
    throw ConfigError("landau coefficients need alpha < 0, beta >= 0, gamma > 0");
  if (!(c.resistivity > 0.0))
    throw ConfigError("landau resistivity must be positive");
}

}  // namespace

double ferro_field(const LandauCoefficients& c, double p) {
  const double p2 = p * p;
  return p * (2.0 * c.alpha + p2 * (4.0 * c.beta + p2 * 6.0 * c.gamma));
}

double ferro_field_slope(const LandauCoefficients& c, double p) {
  const double p2 = p * p;
  return 2.0 * c.alpha + p2 * (12.0 * c.beta + p2 * 30.0 * c.gamma);
}

LandauSignature extract_ec_pr(const LandauCoefficients& c) {
  validate(c);
  // E(P) = 0: 6 g u^2 + 4 b u + 2 a = 0 with u = P^2.
  const double disc_r = c.beta * c.beta - 3.0 * c.gamma * c.alpha;
  if (disc_r < 0.0)
    throw ConfigError("no remanent state: discriminant below zero");
  const double u_r = (-c.beta + std::sqrt(disc_r)) / (3.0 * c.gamma);
  if (!(u_r > 0.0))
    throw ConfigError("no remanent state: root of E(P)=0 not positive");
  // dE/dP = 0: 30 g u^2 + 12 b u + 2 a = 0.
  const double disc_c = 36.0 * c.beta * c.beta - 60.0 * c.gamma * c.alpha;
  const double u_c = (-6.0 * c.beta + std::sqrt(disc_c)) / (30.0 * c.gamma);
  if (!(u_c > 0.0))
    throw ConfigError("no coercive point: field has no interior extremum");

  LandauSignature sig;
  sig.p_r = std::sqrt(u_r);
  sig.e_c = std::fabs(ferro_field(c, std::sqrt(u_c)));
  sig.tau = c.resistivity / (2.0 * std::fabs(c.alpha));
  return sig;
}

double lgk_advance(const LandauCoefficients& c, double p, double e_applied,
                   double dt) {
  validate(c);
  if (!(dt > 0.0)) throw ConfigError("lgk_advance needs dt > 0");

  const double tau = c.resistivity / (2.0 * std::fabs(c.alpha));
  const double h_max = tau / 10.0;
  // Below this step-to-step change the trajectory is stationary (P is of
  // order 0.1 C/m^2, so this is resolution-limited already).
  const double stationary_tol = 1e-15;

  double t = 0.0;
  while (t < dt) {
    const double h = std::min(h_max, dt - t);
    const double p_prev = p;

    // Backward Euler residual g(x) = x - p_prev - h/rho (E_app - E(x)).
    // g'(x) = 1 + h/rho E'(x) >= 1 - h/tau >= 0.9, so g is increasing and
    // the root is unique; Newton with a bisection safeguard cannot stall.
    const double k = h / c.resistivity;
    auto g = [&](double x) {
      return x - p_prev - k * (e_applied - ferro_field(c, x));
    };

    double lo = p_prev, hi = p_prev;
    double step = 0.05;
    while (g(lo) > 0.0) { lo -= step; step *= 2.0; }
    step = 0.05;
    while (g(hi) < 0.0) { hi += step; step *= 2.0; }

    double x = p_prev + k * (e_applied - ferro_field(c, p_prev));
    x = std::clamp(x, lo, hi);
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      const double gx = g(x);
      if (gx > 0.0) hi = x; else lo = x;
      const double slope = 1.0 + k * ferro_field_slope(c, x);
      double x_next = x - gx / slope;
      if (!(x_next > lo) || !(x_next < hi)) x_next = 0.5 * (lo + hi);
      const double dx = std::fabs(x_next - x);
      x = x_next;
      if (dx < 1e-16 || hi - lo < 1e-16) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      std::ostringstream msg;
      msg << "lgk_advance: implicit step stalled after 100 iterations"
          << " (P=" << p_prev << ", E=" << e_applied << ", h=" << h << ")";
      throw SolverError(msg.str());
    }

    p = x;
    t += h;
    if (std::fabs(p - p_prev) < stationary_tol && h == h_max) break;
  }
  return p;
}

GrainEnsemble sample_ensemble(int n_grains, double grain_length,
                              const LandauCoefficients& base,
                              double sigma_ratio, std::uint64_t seed) {
  if (n_grains < 1) throw ConfigError("ensemble needs at least one grain");
  if (!(grain_length > 0.0)) throw ConfigError("grain length must be positive");
  if (sigma_ratio < 0.0 || sigma_ratio >= 1.0)
    throw ConfigError("coercive-field sigma ratio must lie in [0, 1)");

  extract_ec_pr(base);  // rejects coefficient sets without a double well
  SplitMix64 rng(seed);

  GrainEnsemble ens;
  ens.spacer_eps_r = base.eps_r_background;
  ens.rng_seed = seed;
  ens.grains.reserve(static_cast<std::size_t>(n_grains));
  for (int i = 0; i < n_grains; ++i) {
    // Rejection keeps every grain switchable: E_ci > 0.1 E_c0.
    double ratio;
    do {
      ratio = 1.0 + sigma_ratio * rng.next_normal();
    } while (ratio <= 0.1);

    Grain g;
    g.coeffs = base;
    g.coeffs.alpha = base.alpha * ratio;
    g.coeffs.beta = base.beta * ratio;
    g.coeffs.gamma = base.gamma * ratio;
    g.length = grain_length;
    g.coercive_field = extract_ec_pr(g.coeffs).e_c;
    g.polarization = 0.0;
    ens.grains.push_back(g);
  }
  return ens;
}

}  // namespace ferrosim

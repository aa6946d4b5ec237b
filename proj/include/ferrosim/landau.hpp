#pragma once

#include <cstdint>
#include <vector>

namespace ferrosim {

// Anisotropy coefficients of the P^2/P^4/P^6 free-energy expansion together
// with the linear background permittivity and the kinetic resistivity.
// A double-well landscape requires alpha < 0 and gamma > 0.
struct LandauCoefficients {
  double alpha = -5.37e8;  // m/F
  double beta = 9.62e8;    // m^5/(F C^2)
  double gamma = 9.59e10;  // m^9/(F C^4)
  double eps_r_background = 30.0;
  double resistivity = 30.0;  // Ohm m, viscosity of the polarization kinetics
};

// Remanent polarization, coercive field and small-signal time constant of a
// coefficient set.
struct LandauSignature {
  double p_r;    // C/m^2, positive zero of the thermodynamic field
  double e_c;    // V/m, magnitude of the field extremum on 0 < P < P_r
  double tau;    // s, resistivity / (2|alpha|)
};

// One ferroelectric grain: its (possibly rescaled) coefficients, footprint
// along the transport direction, and the polarization state it carries.
struct Grain {
  LandauCoefficients coeffs;
  double length = 6e-9;         // m
  double coercive_field = 0.0;  // V/m, cached from extract_ec_pr
  double polarization = 0.0;    // C/m^2
};

// Grain population of one device; grains are separated by thin dielectric
// spacer columns that carry only background polarization.
struct GrainEnsemble {
  std::vector<Grain> grains;
  double spacer_thickness = 5e-10;  // m
  double spacer_eps_r = 30.0;
  std::uint64_t rng_seed = 0;
};

// Thermodynamic field E(P) = 2 a P + 4 b P^3 + 6 c P^5 and its P-derivative.
double ferro_field(const LandauCoefficients& c, double p);
double ferro_field_slope(const LandauCoefficients& c, double p);

// Closed-form P_r, E_c, tau. Both are roots of quadratics in P^2. Throws
// ConfigError when the coefficients do not produce a double well.
LandauSignature extract_ec_pr(const LandauCoefficients& c);

// Advances dP/dt = (E_applied - E(P)) / resistivity over dt with backward
// Euler substeps no longer than tau/10, each solved by a safeguarded scalar
// Newton iteration. Substepping stops early once the state is stationary,
// so quasi-static calls with dt >> tau cost only the relaxation transient.
// Throws SolverError if a substep fails to converge within 100 iterations.
double lgk_advance(const LandauCoefficients& c, double p, double e_applied,
                   double dt);

// Draws n grains whose coercive fields follow a normal distribution with
// mean E_c0 and width sigma_ratio * E_c0, redrawing any value at or below
// 0.1 E_c0. Scaling (alpha, beta, gamma) by E_ci/E_c0 shifts E_c while
// leaving P_r untouched.
GrainEnsemble sample_ensemble(int n_grains, double grain_length,
                              const LandauCoefficients& base,
                              double sigma_ratio, std::uint64_t seed);

}  // namespace ferrosim

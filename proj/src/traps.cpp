#include "ferrosim/traps.hpp"

#include <algorithm>
#include <cmath>

#include "ferrosim/errors.hpp"

namespace ferrosim {

namespace {

// log(1 + e^x), stable for large |x|.
double softplus(double x) {
  if (x > 30.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Integral of the occupancy over [a, b] (eV) for Fermi level mu; the
// antiderivative of 1/(1+exp((e-mu)/vt)) is -vt softplus((mu-e)/vt).
double occupancy_integral(double a, double b, double mu, double vt) {
  return vt * (softplus((mu - a) / vt) - softplus((mu - b) / vt));
}

// Sum the per-species occupancy integral over the energy grid cells.
double gridded_occupancy(double e_low, double e_high, double mu, double vt,
                         int grid_points) {
  const int cells = grid_points - 1;
  const double de = (e_high - e_low) / cells;
  double acc = 0.0;
  for (int k = 0; k < cells; ++k) {
    const double a = e_low + de * k;
    const double b = (k == cells - 1) ? e_high : a + de;
    acc += occupancy_integral(a, b, mu, vt);
  }
  return acc;
}

}  // namespace

void TrapDistribution::validate() const {
  if (density_acceptor < 0.0 || density_donor < 0.0)
    throw ConfigError("trap densities must be non-negative");
  if (!(acc_e_high > acc_e_low) || !(don_e_high > don_e_low))
    throw ConfigError("trap energy windows must have positive width");
  if (!(spatial_extent > 0.0))
    throw ConfigError("trap spatial extent must be positive");
  if (fast_exchange_depth < 0.0)
    throw ConfigError("trap fast exchange depth must be non-negative");
  if (energy_grid_points < 2)
    throw ConfigError("trap energy grid needs at least two points");
}

double equilibrium_occupancy(double e_trap, double e_fermi,
                             double temperature) {
  if (!(temperature > 0.0)) throw ConfigError("temperature must be positive");
  return sigmoid((e_fermi - e_trap) / (kBoltzmannEv * temperature));
}

double trap_volume_charge(const TrapDistribution& t, double psi,
                          double e_fermi, double temperature) {
  t.validate();
  if (!(temperature > 0.0)) throw ConfigError("temperature must be positive");
  const double vt = kBoltzmannEv * temperature;
  // Raising the local potential lowers the trap ladder against the Fermi
  // level; equivalently the effective Fermi level is e_fermi + psi.
  const double mu = e_fermi + psi;

  const double filled_acc = gridded_occupancy(t.acc_e_low, t.acc_e_high, mu,
                                              vt, t.energy_grid_points);
  const double filled_don = gridded_occupancy(t.don_e_low, t.don_e_high, mu,
                                              vt, t.energy_grid_points);
  const double empty_don = (t.don_e_high - t.don_e_low) - filled_don;

  return kElementaryCharge *
         (t.density_donor * empty_don - t.density_acceptor * filled_acc);
}

double trap_volume_charge_dpsi(const TrapDistribution& t, double psi,
                               double e_fermi, double temperature) {
  const double vt = kBoltzmannEv * temperature;
  const double mu = e_fermi + psi;
  // d/dmu of the occupancy integral telescopes to f(e_low) - f(e_high).
  const double da = sigmoid((mu - t.acc_e_low) / vt) -
                    sigmoid((mu - t.acc_e_high) / vt);
  const double dd = sigmoid((mu - t.don_e_low) / vt) -
                    sigmoid((mu - t.don_e_high) / vt);
  return -kElementaryCharge *
         (t.density_acceptor * da + t.density_donor * dd);
}

namespace {

// Exact Fermi-Dirac average over one cell of a species window.
double cell_occupancy(double e_low, double de, int cell, double mu,
                      double vt) {
  const double a = e_low + de * cell;
  return occupancy_integral(a, a + de, mu, vt) / de;
}

}  // namespace

TrapOccupancy equilibrium_trap_state(const TrapDistribution& t,
                                     const std::vector<double>& psi,
                                     double e_fermi, double temperature) {
  t.validate();
  if (!(temperature > 0.0)) throw ConfigError("temperature must be positive");
  const double vt = kBoltzmannEv * temperature;
  TrapOccupancy s;
  s.n_nodes = psi.size();
  s.cells = static_cast<std::size_t>(t.energy_grid_points - 1);
  s.f_acc.resize(s.n_nodes * s.cells);
  s.f_don.resize(s.n_nodes * s.cells);
  const double de_acc = (t.acc_e_high - t.acc_e_low) / s.cells;
  const double de_don = (t.don_e_high - t.don_e_low) / s.cells;
  for (std::size_t i = 0; i < s.n_nodes; ++i) {
    const double mu = e_fermi + psi[i];
    for (std::size_t k = 0; k < s.cells; ++k) {
      s.f_acc[i * s.cells + k] = cell_occupancy(t.acc_e_low, de_acc, k, mu, vt);
      s.f_don[i * s.cells + k] = cell_occupancy(t.don_e_low, de_don, k, mu, vt);
    }
  }
  return s;
}

double update_trap_state(const TrapDistribution& t, TrapOccupancy& state,
                         const std::vector<double>& psi,
                         const std::vector<double>& depth, double psi_surface,
                         double e_fermi, double temperature) {
  if (state.empty() || state.n_nodes != psi.size() ||
      depth.size() != psi.size())
    throw SolverError("update_trap_state: occupancy does not match the mesh");
  const double vt = kBoltzmannEv * temperature;
  const double half_gap = 0.5 * kSiliconBandgapEv;
  const double de_acc = (t.acc_e_high - t.acc_e_low) / state.cells;
  const double de_don = (t.don_e_high - t.don_e_low) / state.cells;
  double worst = 0.0;
  for (std::size_t i = 0; i < state.n_nodes; ++i) {
    const double mu = e_fermi + psi[i];
    // Level relative to the channel midgap at the surface; cells inside the
    // gap have no elastic partner and retain, unless the node is close
    // enough to the channel for multi-phonon exchange to keep up.
    const double shift = psi[i] - psi_surface;
    const bool fast = depth[i] <= t.fast_exchange_depth;
    for (std::size_t k = 0; k < state.cells; ++k) {
      const double c_acc = t.acc_e_low + de_acc * (k + 0.5);
      if (fast || std::fabs(c_acc - shift) >= half_gap) {
        const double f = cell_occupancy(t.acc_e_low, de_acc, k, mu, vt);
        worst = std::max(worst, std::fabs(f - state.f_acc[i * state.cells + k]));
        state.f_acc[i * state.cells + k] = f;
      }
      const double c_don = t.don_e_low + de_don * (k + 0.5);
      if (fast || std::fabs(c_don - shift) >= half_gap) {
        const double f = cell_occupancy(t.don_e_low, de_don, k, mu, vt);
        worst = std::max(worst, std::fabs(f - state.f_don[i * state.cells + k]));
        state.f_don[i * state.cells + k] = f;
      }
    }
  }
  return worst;
}

std::vector<double> trap_state_charge(const TrapDistribution& t,
                                      const TrapOccupancy& state) {
  const double de_acc = (t.acc_e_high - t.acc_e_low) / state.cells;
  const double de_don = (t.don_e_high - t.don_e_low) / state.cells;
  std::vector<double> rho(state.n_nodes, 0.0);
  for (std::size_t i = 0; i < state.n_nodes; ++i) {
    double filled_acc = 0.0, filled_don = 0.0;
    for (std::size_t k = 0; k < state.cells; ++k) {
      filled_acc += state.f_acc[i * state.cells + k];
      filled_don += state.f_don[i * state.cells + k];
    }
    const double empty_don = (t.don_e_high - t.don_e_low) -
                             de_don * filled_don;
    rho[i] = kElementaryCharge * (t.density_donor * empty_don -
                                  t.density_acceptor * de_acc * filled_acc);
  }
  return rho;
}

}  // namespace ferrosim

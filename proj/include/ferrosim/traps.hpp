#pragma once

#include <cstddef>
#include <vector>

#include "ferrosim/constants.hpp"

namespace ferrosim {

// Border traps distributed uniformly through the interfacial layer and
// uniformly in energy. Energies are in eV relative to the semiconductor
// midgap at flat band; both species default to the full silicon gap.
// Trap levels shift rigidly with the local electrostatic potential and
// exchange carriers with the channel. A level has an elastic exchange
// partner only while it lines up with the conduction or valence states of
// the channel; while it is aligned inside the gap, exchange needs
// multi-phonon capture, whose rate falls off exponentially with tunneling
// depth, so only traps within fast_exchange_depth of the channel follow the
// gap-aligned equilibrium at volt-per-second sweeps. Everything deeper
// keeps its charge until the local band bending hands it an elastic
// partner again. The stateless operations below give the fully
// equilibrated limit; TrapOccupancy carries the bias-history-dependent
// state used in device sweeps.
struct TrapDistribution {
  double density_acceptor = 8e20 * 1e6;  // 1/(eV m^3)
  double density_donor = 4e20 * 1e6;     // 1/(eV m^3)
  double acc_e_low = -0.5 * kSiliconBandgapEv;   // eV
  double acc_e_high = 0.5 * kSiliconBandgapEv;   // eV
  double don_e_low = -0.5 * kSiliconBandgapEv;   // eV
  double don_e_high = 0.5 * kSiliconBandgapEv;   // eV
  double spatial_extent = 1e-9;  // m, thickness of the trapped layer
  double fast_exchange_depth = 0.5e-9;  // m, in-gap equilibration zone
  int energy_grid_points = 33;   // cell boundaries of the energy quadrature

  void validate() const;
};

// Fermi-Dirac occupancy 1/(1 + exp((E_t - E_f)/kT)), energies in eV.
double equilibrium_occupancy(double e_trap, double e_fermi, double temperature);

// Net volumetric trap charge (C/m^3) at a point whose local potential is
// psi: filled acceptors contribute -q, empty donors +q. The energy
// integral is evaluated per grid cell with the exact antiderivative of the
// occupancy, so it is exact for the uniform densities used here.
double trap_volume_charge(const TrapDistribution& t, double psi,
                          double e_fermi, double temperature);

// d(trap_volume_charge)/d(psi), needed by the field solver's Jacobian.
double trap_volume_charge_dpsi(const TrapDistribution& t, double psi,
                               double e_fermi, double temperature);

// Sheet charge (C/m^2) of a uniformly trapped layer held at one potential.
inline double trap_sheet_charge(const TrapDistribution& t, double psi,
                                double e_fermi, double temperature) {
  return trap_volume_charge(t, psi, e_fermi, temperature) * t.spatial_extent;
}

// Occupancy of every trap band cell, one value per (node, energy cell,
// species), node-major. Nodes are the mesh nodes carrying trap charge in
// mesh order; cells split each species' energy window uniformly.
struct TrapOccupancy {
  std::size_t n_nodes = 0;
  std::size_t cells = 0;
  std::vector<double> f_acc;  // [node * cells + cell]
  std::vector<double> f_don;

  bool empty() const { return n_nodes == 0; }
};

// Fully equilibrated occupancy for local potentials psi (one per trap node):
// the state reached after an unbounded hold. Each cell holds the exact
// Fermi-Dirac average over its energy span.
TrapOccupancy equilibrium_trap_state(const TrapDistribution& t,
                                     const std::vector<double>& psi,
                                     double e_fermi, double temperature);

// One quasi-static exchange step. A cell communicates with the channel
// while its level, shifted by the local potential, lies outside the silicon
// gap at the IL/channel surface (potential psi_surface), or unconditionally
// when its node sits within fast_exchange_depth of the channel (depth[i] is
// each node's distance to the IL/channel interface). Communicating cells
// take their equilibrium occupancy and all others retain their charge.
// Returns the largest occupancy change.
double update_trap_state(const TrapDistribution& t, TrapOccupancy& state,
                         const std::vector<double>& psi,
                         const std::vector<double>& depth, double psi_surface,
                         double e_fermi, double temperature);

// Net volumetric trap charge per node for an occupancy state, C/m^3:
// filled acceptors -q, empty donors +q, integrated over the windows.
std::vector<double> trap_state_charge(const TrapDistribution& t,
                                      const TrapOccupancy& state);

}  // namespace ferrosim

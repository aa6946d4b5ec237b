#pragma once

#include <optional>
#include <vector>

#include "ferrosim/landau.hpp"
#include "ferrosim/stack.hpp"
#include "ferrosim/traps.hpp"

namespace ferrosim {

struct FermiLevels {
  double phi_n = 0.0;  // V, electron quasi-Fermi level (source-side)
  double phi_p = 0.0;  // V, hole quasi-Fermi level
};

struct PoissonOptions {
  double tol = 1e-6;      // on the flux-normalized residual infinity norm
  int max_iter = 200;
  double clamp_vt = 1.0;  // per-node Newton update limit, in units of V_T
};

struct PoissonResult {
  std::vector<double> psi;  // V, all nodes including contacts
  int iterations = 0;
  double residual = 0.0;    // normalized, at exit
  int clamp_events = 0;     // Boltzmann exponent guard hits
  std::vector<double> residual_history;
};

// Solves Gauss's law on the stack mesh with Dirichlet contacts offset by the
// electrode workfunctions. The spontaneous polarization p_s enters as the
// constant polarization of the ferroelectric segments, which is equivalent
// to bound sheet charges of -p_s and +p_s at its two interfaces. Damped
// Newton: tridiagonal Jacobian, per-node update clamped to clamp_vt * V_T.
// After meeting the tolerance one more full step is taken so converged
// profiles sit at the numerical fixed point rather than just inside it.
// Trap charge is the fully equilibrated profile of `traps` unless
// frozen_trap_charge (a full-length per-node C/m^3 vector) is given, in
// which case that fixed profile is used instead.
// Throws SolverError with the residual history after max_iter iterations.
PoissonResult solve_poisson(const Stack1D& stack, double p_s, double v_gate,
                            const std::optional<TrapDistribution>& traps,
                            const FermiLevels& fermi = {},
                            const PoissonOptions& opt = {},
                            const std::vector<double>* initial_guess = nullptr,
                            const std::vector<double>* frozen_trap_charge =
                                nullptr);

// Potentials of the nodes that carry trap charge (the IL nodes, both
// interfaces included), in mesh order. This is the node set TrapOccupancy
// is indexed over.
std::vector<double> trap_node_potentials(const Mesh& m,
                                         const std::vector<double>& psi);

// Converged electrostatic + polarization state of one device slice.
struct SliceState {
  double p_s = 0.0;               // C/m^2
  std::vector<double> psi;        // V per node
  std::vector<double> n;          // 1/m^3 per node (semiconductor nodes)
  std::vector<double> p;          // 1/m^3 per node
  std::vector<double> rho_trap;   // C/m^3 per node (IL nodes)
  double e_ferro = 0.0;           // V/m, uniform field in the ferroelectric
  double n_inv = 0.0;             // 1/m^2, integrated electron sheet density
  double q_trap = 0.0;            // C/m^2, integrated trapped sheet charge
  double e_eff = 0.0;             // V/m, electron-weighted |E| in the channel
  TrapOccupancy trap_state;       // bias-history state of the trap bands
  bool converged = false;
  double poisson_residual = 0.0;
  double last_dp = 0.0;           // C/m^2, fixed-point residual at exit
  int outer_iterations = 0;
  int clamp_events = 0;
};

struct SelfConsistentOptions {
  double dp_tol = 1e-4;       // C/m^2, width the equilibrium is bisected to
  double dp_max_step = 0.01;  // C/m^2, bracketing march step cap
  int max_outer = 2000;       // budget of field solves per bias point
  int max_relay = 40;         // trap exchange passes per bias point
  PoissonOptions poisson;
};

// One quasi-static bias point. P_S relaxes along dP/dt = (E_F(P) - E(P))/rho
// where E_F(P) is the self-consistent ferroelectric field at polarization P,
// so the settled state is the first zero of E_F(P) - E(P) in the flow
// direction from the previous state (the flow cannot pass an equilibrium).
// That zero is bracketed by marching with a geometrically growing step and
// polished by bisection to dp_tol; every residual evaluation is one warm
// Poisson solve. Trap charge is held frozen during each polarization
// relaxation and exchanged with the channel between passes
// (update_trap_state) until the occupancy settles, so the trap state -
// carried in SliceState across bias points - keeps the charge it acquired
// at earlier biases wherever its levels sit inside the channel gap. Branch
// memory, and hence hysteresis, comes from the previous polarization and
// that retained charge. Assumes the hold per bias step is long against the
// ferroelectric relaxation time, which the volt-second sweeps here satisfy
// by orders of magnitude. Raises SolverError if the field-solve budget is
// exhausted.
SliceState self_consistent_point(const Stack1D& stack,
                                 const LandauCoefficients& coeffs,
                                 const std::optional<TrapDistribution>& traps,
                                 const SliceState& previous, double v_gate,
                                 const SelfConsistentOptions& opt = {});

// Same electrostatics and trap exchange with the polarization pinned at
// p_s: the bias-ramp primitive used to bring a device to a sweep's starting
// voltage without letting the ferroelectric respond.
SliceState frozen_polarization_point(
    const Stack1D& stack, const std::optional<TrapDistribution>& traps,
    const SliceState& previous, double p_s, double v_gate,
    const SelfConsistentOptions& opt = {});

// Independent bookkeeping of the converged state: contact sheet charges,
// volume charges and polarization bound charges, which must sum to zero.
// The trap component integrates the state's own charge profile so retained
// (non-equilibrium) charge is accounted as solved.
struct ChargeBalance {
  double gate = 0.0;       // C/m^2
  double back = 0.0;       // C/m^2
  double semiconductor = 0.0;
  double traps = 0.0;
  double bound = 0.0;      // net polarization bound charge (0 for uniform P)
  double total = 0.0;
  double largest = 0.0;    // max component magnitude
};

ChargeBalance charge_balance(const Stack1D& stack, const SliceState& state,
                             const FermiLevels& fermi = {});

// Electron sheet density of a profile, integrated with the exponential-in-psi
// rule that is exact for a linear potential on each segment.
double integrate_inversion(const Stack1D& stack, const std::vector<double>& psi,
                           const FermiLevels& fermi);

}  // namespace ferrosim

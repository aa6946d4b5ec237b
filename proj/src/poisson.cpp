#include "ferrosim/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ferrosim/errors.hpp"

namespace ferrosim {

namespace {

constexpr double kResidualFloor = 1e-4;  // C/m^2, scale floor for empty stacks

struct Assembly {
  // Per-segment permittivity / length and ferro polarization flag.
  std::vector<double> cond;     // eps / h, F/m^2
  std::vector<double> pol;      // spontaneous polarization carried by segment
  std::vector<double> w_semi;   // per-node semiconductor half-cell width, m
  std::vector<double> w_il;     // per-node IL half-cell width, m
  double psi_gate = 0.0;
  double psi_back = 0.0;
};

Assembly prepare(const Stack1D& stack, double p_s, double v_gate) {
  const Mesh& m = stack.mesh;
  Assembly a;
  a.cond.resize(m.seg_h.size());
  a.pol.resize(m.seg_h.size());
  a.w_semi.assign(m.n_nodes(), 0.0);
  a.w_il.assign(m.n_nodes(), 0.0);
  for (std::size_t k = 0; k < m.seg_h.size(); ++k) {
    double eps_r = 0.0;
    switch (m.seg_layer[k]) {
      case Layer::kFerro: eps_r = stack.eps_ferro; break;
      case Layer::kInterfacial: eps_r = stack.eps_il; break;
      case Layer::kSemiconductor: eps_r = stack.eps_semi; break;
      case Layer::kBox: eps_r = stack.eps_box; break;
    }
    a.cond[k] = kVacuumPermittivity * eps_r / m.seg_h[k];
    a.pol[k] = m.seg_layer[k] == Layer::kFerro ? p_s : 0.0;
    const double half = 0.5 * m.seg_h[k];
    if (m.seg_layer[k] == Layer::kSemiconductor) {
      a.w_semi[k] += half;
      a.w_semi[k + 1] += half;
    } else if (m.seg_layer[k] == Layer::kInterfacial) {
      a.w_il[k] += half;
      a.w_il[k + 1] += half;
    }
  }
  a.psi_gate = v_gate + (kIntrinsicWorkfunctionEv - stack.gate_workfunction);
  a.psi_back = kIntrinsicWorkfunctionEv - stack.back_workfunction;
  return a;
}

// Piecewise guess: contacts at their Dirichlet values, the semiconductor at
// its neutral potential, oxides linear in between.
std::vector<double> cold_start(const Stack1D& stack, const Assembly& a) {
  const Mesh& m = stack.mesh;
  const double psi_n = neutral_potential(stack.doping, stack.temperature);
  std::vector<double> psi(m.n_nodes());
  const double x_semi0 = m.x[m.semi_begin];
  const double x_semi1 = m.x[m.semi_end];
  const double x_end = m.x.back();
  for (std::size_t i = 0; i < m.n_nodes(); ++i) {
    const double x = m.x[i];
    if (x <= x_semi0)
      psi[i] = a.psi_gate + (psi_n - a.psi_gate) * (x / x_semi0);
    else if (x <= x_semi1)
      psi[i] = psi_n;
    else
      psi[i] = psi_n + (a.psi_back - psi_n) * (x - x_semi1) / (x_end - x_semi1);
  }
  psi.front() = a.psi_gate;
  psi.back() = a.psi_back;
  return psi;
}

}  // namespace

PoissonResult solve_poisson(const Stack1D& stack, double p_s, double v_gate,
                            const std::optional<TrapDistribution>& traps,
                            const FermiLevels& fermi, const PoissonOptions& opt,
                            const std::vector<double>* initial_guess,
                            const std::vector<double>* frozen_trap_charge) {
  const Mesh& m = stack.mesh;
  if (m.n_nodes() < 5) throw ConfigError("solve_poisson: stack has no mesh");
  const std::size_t n = m.n_nodes();
  const double vt = thermal_voltage(stack.temperature);
  const Assembly a = prepare(stack, p_s, v_gate);

  PoissonResult out;
  if (initial_guess && initial_guess->size() == n) {
    out.psi = *initial_guess;
    out.psi.front() = a.psi_gate;
    out.psi.back() = a.psi_back;
  } else {
    out.psi = cold_start(stack, a);
  }

  std::vector<double> flux(n - 1), charge(n, 0.0), dcharge(n, 0.0);
  std::vector<double> res(n, 0.0), scale(n, 0.0);
  std::vector<double> sub(n, 0.0), diag(n, 0.0), sup(n, 0.0), rhs(n, 0.0);

  auto assemble = [&](bool with_jacobian) {
    out.clamp_events = 0;
    for (std::size_t k = 0; k + 1 < n; ++k)
      flux[k] = -a.cond[k] * (out.psi[k + 1] - out.psi[k]) + a.pol[k];
    for (std::size_t i = 1; i + 1 < n; ++i) {
      charge[i] = 0.0;
      dcharge[i] = 0.0;
      if (a.w_semi[i] > 0.0) {
        const CarrierDensities cd = semiconductor_charge(
            out.psi[i], fermi.phi_n, fermi.phi_p, stack.doping,
            stack.temperature);
        if (cd.clamped) ++out.clamp_events;
        charge[i] += a.w_semi[i] * cd.rho;
        dcharge[i] += -a.w_semi[i] * kElementaryCharge * (cd.n + cd.p) / vt;
      }
      if (a.w_il[i] > 0.0) {
        if (frozen_trap_charge) {
          // Fixed profile: no potential dependence, no Jacobian term.
          charge[i] += a.w_il[i] * (*frozen_trap_charge)[i];
        } else if (traps) {
          charge[i] += a.w_il[i] * trap_volume_charge(*traps, out.psi[i],
                                                      -fermi.phi_n,
                                                      stack.temperature);
          dcharge[i] += a.w_il[i] * trap_volume_charge_dpsi(
                                        *traps, out.psi[i], -fermi.phi_n,
                                        stack.temperature);
        }
      }
      res[i] = flux[i] - flux[i - 1] - charge[i];
      scale[i] = std::fabs(flux[i]) + std::fabs(flux[i - 1]) +
                 std::fabs(charge[i]) + kResidualFloor;
      if (with_jacobian) {
        sub[i] = -a.cond[i - 1];
        diag[i] = a.cond[i - 1] + a.cond[i] - dcharge[i];
        sup[i] = -a.cond[i];
        rhs[i] = -res[i];
      }
    }
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i)
      worst = std::max(worst, std::fabs(res[i]) / scale[i]);
    return worst;
  };

  // Thomas solve on interior nodes 1..n-2; boundary columns drop out because
  // the contacts are fixed (delta = 0 there).
  std::vector<double> cp(n, 0.0), dp(n, 0.0);
  auto newton_step = [&] {
    const std::size_t lo = 1, hi = n - 2;
    cp[lo] = sup[lo] / diag[lo];
    dp[lo] = rhs[lo] / diag[lo];
    for (std::size_t i = lo + 1; i <= hi; ++i) {
      const double den = diag[i] - sub[i] * cp[i - 1];
      cp[i] = sup[i] / den;
      dp[i] = (rhs[i] - sub[i] * dp[i - 1]) / den;
    }
    const double limit = opt.clamp_vt * vt;
    double delta = dp[hi];
    out.psi[hi] += std::clamp(delta, -limit, limit);
    for (std::size_t i = hi; i-- > lo;) {
      delta = dp[i] - cp[i] * delta;
      out.psi[i] += std::clamp(delta, -limit, limit);
      dp[i] = delta;  // keep the unclamped delta for the backward recursion
    }
  };

  bool converged = false;
  for (int it = 0; it <= opt.max_iter; ++it) {
    const double worst = assemble(true);
    out.residual = worst;
    out.residual_history.push_back(worst);
    if (worst < opt.tol) {
      converged = true;
      out.iterations = it;
      break;
    }
    if (it == opt.max_iter) break;
    newton_step();
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "solve_poisson: no convergence after " << opt.max_iter
        << " iterations (V_gate=" << v_gate << ", P_S=" << p_s
        << "); residual history tail:";
    const std::size_t h = out.residual_history.size();
    for (std::size_t i = h > 6 ? h - 6 : 0; i < h; ++i)
      msg << " " << out.residual_history[i];
    throw SolverError(msg.str());
  }

  // Polish: one extra Newton step so the reported profile sits at the
  // numerical fixed point (charge bookkeeping then closes to round-off,
  // far below the nominal tolerance).
  assemble(true);
  newton_step();
  out.residual = assemble(false);
  out.residual_history.push_back(out.residual);
  return out;
}

std::vector<double> trap_node_potentials(const Mesh& m,
                                         const std::vector<double>& psi) {
  std::vector<double> out;
  out.reserve(m.semi_begin - m.ferro_end + 1);
  for (std::size_t i = m.ferro_end; i <= m.semi_begin; ++i)
    out.push_back(psi[i]);
  return out;
}

double integrate_inversion(const Stack1D& stack, const std::vector<double>& psi,
                           const FermiLevels& fermi) {
  const Mesh& m = stack.mesh;
  const double vt = thermal_voltage(stack.temperature);
  double total = 0.0;
  for (std::size_t k = m.semi_begin; k < m.semi_end; ++k) {
    const double na = semiconductor_charge(psi[k], fermi.phi_n, fermi.phi_p,
                                           stack.doping, stack.temperature).n;
    const double nb = semiconductor_charge(psi[k + 1], fermi.phi_n,
                                           fermi.phi_p, stack.doping,
                                           stack.temperature).n;
    const double dpsi = psi[k + 1] - psi[k];
    if (std::fabs(dpsi) > 1e-12)
      total += m.seg_h[k] * vt * (nb - na) / dpsi;  // exact for linear psi
    else
      total += m.seg_h[k] * 0.5 * (na + nb);
  }
  return total;
}

namespace {

// Electron-density-weighted mean |E| across the channel, the normal field
// seen by the inversion charge centroid.
double effective_field(const Stack1D& stack, const std::vector<double>& psi,
                       const FermiLevels& fermi) {
  const Mesh& m = stack.mesh;
  const double vt = thermal_voltage(stack.temperature);
  double weight = 0.0, accum = 0.0;
  for (std::size_t k = m.semi_begin; k < m.semi_end; ++k) {
    const double na = semiconductor_charge(psi[k], fermi.phi_n, fermi.phi_p,
                                           stack.doping, stack.temperature).n;
    const double nb = semiconductor_charge(psi[k + 1], fermi.phi_n,
                                           fermi.phi_p, stack.doping,
                                           stack.temperature).n;
    const double dpsi = psi[k + 1] - psi[k];
    const double mass = std::fabs(dpsi) > 1e-12
                            ? m.seg_h[k] * vt * (nb - na) / dpsi
                            : m.seg_h[k] * 0.5 * (na + nb);
    accum += mass * std::fabs(dpsi / m.seg_h[k]);
    weight += mass;
  }
  return weight > 0.0 ? accum / weight : 0.0;
}

SliceState finalize_state(const Stack1D& stack,
                          const std::optional<TrapDistribution>& traps,
                          const FermiLevels& fermi, const PoissonResult& res,
                          double p_s, const std::vector<double>* frozen) {
  const Mesh& m = stack.mesh;
  SliceState st;
  st.p_s = p_s;
  st.psi = res.psi;
  st.n.assign(m.n_nodes(), 0.0);
  st.p.assign(m.n_nodes(), 0.0);
  st.rho_trap.assign(m.n_nodes(), 0.0);
  for (std::size_t i = m.semi_begin; i <= m.semi_end; ++i) {
    const CarrierDensities cd = semiconductor_charge(
        res.psi[i], fermi.phi_n, fermi.phi_p, stack.doping, stack.temperature);
    st.n[i] = cd.n;
    st.p[i] = cd.p;
  }
  if (traps) {
    double sheet = 0.0;
    for (std::size_t i = m.ferro_end; i <= m.semi_begin; ++i) {
      st.rho_trap[i] = frozen ? (*frozen)[i]
                              : trap_volume_charge(*traps, res.psi[i],
                                                   -fermi.phi_n,
                                                   stack.temperature);
      // Half-cell widths of the IL parts adjoining node i.
      double w = 0.0;
      if (i > 0 && m.seg_layer[i - 1] == Layer::kInterfacial)
        w += 0.5 * m.seg_h[i - 1];
      if (i < m.seg_h.size() && m.seg_layer[i] == Layer::kInterfacial)
        w += 0.5 * m.seg_h[i];
      sheet += w * st.rho_trap[i];
    }
    st.q_trap = sheet;
  }
  st.e_ferro = (res.psi.front() - res.psi[m.ferro_end]) / stack.t_ferro;
  st.n_inv = integrate_inversion(stack, res.psi, fermi);
  st.e_eff = effective_field(stack, res.psi, fermi);
  st.poisson_residual = res.residual;
  st.clamp_events = res.clamp_events;
  return st;
}

std::vector<double> expand_trap_charge(const Mesh& m,
                                       const std::vector<double>& il_rho) {
  std::vector<double> full(m.n_nodes(), 0.0);
  std::size_t k = 0;
  for (std::size_t i = m.ferro_end; i <= m.semi_begin; ++i)
    full[i] = il_rho[k++];
  return full;
}

// Shared bias-point relaxation. With coeffs the polarization settles on the
// first zero of E_F(P) - E(P) in the flow direction; without it P stays at
// p_start. When traps are present their charge is frozen during each
// polarization pass and exchanged afterwards, until the occupancy settles.
SliceState settle_point(const Stack1D& stack, const LandauCoefficients* coeffs,
                        const std::optional<TrapDistribution>& traps,
                        const SliceState& previous, double p_start,
                        double v_gate, const SelfConsistentOptions& opt) {
  const FermiLevels fermi{};
  const Mesh& m = stack.mesh;

  std::vector<double> psi = previous.psi;
  std::vector<double> frozen;
  const std::vector<double>* frozen_ptr = nullptr;
  int solves = 0;

  // One warm field solve; returns the uniform ferroelectric field.
  auto field_solve = [&](double p) {
    if (++solves > opt.max_outer)
      throw SolverError(
          "self-consistent bias point: field-solve budget exhausted at "
          "V_gate=" +
          std::to_string(v_gate));
    PoissonResult res = solve_poisson(
        stack, p, v_gate, traps, fermi, opt.poisson,
        psi.size() == m.n_nodes() ? &psi : nullptr, frozen_ptr);
    psi = res.psi;
    return (psi.front() - psi[m.ferro_end]) / stack.t_ferro;
  };

  TrapOccupancy state = previous.trap_state;
  std::vector<double> depth;
  if (traps) {
    // Distance of each interlayer node to the channel face, the tunneling
    // length that gates multi-phonon exchange.
    depth.reserve(m.semi_begin - m.ferro_end + 1);
    for (std::size_t i = m.ferro_end; i <= m.semi_begin; ++i)
      depth.push_back(m.x[m.semi_begin] - m.x[i]);
  }
  if (traps && state.empty()) {
    // Fresh slice: the bands start fully equilibrated at the initial bias,
    // the state of a device resting at that voltage for a long time.
    field_solve(p_start);
    state = equilibrium_trap_state(*traps, trap_node_potentials(m, psi),
                                   -fermi.phi_n, stack.temperature);
  }

  double p = p_start;
  double width = 0.0;
  for (int pass = 0;; ++pass) {
    if (traps) {
      frozen = expand_trap_charge(m, trap_state_charge(*traps, state));
      frozen_ptr = &frozen;
    }
    if (coeffs) {
      // E_F(p) - E(p): positive where the flow drives P_S upward.
      auto residual = [&](double pp) {
        return field_solve(pp) - ferro_field(*coeffs, pp);
      };
      double lo = p;
      double r_lo = residual(lo);
      if (r_lo != 0.0) {
        // March downstream with a growing step until the residual flips
        // sign; E(P) outgrows any achievable field at large |P|, so a
        // bracket exists.
        const double dir = r_lo > 0.0 ? 1.0 : -1.0;
        double h = opt.dp_tol;
        double hi = lo;
        for (;;) {
          hi = lo + dir * h;
          const double r_hi = residual(hi);
          if (r_lo * r_hi <= 0.0) break;
          lo = hi;
          h = std::min(2.0 * h, opt.dp_max_step);
          if (std::fabs(hi) > 1.0)
            throw SolverError(
                "self-consistent bias point: no polarization equilibrium "
                "below |P|=1 C/m^2 at V_gate=" +
                std::to_string(v_gate));
        }
        while (std::fabs(hi - lo) > opt.dp_tol) {
          const double mid = 0.5 * (lo + hi);
          if (residual(mid) * r_lo > 0.0)
            lo = mid;
          else
            hi = mid;
        }
        p = 0.5 * (lo + hi);
        width = std::fabs(hi - lo);
      }
    }
    if (!traps) break;
    field_solve(p);
    const double moved =
        update_trap_state(*traps, state, trap_node_potentials(m, psi), depth,
                          psi[m.semi_begin], -fermi.phi_n, stack.temperature);
    if (moved < 1e-9 || pass + 1 >= opt.max_relay) break;
  }

  PoissonResult fin = solve_poisson(stack, p, v_gate, traps, fermi,
                                    opt.poisson, &psi, frozen_ptr);
  SliceState st = finalize_state(stack, traps, fermi, fin, p, frozen_ptr);
  st.trap_state = std::move(state);
  st.converged = true;
  st.last_dp = width;
  st.outer_iterations = solves;
  return st;
}

}  // namespace

SliceState self_consistent_point(const Stack1D& stack,
                                 const LandauCoefficients& coeffs,
                                 const std::optional<TrapDistribution>& traps,
                                 const SliceState& previous, double v_gate,
                                 const SelfConsistentOptions& opt) {
  return settle_point(stack, &coeffs, traps, previous, previous.p_s, v_gate,
                      opt);
}

SliceState frozen_polarization_point(
    const Stack1D& stack, const std::optional<TrapDistribution>& traps,
    const SliceState& previous, double p_s, double v_gate,
    const SelfConsistentOptions& opt) {
  return settle_point(stack, nullptr, traps, previous, p_s, v_gate, opt);
}

ChargeBalance charge_balance(const Stack1D& stack, const SliceState& state,
                             const FermiLevels& fermi) {
  const Mesh& m = stack.mesh;
  const std::vector<double>& psi = state.psi;
  ChargeBalance b;

  const double eps_first = kVacuumPermittivity * stack.eps_ferro;
  const double eps_last = kVacuumPermittivity * stack.eps_box;
  // Free sheet charge on each metal: D on the stack side of the contact,
  // with the polarization included in D inside the ferroelectric.
  b.gate = -eps_first * (psi[1] - psi[0]) / m.seg_h[0] + state.p_s;
  const std::size_t last = m.seg_h.size() - 1;
  b.back = eps_last * (psi[last + 1] - psi[last]) / m.seg_h[last];

  for (std::size_t i = 1; i + 1 < m.n_nodes(); ++i) {
    double w_semi = 0.0, w_il = 0.0;
    if (m.seg_layer[i - 1] == Layer::kSemiconductor) w_semi += 0.5 * m.seg_h[i - 1];
    if (m.seg_layer[i] == Layer::kSemiconductor) w_semi += 0.5 * m.seg_h[i];
    if (m.seg_layer[i - 1] == Layer::kInterfacial) w_il += 0.5 * m.seg_h[i - 1];
    if (m.seg_layer[i] == Layer::kInterfacial) w_il += 0.5 * m.seg_h[i];
    if (w_semi > 0.0)
      b.semiconductor += w_semi * semiconductor_charge(psi[i], fermi.phi_n,
                                                       fermi.phi_p,
                                                       stack.doping,
                                                       stack.temperature).rho;
    if (w_il > 0.0 && !state.rho_trap.empty())
      b.traps += w_il * state.rho_trap[i];
  }

  // The polarization bound sheets at the two ferroelectric faces cancel.
  b.bound = 0.0;
  b.total = b.gate + b.back + b.semiconductor + b.traps + b.bound;
  b.largest = std::max({std::fabs(b.gate), std::fabs(b.back),
                        std::fabs(b.semiconductor), std::fabs(b.traps),
                        std::fabs(state.p_s)});
  return b;
}

}  // namespace ferrosim

#pragma once

#include <cstddef>
#include <vector>

#include "ferrosim/constants.hpp"

namespace ferrosim {

enum class Layer { kFerro, kInterfacial, kSemiconductor, kBox };

// Nonuniform finite-volume mesh along the gate-stack normal. Nodes run from
// the gate contact (x = 0, gate/ferroelectric interface) to the back contact
// behind the buried oxide; segment k joins nodes k and k+1.
struct Mesh {
  std::vector<double> x;          // node positions, m
  std::vector<Layer> node_layer;  // layer right of the node (last: kBox)
  std::vector<double> seg_h;      // segment lengths, m
  std::vector<Layer> seg_layer;
  std::size_t ferro_end = 0;   // node index of the ferro/IL interface
  std::size_t semi_begin = 0;  // node index of the IL/semiconductor interface
  std::size_t semi_end = 0;    // node index of the semiconductor/BOX interface

  std::size_t n_nodes() const { return x.size(); }
};

// Vertical gate stack of one device slice:
// gate metal | ferroelectric | interfacial layer | semiconductor | BOX | metal.
// Doping is signed (positive donors, negative acceptors), in 1/m^3.
struct Stack1D {
  double t_ferro = 10e-9;
  double t_il = 1e-9;
  double t_semi = 6e-9;
  double t_box = 30e-9;
  double eps_ferro = 30.0;  // linear background of the ferroelectric
  double eps_il = 3.9;
  double eps_semi = kSiliconEpsR;
  double eps_box = 3.9;
  double doping = 0.0;            // 1/m^3, signed
  double gate_workfunction = 4.6;  // eV
  double back_workfunction = 4.6;  // eV
  double temperature = 300.0;      // K
  Mesh mesh;
};

// Fills stack.mesh: 0.1 nm spacing in the IL, 0.25 nm in the semiconductor
// within 5 nm of the IL grading up to 1 nm, 0.25 nm in the ferroelectric and
// a coarse geometric BOX mesh. refinement > 1 divides all spacings (2 halves
// them), which is how discretization-convergence checks are run. The result
// is a pure function of the inputs.
Stack1D build_mesh(Stack1D stack, double refinement = 1.0);

struct CarrierDensities {
  double n = 0.0;    // 1/m^3
  double p = 0.0;    // 1/m^3
  double rho = 0.0;  // C/m^3
  bool clamped = false;  // Boltzmann exponent hit the +/-40 guard
};

// Boltzmann carrier statistics against fixed quasi-Fermi levels:
// n = n_i exp((psi - phi_n)/V_T), p = n_i exp((phi_p - psi)/V_T),
// rho = q (p - n + doping). Exponents are clamped at +/-40 and flagged.
CarrierDensities semiconductor_charge(double psi, double phi_n, double phi_p,
                                      double doping, double temperature);

// Potential at which the semiconductor is charge neutral, V_T asinh(C/2n_i).
double neutral_potential(double doping, double temperature);

}  // namespace ferrosim

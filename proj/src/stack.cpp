#include "ferrosim/stack.hpp"

#include <algorithm>
#include <cmath>

#include "ferrosim/errors.hpp"

namespace ferrosim {

namespace {

// Appends segments covering one layer. Spacings follow the given plan:
// a uniform fine zone of length fine_span at fine_h, then geometric growth
// by 1.35 per segment capped at coarse_h. The last segment is stretched or
// split so the layer boundary lands exactly on a node.
void mesh_layer(double thickness, double fine_h, double fine_span,
                double coarse_h, Layer layer, std::vector<double>* seg_h,
                std::vector<Layer>* seg_layer) {
  double remaining = thickness;
  double h = fine_h;
  double covered_fine = 0.0;
  while (remaining > 1e-15) {
    if (covered_fine >= fine_span && h < coarse_h)
      h = std::min(h * 1.35, coarse_h);
    double step = std::min(h, remaining);
    // Avoid a sliver segment at the boundary: fold it into this step.
    if (remaining - step < 0.45 * h) step = remaining;
    seg_h->push_back(step);
    seg_layer->push_back(layer);
    covered_fine += step;
    remaining -= step;
  }
}

}  // namespace

Stack1D build_mesh(Stack1D stack, double refinement) {
  if (!(stack.t_ferro > 0.0) || !(stack.t_il > 0.0) || !(stack.t_semi > 0.0) ||
      !(stack.t_box > 0.0))
    throw ConfigError("stack layer thicknesses must be positive");
  if (!(refinement > 0.0)) throw ConfigError("mesh refinement must be positive");
  if (!(stack.temperature > 0.0))
    throw ConfigError("stack temperature must be positive");

  const double r = 1.0 / refinement;
  const double nm = 1e-9;

  Mesh m;
  // Ferroelectric: charge-free interior, moderate uniform spacing.
  mesh_layer(stack.t_ferro, 0.25 * nm * r, stack.t_ferro, 0.25 * nm * r,
             Layer::kFerro, &m.seg_h, &m.seg_layer);
  // Interfacial layer: finest, trap charge lives here.
  mesh_layer(stack.t_il, 0.1 * nm * r, stack.t_il, 0.1 * nm * r,
             Layer::kInterfacial, &m.seg_h, &m.seg_layer);
  // Semiconductor: 0.25 nm within 5 nm of the IL, graded up to 1 nm.
  mesh_layer(stack.t_semi, 0.25 * nm * r, std::min(5.0 * nm, stack.t_semi),
             1.0 * nm * r, Layer::kSemiconductor, &m.seg_h, &m.seg_layer);
  // BOX: charge-free, coarse geometric growth.
  mesh_layer(stack.t_box, 1.0 * nm * r, std::min(10.0 * nm, stack.t_box),
             std::max(5.0 * nm, stack.t_box / 6.0) * r, Layer::kBox,
             &m.seg_h, &m.seg_layer);

  m.x.resize(m.seg_h.size() + 1);
  m.node_layer.resize(m.x.size());
  m.x[0] = 0.0;
  for (std::size_t k = 0; k < m.seg_h.size(); ++k) {
    m.x[k + 1] = m.x[k] + m.seg_h[k];
    m.node_layer[k] = m.seg_layer[k];
  }
  m.node_layer.back() = Layer::kBox;

  for (std::size_t k = 0; k < m.seg_h.size(); ++k) {
    const bool last_of_layer =
        k + 1 == m.seg_h.size() || m.seg_layer[k + 1] != m.seg_layer[k];
    if (!last_of_layer) continue;
    if (m.seg_layer[k] == Layer::kFerro) m.ferro_end = k + 1;
    if (m.seg_layer[k] == Layer::kInterfacial) m.semi_begin = k + 1;
    if (m.seg_layer[k] == Layer::kSemiconductor) m.semi_end = k + 1;
  }

  stack.mesh = std::move(m);
  return stack;
}

CarrierDensities semiconductor_charge(double psi, double phi_n, double phi_p,
                                      double doping, double temperature) {
  if (!(temperature > 0.0)) throw ConfigError("temperature must be positive");
  const double vt = thermal_voltage(temperature);

  CarrierDensities out;
  double arg_n = (psi - phi_n) / vt;
  double arg_p = (phi_p - psi) / vt;
  if (std::fabs(arg_n) > 40.0 || std::fabs(arg_p) > 40.0) out.clamped = true;
  arg_n = std::clamp(arg_n, -40.0, 40.0);
  arg_p = std::clamp(arg_p, -40.0, 40.0);
  out.n = kSiliconNi * std::exp(arg_n);
  out.p = kSiliconNi * std::exp(arg_p);
  out.rho = kElementaryCharge * (out.p - out.n + doping);
  return out;
}

double neutral_potential(double doping, double temperature) {
  const double vt = thermal_voltage(temperature);
  return vt * std::asinh(doping / (2.0 * kSiliconNi));
}

}  // namespace ferrosim

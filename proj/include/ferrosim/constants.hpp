#pragma once

namespace ferrosim {

// Physical constants, SI.
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m
inline constexpr double kBoltzmann = 1.380649e-23;  // J/K
inline constexpr double kBoltzmannEv = 8.617333262e-5;  // eV/K

// Silicon bulk parameters at 300 K used by the semiconductor charge model.
inline constexpr double kSiliconEpsR = 11.7;
inline constexpr double kSiliconNi = 1.0e16;       // intrinsic density, 1/m^3
inline constexpr double kSiliconBandgapEv = 1.12;  // eV
inline constexpr double kSiliconAffinityEv = 4.05; // eV

// Workfunction of an electrode whose Fermi level aligns with the silicon
// intrinsic level; potentials are referenced to that level, so a contact at
// voltage V imposes psi = V + (kIntrinsicWorkfunctionEv - contact WF).
inline constexpr double kIntrinsicWorkfunctionEv =
    kSiliconAffinityEv + 0.5 * kSiliconBandgapEv;

inline double thermal_voltage(double temperature_k) {
  return kBoltzmannEv * temperature_k;  // V
}

}  // namespace ferrosim

#pragma once

// Bosonic environment: ohmic spectral density with exponential cutoff,
// thermal correlation kernels, and the coupling geometry (which qubit talks
// to which bath).
//
// The two kernels entering the memory integrals are
//   thermal_kernel(t)  = integral_0^inf dw J(w) e^{-iwt} / (e^{w/theta} - 1)
//   emission_kernel(t) = conj(thermal_kernel(t)) + integral_0^inf dw J(w) e^{+iwt}
// with J(w) = eta w exp(-w/omega_c).  Expanding the Bose factor in a
// geometric series gives thermal_kernel(t) = eta sum_{k>=1} (1/omega_c +
// k/theta + it)^{-2}; the vacuum integral has the closed form
// eta omega_c^2 / (1 - i omega_c t)^2.

#include <complex>
#include <numbers>
#include <vector>

#include "cdd/matrix.hpp"

namespace cdd {

struct OhmicSpectralDensity {
  double eta = 0.05;              // dimensionless coupling strength
  double omega_c = 2.0 * std::numbers::pi;  // cutoff angular frequency (1/tau)
};

// J(w) = eta w exp(-w / omega_c) for w >= 0, zero for w < 0.
double spectral_density(const OhmicSpectralDensity& sd, double omega);

// Bath temperature expressed as theta = k_B T tau / hbar, the thermal energy
// in units of the simulation's angular-frequency scale.  theta = 0 selects
// the zero-temperature limit (the thermal kernel vanishes identically).
class ThermalBath {
 public:
  explicit ThermalBath(double theta);
  static ThermalBath from_kelvin(double t_kelvin, double tau_seconds);

  double theta() const { return theta_; }
  double beta() const { return 1.0 / theta_; }  // inverse temperature (theta > 0)

 private:
  double theta_;
};

enum class ChannelKind { AmplitudeDamping, Dephasing };

// One system-bath coupling term sigma^(s) . (lambda B + conj(lambda) B^dag).
struct NoiseChannel {
  CVec3 lambda;
  ChannelKind kind;
};

// Amplitude damping (lambda = (1, i, 0)/2, i.e. sigma_+) followed by pure
// dephasing (lambda = (0, 0, 1)/2, i.e. sigma_z / 2).
std::vector<NoiseChannel> standard_channels();
NoiseChannel amplitude_damping_channel();
NoiseChannel dephasing_channel();

enum class CouplingTopology { Common, Independent };

// Gamma^{(s,s')}: 1 for a shared bath, delta_{s,s'} for independent baths.
double coupling_weight(CouplingTopology topology, int s, int s_prime);

Complex thermal_kernel(const OhmicSpectralDensity& sd, const ThermalBath& bath, double t);
Complex emission_kernel(const OhmicSpectralDensity& sd, const ThermalBath& bath, double t);

// Zero-temperature part of emission_kernel: eta omega_c^2 / (1 - i omega_c t)^2.
Complex vacuum_kernel(const OhmicSpectralDensity& sd, double t);

enum class KernelKind { Thermal, Emission };

// Direct adaptive-quadrature evaluation of the defining integrals on
// [0, 40 omega_c], absolute tolerance 1e-10.  Slow; used to cross-check the
// series and closed-form paths, never inside the integrator.
Complex kernel_quadrature(const OhmicSpectralDensity& sd, const ThermalBath& bath,
                          double t, KernelKind which);

// Kernel samples on the uniform grid t_i = i dt, i = 0..n_steps, so the
// integrator reads exact table entries instead of re-summing the series.
struct KernelTable {
  double dt = 0.0;
  std::vector<Complex> thermal;
  std::vector<Complex> emission;
};

KernelTable build_kernel_table(const OhmicSpectralDensity& sd, const ThermalBath& bath,
                               double dt, int n_steps);

}  // namespace cdd

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cdd/bath.hpp"

using namespace cdd;

namespace {
constexpr double kPi = std::numbers::pi;
// Model point used throughout: eta = 1/20, cutoff 2 pi, theta for 0.2 K at
// tau = 1 ns.
const OhmicSpectralDensity kSd{0.05, 2.0 * kPi};
const ThermalBath kBath = ThermalBath::from_kelvin(0.2, 1e-9);
}  // namespace

TEST_CASE("spectral density is ohmic with exponential cutoff") {
  CHECK(spectral_density(kSd, 0.0) == 0.0);
  CHECK(spectral_density(kSd, -1.0) == 0.0);
  CHECK(spectral_density(kSd, kSd.omega_c) ==
        doctest::Approx(kSd.eta * kSd.omega_c / std::numbers::e).epsilon(1e-14));

  // Maximum sits at the cutoff.
  const double peak = spectral_density(kSd, kSd.omega_c);
  CHECK(peak > spectral_density(kSd, 0.9 * kSd.omega_c));
  CHECK(peak > spectral_density(kSd, 1.1 * kSd.omega_c));

  CHECK_THROWS_AS(spectral_density(OhmicSpectralDensity{-0.1, 1.0}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(spectral_density(OhmicSpectralDensity{0.1, 0.0}, 1.0),
                  std::invalid_argument);
}

TEST_CASE("bath temperature conversion and validation") {
  // k_B * 0.2 K * 1 ns / hbar.
  CHECK(kBath.theta() == doctest::Approx(26.1843).epsilon(1e-4));
  CHECK(kBath.beta() == doctest::Approx(1.0 / kBath.theta()));

  CHECK(ThermalBath(0.0).theta() == 0.0);
  CHECK_THROWS_AS(ThermalBath(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(ThermalBath::from_kelvin(-0.1, 1e-9), std::invalid_argument);
  CHECK_THROWS_AS(ThermalBath::from_kelvin(0.2, 0.0), std::invalid_argument);
}

TEST_CASE("channel definitions and coupling weights") {
  const NoiseChannel ad = amplitude_damping_channel();
  CHECK(ad.kind == ChannelKind::AmplitudeDamping);
  CHECK(ad.lambda[0] == Complex{0.5});
  CHECK(ad.lambda[1] == Complex{0.0, 0.5});
  CHECK(ad.lambda[2] == Complex{0.0});

  const NoiseChannel deph = dephasing_channel();
  CHECK(deph.kind == ChannelKind::Dephasing);
  CHECK(deph.lambda[0] == Complex{0.0});
  CHECK(deph.lambda[1] == Complex{0.0});
  CHECK(deph.lambda[2] == Complex{0.5});

  const auto both = standard_channels();
  REQUIRE(both.size() == 2);
  CHECK(both[0].kind == ChannelKind::AmplitudeDamping);
  CHECK(both[1].kind == ChannelKind::Dephasing);

  for (int s = 1; s <= 2; ++s)
    for (int sp = 1; sp <= 2; ++sp) {
      CHECK(coupling_weight(CouplingTopology::Common, s, sp) == 1.0);
      CHECK(coupling_weight(CouplingTopology::Independent, s, sp) == (s == sp ? 1.0 : 0.0));
    }
  CHECK_THROWS_AS(coupling_weight(CouplingTopology::Common, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(coupling_weight(CouplingTopology::Independent, 1, 3), std::invalid_argument);
}

TEST_CASE("kernels have the right symmetries and limits") {
  // t = 0: thermal kernel is real and positive (integral of J n over w > 0).
  const Complex t0 = thermal_kernel(kSd, kBath, 0.0);
  CHECK(t0.real() > 0.0);
  CHECK(std::abs(t0.imag()) < 1e-12 * t0.real());

  // Time reversal conjugates both kernels.
  for (const double t : {0.1, 0.5, 1.3, 2.0}) {
    CHECK(std::abs(thermal_kernel(kSd, kBath, -t) - std::conj(thermal_kernel(kSd, kBath, t))) <
          1e-10);
    CHECK(std::abs(emission_kernel(kSd, kBath, -t) -
                   std::conj(emission_kernel(kSd, kBath, t))) < 1e-10);
  }

  // Zero temperature kills the thermal part; emission reduces to vacuum.
  const ThermalBath cold(0.0);
  CHECK(thermal_kernel(kSd, cold, 0.7) == Complex{0.0});
  CHECK(std::abs(emission_kernel(kSd, cold, 0.7) - vacuum_kernel(kSd, 0.7)) < 1e-14);

  // vacuum_kernel(0) = eta omega_c^2.
  CHECK(std::abs(vacuum_kernel(kSd, 0.0) - kSd.eta * kSd.omega_c * kSd.omega_c) < 1e-12);
  CHECK(std::abs(vacuum_kernel(kSd, 0.0) - kPi * kPi / 5.0) < 1e-12);

  // Emission = conj(thermal) + vacuum by construction of the two routes.
  for (const double t : {0.0, 0.3, 1.1}) {
    const Complex lhs = emission_kernel(kSd, kBath, t);
    const Complex rhs = std::conj(thermal_kernel(kSd, kBath, t)) + vacuum_kernel(kSd, t);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("series kernels match direct quadrature") {
  for (int i = 0; i < 20; ++i) {
    const double t = 0.1 * (i + 1);
    const Complex th = thermal_kernel(kSd, kBath, t);
    const Complex th_q = kernel_quadrature(kSd, kBath, t, KernelKind::Thermal);
    CHECK(std::abs(th - th_q) < 1e-8 * std::max(1.0, std::abs(th)));

    const Complex em = emission_kernel(kSd, kBath, t);
    const Complex em_q = kernel_quadrature(kSd, kBath, t, KernelKind::Emission);
    CHECK(std::abs(em - em_q) < 1e-8 * std::max(1.0, std::abs(em)));
  }
}

TEST_CASE("thermal kernel grows linearly with temperature when hot") {
  // High-T limit: kernel(0) -> eta omega_c theta (Bose factor ~ theta/w).
  for (const double theta : {100.0, 1000.0}) {
    const ThermalBath hot(theta);
    const double expected = kSd.eta * kSd.omega_c * theta;
    CHECK(thermal_kernel(kSd, hot, 0.0).real() == doctest::Approx(expected).epsilon(0.05));
  }
}

TEST_CASE("kernels are linear in the coupling strength") {
  const OhmicSpectralDensity half{kSd.eta / 2.0, kSd.omega_c};
  for (const double t : {0.0, 0.4, 1.7}) {
    const Complex full_t = thermal_kernel(kSd, kBath, t);
    const Complex half_t = thermal_kernel(half, kBath, t);
    CHECK(std::abs(full_t - 2.0 * half_t) < 1e-15 * std::abs(full_t) + 1e-300);
    const Complex full_e = emission_kernel(kSd, kBath, t);
    CHECK(std::abs(full_e - 2.0 * emission_kernel(half, kBath, t)) <
          1e-15 * std::abs(full_e) + 1e-300);
  }
}

TEST_CASE("kernel table samples the uniform grid") {
  const double dt = 0.01;
  const int n = 50;
  const KernelTable table = build_kernel_table(kSd, kBath, dt, n);
  REQUIRE(table.thermal.size() == static_cast<std::size_t>(n + 1));
  REQUIRE(table.emission.size() == static_cast<std::size_t>(n + 1));
  CHECK(table.dt == dt);

  for (const int i : {0, 1, 17, n}) {
    const double t = i * dt;
    CHECK(std::abs(table.thermal[static_cast<std::size_t>(i)] - thermal_kernel(kSd, kBath, t)) <
          1e-13);
    CHECK(std::abs(table.emission[static_cast<std::size_t>(i)] -
                   emission_kernel(kSd, kBath, t)) < 1e-13);
  }

  // Both kernels decay once past the cutoff time scale.
  const Complex early = table.emission[5];
  const Complex late = table.emission[static_cast<std::size_t>(n)];
  CHECK(std::abs(late) < std::abs(early));

  CHECK_THROWS_AS(build_kernel_table(kSd, kBath, 0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(build_kernel_table(kSd, kBath, 0.01, -1), std::invalid_argument);
}

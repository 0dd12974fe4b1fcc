#include "cdd/bath.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cdd/errors.hpp"

namespace cdd {

namespace {

constexpr double kBoltzmannJPerK = 1.380649e-23;
constexpr double kHbarJs = 1.054571817e-34;

// Series truncation: the explicit sum stops once the residual left after the
// integral-comparison tail correction is negligible relative to the total.
constexpr int kMinTerms = 16;
constexpr long kMaxTerms = 1000000;
constexpr double kSeriesRelTol = 1e-15;

constexpr double kQuadTol = 1e-10;
constexpr int kQuadMaxDepth = 60;

void check_spectral(const OhmicSpectralDensity& sd) {
  if (!(sd.eta >= 0.0) || !std::isfinite(sd.eta))
    throw std::invalid_argument("OhmicSpectralDensity: eta must be >= 0 and finite");
  if (!(sd.omega_c > 0.0) || !std::isfinite(sd.omega_c))
    throw std::invalid_argument("OhmicSpectralDensity: omega_c must be positive");
}

template <typename F>
Complex adaptive_simpson_rec(const F& f, double a, double b, Complex fa, Complex fm,
                             Complex fb, Complex whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const Complex flm = f(lm);
  const Complex frm = f(rm);
  const Complex left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const Complex right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const Complex delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth >= kQuadMaxDepth)
    throw NumericalError("kernel_quadrature: adaptive Simpson depth exhausted");
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

template <typename F>
Complex adaptive_simpson(const F& f, double a, double b, double tol) {
  const Complex fa = f(a);
  const Complex fb = f(b);
  const Complex fm = f(0.5 * (a + b));
  const Complex whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 0);
}

}  // namespace

double spectral_density(const OhmicSpectralDensity& sd, double omega) {
  check_spectral(sd);
  if (omega < 0.0) return 0.0;
  return sd.eta * omega * std::exp(-omega / sd.omega_c);
}

ThermalBath::ThermalBath(double theta) : theta_(theta) {
  if (!(theta >= 0.0) || !std::isfinite(theta))
    throw std::invalid_argument("ThermalBath: theta must be >= 0 and finite");
}

ThermalBath ThermalBath::from_kelvin(double t_kelvin, double tau_seconds) {
  if (!(t_kelvin >= 0.0) || !std::isfinite(t_kelvin))
    throw std::invalid_argument("ThermalBath: temperature must be >= 0 K");
  if (!(tau_seconds > 0.0) || !std::isfinite(tau_seconds))
    throw std::invalid_argument("ThermalBath: tau_seconds must be positive");
  return ThermalBath(kBoltzmannJPerK * t_kelvin * tau_seconds / kHbarJs);
}

std::vector<NoiseChannel> standard_channels() {
  return {amplitude_damping_channel(), dephasing_channel()};
}

NoiseChannel amplitude_damping_channel() {
  // sigma . lambda = (sigma_x + i sigma_y)/2 = sigma_+
  return NoiseChannel{CVec3{Complex{0.5, 0.0}, Complex{0.0, 0.5}, Complex{0.0, 0.0}},
                      ChannelKind::AmplitudeDamping};
}

NoiseChannel dephasing_channel() {
  return NoiseChannel{CVec3{Complex{0.0, 0.0}, Complex{0.0, 0.0}, Complex{0.5, 0.0}},
                      ChannelKind::Dephasing};
}

double coupling_weight(CouplingTopology topology, int s, int s_prime) {
  if ((s != 1 && s != 2) || (s_prime != 1 && s_prime != 2))
    throw std::invalid_argument("coupling_weight: qubit indices must be 1 or 2");
  if (topology == CouplingTopology::Common) return 1.0;
  return s == s_prime ? 1.0 : 0.0;
}

Complex thermal_kernel(const OhmicSpectralDensity& sd, const ThermalBath& bath, double t) {
  check_spectral(sd);
  if (bath.theta() == 0.0) return {0.0, 0.0};  // no thermal quanta at T = 0

  const double beta = bath.beta();
  const Complex z{1.0 / sd.omega_c, t};

  // sum_{k>=1} (z + k beta)^{-2}, explicit terms plus the Euler-Maclaurin
  // tail:  sum_{k>K} f(k) = 1/(beta u) + 1/(2 u^2) + beta/(6 u^3)
  //                         - beta^3/(30 u^5) + O(beta^5 / u^7),
  // with u = z + (K+1) beta.  The estimate of the first omitted term drives
  // the stopping rule, so the truncation error stays near machine precision
  // instead of decaying like the bare 1/K series remainder.
  Complex sum{0.0, 0.0};
  const double beta3 = beta * beta * beta;
  const double beta5 = beta3 * beta * beta;
  for (long k = 1; k <= kMaxTerms; ++k) {
    const Complex d = z + beta * static_cast<double>(k);
    sum += 1.0 / (d * d);
    if (k < kMinTerms) continue;
    const Complex u = z + beta * static_cast<double>(k + 1);
    const double au = std::abs(u);
    const double next_term = beta5 / (42.0 * au * au * au * au * au * au * au);
    const Complex u2 = u * u;
    const Complex tail = 1.0 / (beta * u) + 0.5 / u2 + beta / (6.0 * u2 * u) -
                         beta3 / (30.0 * u2 * u2 * u);
    if (next_term <= kSeriesRelTol * std::abs(sum + tail)) return sd.eta * (sum + tail);
  }
  // Unreachable for physical parameters; the tail bound is met within tens
  // of terms once k beta dominates |z|.
  const Complex u = z + beta * static_cast<double>(kMaxTerms + 1);
  const Complex u2 = u * u;
  const Complex tail = 1.0 / (beta * u) + 0.5 / u2 + beta / (6.0 * u2 * u) -
                       beta3 / (30.0 * u2 * u2 * u);
  return sd.eta * (sum + tail);
}

Complex vacuum_kernel(const OhmicSpectralDensity& sd, double t) {
  check_spectral(sd);
  const Complex d = Complex{1.0, -sd.omega_c * t};
  return sd.eta * sd.omega_c * sd.omega_c / (d * d);
}

Complex emission_kernel(const OhmicSpectralDensity& sd, const ThermalBath& bath, double t) {
  return std::conj(thermal_kernel(sd, bath, t)) + vacuum_kernel(sd, t);
}

Complex kernel_quadrature(const OhmicSpectralDensity& sd, const ThermalBath& bath,
                          double t, KernelKind which) {
  check_spectral(sd);
  const double upper = 40.0 * sd.omega_c;

  const auto thermal_integrand = [&](double w) -> Complex {
    // Bounded at w -> 0: J(w)/(e^{w/theta} - 1) -> eta theta.
    if (w <= 0.0) return {sd.eta * bath.theta(), 0.0};
    const double occupation = 1.0 / std::expm1(w / bath.theta());
    return spectral_density(sd, w) * occupation *
           std::exp(Complex{0.0, -w * t});
  };
  const auto vacuum_integrand = [&](double w) -> Complex {
    return spectral_density(sd, w) * std::exp(Complex{0.0, w * t});
  };

  const Complex thermal_part =
      (bath.theta() == 0.0)
          ? Complex{0.0, 0.0}
          : adaptive_simpson(thermal_integrand, 0.0, upper, 0.5 * kQuadTol);
  if (which == KernelKind::Thermal) return thermal_part;
  return std::conj(thermal_part) +
         adaptive_simpson(vacuum_integrand, 0.0, upper, 0.5 * kQuadTol);
}

KernelTable build_kernel_table(const OhmicSpectralDensity& sd, const ThermalBath& bath,
                               double dt, int n_steps) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw std::invalid_argument("build_kernel_table: dt must be positive");
  if (n_steps < 0) throw std::invalid_argument("build_kernel_table: n_steps must be >= 0");
  KernelTable table;
  table.dt = dt;
  table.thermal.reserve(static_cast<std::size_t>(n_steps) + 1);
  table.emission.reserve(static_cast<std::size_t>(n_steps) + 1);
  for (int i = 0; i <= n_steps; ++i) {
    const double t = i * dt;
    table.thermal.push_back(thermal_kernel(sd, bath, t));
    table.emission.push_back(emission_kernel(sd, bath, t));
  }
  return table;
}

}  // namespace cdd

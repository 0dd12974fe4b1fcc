#include "cdd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cdd/eigenvalues.hpp"

namespace cdd {

namespace {
double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }
}  // namespace

double fidelity(const DensityMatrix4& rho, const PureState4& target) {
  Complex f = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) f += std::conj(target[i]) * rho.matrix()(i, j) * target[j];
  return clamp01(f.real());
}

double fidelity(const DensityMatrix4& rho, const DensityMatrix4& rho_ref) {
  return clamp01(trace(rho_ref.matrix() * rho.matrix()).real());
}

double concurrence(const DensityMatrix4& rho) {
  const CMat4 yy = kron(pauli(2), pauli(2));
  const CMat4 m = rho.matrix() * yy * conj_entrywise(rho.matrix()) * yy;

  // Rank-deficient states (any pure state) leave exact zeros in the product
  // spectrum that the QR iteration reports only at the eps noise floor; the
  // square root would amplify that noise to sqrt(eps), so clamp everything
  // at the floor to zero first.  The zeros are semisimple, which keeps the
  // floor proportional to eps rather than a fractional power of it.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, frobenius_norm(m));
  auto ev = eig4(m);
  std::array<double, 4> lams{};
  for (int i = 0; i < 4; ++i) {
    const double v = ev[static_cast<std::size_t>(i)].real();
    lams[static_cast<std::size_t>(i)] = v > floor ? std::sqrt(v) : 0.0;
  }
  std::sort(lams.begin(), lams.end(), std::greater<double>());
  return std::max(0.0, lams[0] - lams[1] - lams[2] - lams[3]);
}

double concurrence(const PureState4& psi) {
  // |<psi| sy x sy |conj(psi)>|
  const CMat4 yy = kron(pauli(2), pauli(2));
  Complex s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s += std::conj(psi[i]) * yy(i, j) * std::conj(psi[j]);
  return std::abs(s);
}

double purity(const DensityMatrix4& rho) {
  return trace(rho.matrix() * rho.matrix()).real();
}

DensityMatrix4 to_lab_frame(const DensityMatrix4& rho_interaction,
                            const ExchangeCoupling& ex, const ControlField& cf,
                            double t) {
  const CMat4 u = control_unitary(cf, t) * free_unitary(ex, t);
  return DensityMatrix4::unchecked(u * rho_interaction.matrix() * dagger(u));
}

}  // namespace cdd

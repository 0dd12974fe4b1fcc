#include "cdd/state.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cdd/eigenvalues.hpp"

namespace cdd {

namespace {
constexpr double kNormTol = 1e-12;
constexpr double kHermTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kPositivityFloor = -1e-8;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}  // namespace

PureState4::PureState4(const std::array<Complex, 4>& amplitudes) : a_(amplitudes) {
  double n = 0.0;
  for (const auto& c : a_) n += std::norm(c);
  n = std::sqrt(n);
  if (std::abs(n - 1.0) > kNormTol) {
    std::ostringstream msg;
    msg << "PureState4: amplitudes must be normalized, |psi| = " << n;
    throw std::invalid_argument(msg.str());
  }
}

PureState4 PureState4::up_up() { return PureState4({Complex{1.0}, 0.0, 0.0, 0.0}); }
PureState4 PureState4::up_down() { return PureState4({0.0, Complex{1.0}, 0.0, 0.0}); }
PureState4 PureState4::down_up() { return PureState4({0.0, 0.0, Complex{1.0}, 0.0}); }
PureState4 PureState4::down_down() { return PureState4({0.0, 0.0, 0.0, Complex{1.0}}); }
PureState4 PureState4::singlet() {
  return PureState4({0.0, Complex{kInvSqrt2}, Complex{-kInvSqrt2}, 0.0});
}
PureState4 PureState4::triplet_zero() {
  return PureState4({0.0, Complex{kInvSqrt2}, Complex{kInvSqrt2}, 0.0});
}
PureState4 PureState4::bell_phi_plus() {
  return PureState4({Complex{kInvSqrt2}, 0.0, 0.0, Complex{kInvSqrt2}});
}

Complex inner(const PureState4& bra, const PureState4& ket) {
  Complex s = 0.0;
  for (int i = 0; i < 4; ++i) s += std::conj(bra[i]) * ket[i];
  return s;
}

CMat4 outer(const PureState4& psi) {
  CMat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
  return m;
}

PureState4 apply(const CMat4& u, const PureState4& psi) {
  std::array<Complex, 4> out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[static_cast<std::size_t>(i)] += u(i, j) * psi[j];
  return PureState4(out);
}

DensityMatrix4::DensityMatrix4(const CMat4& m) : m_(m) {
  const double herm = hermiticity_error(m);
  if (herm > kHermTol) {
    std::ostringstream msg;
    msg << "DensityMatrix4: not Hermitian, max deviation = " << herm;
    throw std::invalid_argument(msg.str());
  }
  const double tr_err = std::abs(trace(m) - Complex{1.0});
  if (tr_err > kTraceTol) {
    std::ostringstream msg;
    msg << "DensityMatrix4: trace differs from 1 by " << tr_err;
    throw std::invalid_argument(msg.str());
  }
  const double lo = min_eigenvalue(m);
  if (lo < kPositivityFloor) {
    std::ostringstream msg;
    msg << "DensityMatrix4: negative eigenvalue " << lo;
    throw std::invalid_argument(msg.str());
  }
}

DensityMatrix4 DensityMatrix4::unchecked(const CMat4& m) {
  return DensityMatrix4(m, Unchecked{});
}

DensityMatrix4 DensityMatrix4::pure(const PureState4& psi) {
  return DensityMatrix4(outer(psi), Unchecked{});
}

}  // namespace cdd

#include "cdd/control.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cdd/state.hpp"

namespace cdd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kWindingTol = 1e-9;

double check_winding(double rate, double t_c, const char* label) {
  const double w = rate * t_c / kTwoPi;
  const double rounded = std::round(w);
  if (std::abs(w - rounded) > kWindingTol * std::max(1.0, std::abs(w)) || rounded == 0.0) {
    std::ostringstream msg;
    msg << "ControlField: " << label << " * t_c / (2 pi) must be a non-zero integer, got "
        << w;
    throw std::invalid_argument(msg.str());
  }
  return rounded;
}

// embed(pauli(n), s) and the cross terms sigma_j^(1) sigma_k^(2), built once.
struct PauliTables {
  CMat4 embedded[2][3];
  CMat4 cross[3];  // (sigma^(1) x sigma^(2))_n
  PauliTables() {
    for (int s = 0; s < 2; ++s)
      for (int n = 0; n < 3; ++n) embedded[s][n] = embed(pauli(n + 1), s + 1);
    for (int n = 0; n < 3; ++n) {
      const int p = (n + 1) % 3;
      const int q = (n + 2) % 3;
      cross[n] = embedded[0][p] * embedded[1][q] - embedded[0][q] * embedded[1][p];
    }
  }
};

const PauliTables& tables() {
  static const PauliTables t;
  return t;
}

}  // namespace

ControlField::ControlField(double nx, double nz, double t_c) : nx_(nx), nz_(nz), t_c_(t_c) {
  if (!(t_c > 0.0) || !std::isfinite(t_c))
    throw std::invalid_argument("ControlField: t_c must be positive and finite");
  if (!std::isfinite(nx) || !std::isfinite(nz))
    throw std::invalid_argument("ControlField: field rates must be finite");
  if (!enabled()) return;
  const double wx = check_winding(nx_, t_c_, "nx");
  const double wz = check_winding(nz_, t_c_, "nz");
  if (wx == wz)
    throw std::invalid_argument("ControlField: windings must differ, both are " +
                                std::to_string(wx));
}

ControlField ControlField::disabled(double t_c) { return ControlField(0.0, 0.0, t_c); }

ControlField ControlField::from_windings(int n_x, int n_z, double t_c) {
  if (!(t_c > 0.0) || !std::isfinite(t_c))
    throw std::invalid_argument("ControlField: t_c must be positive and finite");
  return ControlField(kTwoPi * n_x / t_c, kTwoPi * n_z / t_c, t_c);
}

double ControlField::winding_x() const { return nx_ * t_c_ / kTwoPi; }
double ControlField::winding_z() const { return nz_ * t_c_ / kTwoPi; }

RotationMatrix3 RotationMatrix3::identity() {
  RotationMatrix3 m;
  for (int i = 0; i < 3; ++i) m(i, i) = 1.0;
  return m;
}

bool RotationMatrix3::is_so3(double tol) const {
  // R R^T = I
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += (*this)(i, k) * (*this)(j, k);
      if (std::abs(s - (i == j ? 1.0 : 0.0)) > tol) return false;
    }
  const auto& r = *this;
  const double d = r(0, 0) * (r(1, 1) * r(2, 2) - r(1, 2) * r(2, 1)) -
                   r(0, 1) * (r(1, 0) * r(2, 2) - r(1, 2) * r(2, 0)) +
                   r(0, 2) * (r(1, 0) * r(2, 1) - r(1, 1) * r(2, 0));
  return std::abs(d - 1.0) <= tol;
}

CMat4 exchange_hamiltonian(const ExchangeCoupling& ex) {
  const auto& t = tables();
  CMat4 h;
  for (int n = 0; n < 3; ++n) h += t.embedded[0][n] * t.embedded[1][n];
  return ex.j * h;
}

CMat4 free_unitary(const ExchangeCoupling& ex, double t) {
  // Spectral form: one phase on the triplet space, another on the singlet.
  const CMat4 p_singlet = outer(PureState4::singlet());
  const CMat4 p_triplet = CMat4::identity() - p_singlet;
  const Complex e_trip = std::exp(-kImag * ex.j * t);
  const Complex e_sing = std::exp(kImag * 3.0 * ex.j * t);
  return e_trip * p_triplet + e_sing * p_singlet;
}

CMat2 control_unitary_1q(const ControlField& cf, double t) {
  if (!cf.enabled()) return CMat2::identity();
  const CMat2 ux = exp_su2(Vec3{1.0, 0.0, 0.0}, cf.nx() * t);
  const CMat2 uz = exp_su2(Vec3{0.0, 0.0, 1.0}, cf.nz() * t);
  return ux * uz;
}

CMat4 control_unitary(const ControlField& cf, double t) {
  const CMat2 u = control_unitary_1q(cf, t);
  return kron(u, u);
}

CMat4 control_hamiltonian(const ControlField& cf, double t) {
  if (!cf.enabled()) return CMat4::zero();
  const auto& tb = tables();
  const double phase = 2.0 * cf.nx() * t;
  const CMat4 sx = tb.embedded[0][0] + tb.embedded[1][0];
  const CMat4 sy = tb.embedded[0][1] + tb.embedded[1][1];
  const CMat4 sz = tb.embedded[0][2] + tb.embedded[1][2];
  return cf.nx() * sx + cf.nz() * std::cos(phase) * sz - cf.nz() * std::sin(phase) * sy;
}

RotationMatrix3 rotation_matrix(const ControlField& cf, double t) {
  if (!cf.enabled()) return RotationMatrix3::identity();
  const CMat2 u = control_unitary_1q(cf, t);
  const CMat2 ud = dagger(u);
  RotationMatrix3 r;
  for (int m = 0; m < 3; ++m) {
    const CMat2 conj_m = ud * pauli(m + 1) * u;
    for (int n = 0; n < 3; ++n)
      r(m, n) = 0.5 * trace(pauli(n + 1) * conj_m).real();
  }
  return r;
}

HeisenbergCoefficients heisenberg_coeffs(const ExchangeCoupling& ex, double t) {
  const double cos4jt = std::cos(4.0 * ex.j * t);
  HeisenbergCoefficients h;
  h.a = 0.5 * (1.0 + cos4jt);
  h.b = 1.0 - h.a;  // keeps a + b == 1 exactly
  h.c = 0.5 * std::sin(4.0 * ex.j * t);
  return h;
}

CMat4 heisenberg_sigma(const ExchangeCoupling& ex, int qubit, int axis, double t) {
  if (qubit != 1 && qubit != 2)
    throw std::invalid_argument("heisenberg_sigma: qubit must be 1 or 2");
  if (axis < 1 || axis > 3)
    throw std::invalid_argument("heisenberg_sigma: axis must be 1, 2 or 3");
  const auto& tb = tables();
  const auto h = heisenberg_coeffs(ex, t);
  const int s = qubit - 1;
  const int n = axis - 1;
  const double cross_sign = (qubit == 1) ? -1.0 : 1.0;
  return h.a * tb.embedded[s][n] + h.b * tb.embedded[1 - s][n] +
         cross_sign * h.c * tb.cross[n];
}

double decoupling_residual(const ControlField& cf, int nodes) {
  if (!cf.enabled())
    throw std::invalid_argument("decoupling_residual: field is disabled");
  if (nodes < 3 || nodes % 2 == 0)
    throw std::invalid_argument("decoupling_residual: nodes must be odd and >= 3");

  const double h = cf.t_c() / (nodes - 1);
  std::array<std::array<double, 3>, 3> acc{};
  for (int i = 0; i < nodes; ++i) {
    const double w = (i == 0 || i == nodes - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const auto r = rotation_matrix(cf, i * h);
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n) acc[m][n] += w * r(m, n);
  }
  double sq = 0.0;
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) {
      const double v = acc[m][n] * h / 3.0;
      sq += v * v;
    }
  return std::sqrt(sq);
}

}  // namespace cdd

#pragma once

// Coherent part of the model: Heisenberg exchange between the two qubits
// plus the continuous control field that protects the gate.  Time is
// measured in units of the gate time tau, angular frequencies in 1/tau.

#include <array>

#include "cdd/matrix.hpp"

namespace cdd {

struct ExchangeCoupling {
  double j = 0.0;  // exchange angular frequency; 0 disables exchange
};

// Control drive: a static x field of angular frequency nx plus a z/y
// component of magnitude nz rotating about x.  Over one cycle t_c both
// phases wind an integer number of turns; the windings must be distinct
// non-zero integers or the cycle average of the induced rotation would not
// vanish.  A disabled field is represented by nx = nz = 0.
class ControlField {
 public:
  ControlField(double nx, double nz, double t_c);

  static ControlField disabled(double t_c = 1.0);
  // Field with winding numbers n_x, n_z over the cycle: nx = 2 pi n_x / t_c.
  static ControlField from_windings(int n_x, int n_z, double t_c);

  double nx() const { return nx_; }
  double nz() const { return nz_; }
  double t_c() const { return t_c_; }
  bool enabled() const { return nx_ != 0.0 || nz_ != 0.0; }

  double winding_x() const;  // nx * t_c / (2 pi)
  double winding_z() const;

 private:
  double nx_;
  double nz_;
  double t_c_;
};

// Coefficients of a Pauli operator conjugated by the exchange evolution:
// U0^dag sigma_n^(s) U0 = a sigma_n^(s) + b sigma_n^(s') -+ c (sigma^(1) x sigma^(2))_n.
// a + b = 1 exactly by construction and a b = c^2.
struct HeisenbergCoefficients {
  double a;
  double b;
  double c;
};

struct RotationMatrix3 {
  std::array<std::array<double, 3>, 3> r{};

  double& operator()(int m, int n) { return r[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)]; }
  const double& operator()(int m, int n) const {
    return r[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)];
  }
  static RotationMatrix3 identity();
  bool is_so3(double tol) const;  // orthogonal with determinant +1
};

// H0 = J sigma^(1) . sigma^(2); eigenvalues {J, J, J, -3J}.
CMat4 exchange_hamiltonian(const ExchangeCoupling& ex);

// U0(t) = exp(-i H0 t), evaluated through the singlet/triplet projectors.
// At J = pi/8, t = 1 this is the sqrt(SWAP) gate.
CMat4 free_unitary(const ExchangeCoupling& ex, double t);

// Single-qubit control propagator U(t) = exp(-i nx t sx) exp(-i nz t sz);
// both qubits are driven identically.
CMat2 control_unitary_1q(const ControlField& cf, double t);

// Two-qubit control propagator U(t) (x) U(t).  Equals the identity at
// t = t_c by construction.
CMat4 control_unitary(const ControlField& cf, double t);

// Generator of control_unitary: i dUc/dt Uc^dag.  The z component seen from
// the frame co-rotating with the x drive winds at 2 nx t, since conjugation
// by exp(-i nx t sx) rotates operators through twice the phase.
CMat4 control_hamiltonian(const ControlField& cf, double t);

// R_{m,n}(t) = 1/2 Tr[sigma_n U^dag(t) sigma_m U(t)] for the single-qubit
// control propagator; identity when the field is disabled.
RotationMatrix3 rotation_matrix(const ControlField& cf, double t);

HeisenbergCoefficients heisenberg_coeffs(const ExchangeCoupling& ex, double t);

// U0(t)^dag sigma_n^(s) U0(t) in closed form; qubit is 1 or 2, axis 1..3.
CMat4 heisenberg_sigma(const ExchangeCoupling& ex, int qubit, int axis, double t);

// Frobenius norm of the cycle integral of rotation_matrix, evaluated with
// composite Simpson on `nodes` points (odd, >= 3).  Vanishing residual is
// the condition for the control field to average the coupling away.
double decoupling_residual(const ControlField& cf, int nodes);

}  // namespace cdd

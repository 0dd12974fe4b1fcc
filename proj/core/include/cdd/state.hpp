#pragma once

#include <array>

#include "cdd/matrix.hpp"

namespace cdd {

// Normalized two-qubit pure state (unit norm within 1e-12, enforced at
// construction).
class PureState4 {
 public:
  explicit PureState4(const std::array<Complex, 4>& amplitudes);

  const std::array<Complex, 4>& amplitudes() const { return a_; }
  const Complex& operator[](int i) const { return a_[static_cast<std::size_t>(i)]; }

  static PureState4 up_up();
  static PureState4 up_down();
  static PureState4 down_up();
  static PureState4 down_down();
  static PureState4 singlet();       // (|ud> - |du>)/sqrt(2)
  static PureState4 triplet_zero();  // (|ud> + |du>)/sqrt(2)
  static PureState4 bell_phi_plus(); // (|uu> + |dd>)/sqrt(2)

 private:
  std::array<Complex, 4> a_;
};

Complex inner(const PureState4& bra, const PureState4& ket);
CMat4 outer(const PureState4& psi);  // |psi><psi|
PureState4 apply(const CMat4& u, const PureState4& psi);

// Two-qubit density matrix.  The checked constructor enforces Hermiticity
// within 1e-10, unit trace within 1e-10 and eigenvalues >= -1e-8.
// Positivity can degrade slightly along weak-coupling trajectories, so the
// integrator stores its states through unchecked() and reports the minimum
// eigenvalue as a diagnostic instead of rejecting the state.
class DensityMatrix4 {
 public:
  explicit DensityMatrix4(const CMat4& m);

  static DensityMatrix4 unchecked(const CMat4& m);
  static DensityMatrix4 pure(const PureState4& psi);

  const CMat4& matrix() const { return m_; }

  friend bool operator==(const DensityMatrix4& a, const DensityMatrix4& b) {
    return a.m_ == b.m_;
  }

 private:
  struct Unchecked {};
  DensityMatrix4(const CMat4& m, Unchecked) : m_(m) {}
  CMat4 m_;
};

}  // namespace cdd

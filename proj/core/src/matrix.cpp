#include "cdd/matrix.hpp"

#include <stdexcept>
#include <string>

namespace cdd {

CMat4 kron(const CMat2& a, const CMat2& b) {
  CMat4 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return r;
}

CMat2 pauli(int axis) {
  CMat2 m;
  switch (axis) {
    case 1:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 2:
      m(0, 1) = -kImag;
      m(1, 0) = kImag;
      break;
    case 3:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    default:
      throw std::invalid_argument("pauli: axis must be 1, 2 or 3, got " +
                                  std::to_string(axis));
  }
  return m;
}

CMat4 embed(const CMat2& op, int qubit) {
  if (qubit == 1) return kron(op, CMat2::identity());
  if (qubit == 2) return kron(CMat2::identity(), op);
  throw std::invalid_argument("embed: qubit must be 1 or 2, got " + std::to_string(qubit));
}

CMat2 exp_su2(const Vec3& axis, double theta) {
  const double n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (std::abs(n - 1.0) > 1e-12)
    throw std::invalid_argument("exp_su2: axis must be unit length, |n| = " +
                                std::to_string(n));
  const double c = std::cos(theta);
  const Complex s = -kImag * std::sin(theta);
  CMat2 m;
  m(0, 0) = c + s * axis[2];
  m(0, 1) = s * (axis[0] - kImag * axis[1]);
  m(1, 0) = s * (axis[0] + kImag * axis[1]);
  m(1, 1) = c - s * axis[2];
  return m;
}

CMat4 swap_gate() {
  CMat4 m;
  m(0, 0) = 1.0;
  m(1, 2) = 1.0;
  m(2, 1) = 1.0;
  m(3, 3) = 1.0;
  return m;
}

}  // namespace cdd

#pragma once

// Dense complex 2x2 / 4x4 matrix algebra for two-qubit dynamics.
//
// Basis convention used throughout the library: the two-qubit computational
// basis is ordered |uu>, |ud>, |du>, |dd>.  Qubit 1 is the left tensor
// factor, so embed(op, 1) = op (x) I and embed(op, 2) = I (x) op.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace cdd {

using Complex = std::complex<double>;

inline constexpr Complex kImag{0.0, 1.0};

using Vec3 = std::array<double, 3>;    // real 3-vector (rotation axes, fields)
using CVec3 = std::array<Complex, 3>;  // complex 3-vector (coupling weights)

// Row-major fixed-size complex matrix.  Value type: cheap to copy, lives on
// the stack, no heap traffic in inner loops.
template <int N>
struct SquareCMat {
  std::array<Complex, static_cast<std::size_t>(N) * N> e{};

  Complex& operator()(int r, int c) { return e[static_cast<std::size_t>(r) * N + c]; }
  const Complex& operator()(int r, int c) const {
    return e[static_cast<std::size_t>(r) * N + c];
  }

  static SquareCMat identity() {
    SquareCMat m;
    for (int i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }
  static SquareCMat zero() { return SquareCMat{}; }

  SquareCMat& operator+=(const SquareCMat& o) {
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.e[i];
    return *this;
  }
  SquareCMat& operator-=(const SquareCMat& o) {
    for (std::size_t i = 0; i < e.size(); ++i) e[i] -= o.e[i];
    return *this;
  }
  SquareCMat& operator*=(const Complex& s) {
    for (auto& x : e) x *= s;
    return *this;
  }

  friend SquareCMat operator+(SquareCMat a, const SquareCMat& b) { return a += b; }
  friend SquareCMat operator-(SquareCMat a, const SquareCMat& b) { return a -= b; }
  friend SquareCMat operator*(const Complex& s, SquareCMat m) { return m *= s; }
  friend SquareCMat operator*(SquareCMat m, const Complex& s) { return m *= s; }

  friend SquareCMat operator*(const SquareCMat& a, const SquareCMat& b) {
    SquareCMat r;
    for (int i = 0; i < N; ++i)
      for (int k = 0; k < N; ++k) {
        const Complex aik = a(i, k);
        for (int j = 0; j < N; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend bool operator==(const SquareCMat& a, const SquareCMat& b) { return a.e == b.e; }
};

using CMat2 = SquareCMat<2>;
using CMat4 = SquareCMat<4>;

template <int N>
SquareCMat<N> dagger(const SquareCMat<N>& m) {
  SquareCMat<N> r;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) r(i, j) = std::conj(m(j, i));
  return r;
}

// Entrywise complex conjugate in the computational basis (no transpose).
template <int N>
SquareCMat<N> conj_entrywise(const SquareCMat<N>& m) {
  SquareCMat<N> r;
  for (std::size_t i = 0; i < m.e.size(); ++i) r.e[i] = std::conj(m.e[i]);
  return r;
}

template <int N>
Complex trace(const SquareCMat<N>& m) {
  Complex t = 0.0;
  for (int i = 0; i < N; ++i) t += m(i, i);
  return t;
}

template <int N>
double frobenius_norm(const SquareCMat<N>& m) {
  double s = 0.0;
  for (const auto& x : m.e) s += std::norm(x);
  return std::sqrt(s);
}

template <int N>
double max_abs_diff(const SquareCMat<N>& a, const SquareCMat<N>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.e.size(); ++i) d = std::max(d, std::abs(a.e[i] - b.e[i]));
  return d;
}

template <int N>
bool approx_equal(const SquareCMat<N>& a, const SquareCMat<N>& b, double tol) {
  return max_abs_diff(a, b) <= tol;
}

template <int N>
SquareCMat<N> commutator(const SquareCMat<N>& a, const SquareCMat<N>& b) {
  return a * b - b * a;
}

template <int N>
double hermiticity_error(const SquareCMat<N>& m) {
  double d = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j) d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

template <int N>
bool is_hermitian(const SquareCMat<N>& m, double tol) {
  return hermiticity_error(m) <= tol;
}

template <int N>
bool is_unitary(const SquareCMat<N>& m, double tol) {
  return approx_equal(dagger(m) * m, SquareCMat<N>::identity(), tol);
}

// Determinant via Gaussian elimination with partial pivoting.
template <int N>
Complex det(SquareCMat<N> m) {
  Complex d = 1.0;
  for (int c = 0; c < N; ++c) {
    int p = c;
    for (int r = c + 1; r < N; ++r)
      if (std::abs(m(r, c)) > std::abs(m(p, c))) p = r;
    if (std::abs(m(p, c)) == 0.0) return 0.0;
    if (p != c) {
      for (int j = c; j < N; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    for (int r = c + 1; r < N; ++r) {
      const Complex f = m(r, c) / m(c, c);
      for (int j = c; j < N; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return d;
}

CMat4 kron(const CMat2& a, const CMat2& b);

// Pauli matrix for axis 1 = x, 2 = y, 3 = z.  Throws std::invalid_argument
// for any other axis.
CMat2 pauli(int axis);

// Single-qubit operator lifted into the two-qubit space; qubit is 1 or 2.
CMat4 embed(const CMat2& op, int qubit);

// exp(-i theta n.sigma) = cos(theta) I - i sin(theta) n.sigma for a unit
// axis n (|n| = 1 within 1e-12; throws otherwise).
CMat2 exp_su2(const Vec3& axis, double theta);

// Two-qubit SWAP in the computational basis.
CMat4 swap_gate();

}  // namespace cdd

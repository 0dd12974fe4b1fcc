#include "cdd/eigenvalues.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>

#include "cdd/errors.hpp"

namespace cdd {

namespace {

constexpr int kN = 4;
constexpr int kMaxSweeps = 200;

// In-place similarity reduction to upper Hessenberg form with complex
// Householder reflectors.  Entries below the first subdiagonal end up
// exactly zero.
void hessenberg(CMat4& h) {
  for (int k = 0; k + 2 < kN; ++k) {
    // Householder vector for column k, rows k+1..N-1.
    Complex v[kN];
    double tail = 0.0;
    for (int i = k + 1; i < kN; ++i) {
      v[i] = h(i, k);
      if (i > k + 1) tail += std::norm(v[i]);
    }
    if (tail == 0.0) continue;  // already in Hessenberg shape for this column
    const double xnorm = std::sqrt(std::norm(v[k + 1]) + tail);
    const Complex phase =
        (v[k + 1] == Complex{0.0, 0.0}) ? Complex{1.0, 0.0} : v[k + 1] / std::abs(v[k + 1]);
    const Complex alpha = -phase * xnorm;
    v[k + 1] -= alpha;
    double vsq = 0.0;
    for (int i = k + 1; i < kN; ++i) vsq += std::norm(v[i]);
    if (vsq == 0.0) continue;
    const double beta = 2.0 / vsq;

    // Left: rows k+1..N-1 of every column.
    for (int j = 0; j < kN; ++j) {
      Complex s = 0.0;
      for (int i = k + 1; i < kN; ++i) s += std::conj(v[i]) * h(i, j);
      s *= beta;
      for (int i = k + 1; i < kN; ++i) h(i, j) -= s * v[i];
    }
    // Right: columns k+1..N-1 of every row.
    for (int i = 0; i < kN; ++i) {
      Complex s = 0.0;
      for (int j = k + 1; j < kN; ++j) s += h(i, j) * v[j];
      s *= beta;
      for (int j = k + 1; j < kN; ++j) h(i, j) -= s * std::conj(v[j]);
    }
    h(k + 1, k) = alpha;
    for (int i = k + 2; i < kN; ++i) h(i, k) = 0.0;
  }
}

// Complex Givens rotation G = [[c, s], [-conj(s), c]] (c real) such that
// G * (f, g)^T has a zero second component.
void make_givens(const Complex& f, const Complex& g, double& c, Complex& s) {
  if (f == Complex{0.0, 0.0}) {
    c = 0.0;
    s = 1.0;
    return;
  }
  const double r = std::sqrt(std::norm(f) + std::norm(g));
  c = std::abs(f) / r;
  s = (f / std::abs(f)) * std::conj(g) / r;
}

std::array<Complex, 2> eig2(const Complex& a, const Complex& b, const Complex& c,
                            const Complex& d) {
  const Complex half_tr = 0.5 * (a + d);
  const Complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
  return {half_tr + disc, half_tr - disc};
}

}  // namespace

std::array<Complex, 4> eig4(const CMat4& m) {
  CMat4 h = m;
  hessenberg(h);

  const double scale = std::max(frobenius_norm(h), DBL_MIN);
  std::array<Complex, 4> out{};
  int found = 0;

  int hi = kN - 1;
  int sweeps = 0;
  int since_deflation = 0;
  while (hi >= 0) {
    // Flush negligible subdiagonals, then locate the unreduced block [lo, hi].
    for (int i = 1; i <= hi; ++i) {
      const double tiny =
          DBL_EPSILON * std::max(std::abs(h(i - 1, i - 1)) + std::abs(h(i, i)), scale);
      if (std::abs(h(i, i - 1)) <= tiny) h(i, i - 1) = 0.0;
    }
    int lo = hi;
    while (lo > 0 && h(lo, lo - 1) != Complex{0.0, 0.0}) --lo;

    if (lo == hi) {
      out[found++] = h(hi, hi);
      --hi;
      since_deflation = 0;
      continue;
    }
    if (lo == hi - 1) {
      const auto pair = eig2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi));
      out[found++] = pair[0];
      out[found++] = pair[1];
      hi -= 2;
      since_deflation = 0;
      continue;
    }

    if (++sweeps > kMaxSweeps) {
      double resid = 0.0;
      for (int i = 1; i <= hi; ++i) resid = std::max(resid, std::abs(h(i, i - 1)));
      std::ostringstream msg;
      msg << "eig4: QR iteration exceeded " << kMaxSweeps
          << " sweeps; largest subdiagonal residual = " << resid;
      throw NumericalError(msg.str());
    }

    // Wilkinson shift from the trailing 2x2, with an occasional exceptional
    // shift to break out of rare non-deflating cycles.
    Complex mu;
    if (++since_deflation % 15 == 0) {
      mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
    } else {
      const auto pair = eig2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
      mu = (std::abs(pair[0] - h(hi, hi)) < std::abs(pair[1] - h(hi, hi))) ? pair[0]
                                                                           : pair[1];
    }

    // Explicit shifted QR step on the active block: H - mu I = QR, then RQ + mu I.
    const int k = hi - lo + 1;
    Complex b[kN][kN];
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) b[i][j] = h(lo + i, lo + j);
    for (int i = 0; i < k; ++i) b[i][i] -= mu;

    double gc[kN - 1];
    Complex gs[kN - 1];
    for (int i = 0; i + 1 < k; ++i) {
      make_givens(b[i][i], b[i + 1][i], gc[i], gs[i]);
      for (int j = i; j < k; ++j) {
        const Complex t0 = b[i][j];
        const Complex t1 = b[i + 1][j];
        b[i][j] = gc[i] * t0 + gs[i] * t1;
        b[i + 1][j] = -std::conj(gs[i]) * t0 + gc[i] * t1;
      }
      b[i + 1][i] = 0.0;
    }
    for (int i = 0; i + 1 < k; ++i) {
      const int rows = std::min(i + 2, k - 1);
      for (int r = 0; r <= rows; ++r) {
        const Complex t0 = b[r][i];
        const Complex t1 = b[r][i + 1];
        b[r][i] = gc[i] * t0 + std::conj(gs[i]) * t1;
        b[r][i + 1] = -gs[i] * t0 + gc[i] * t1;
      }
    }
    for (int i = 0; i < k; ++i) b[i][i] += mu;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) h(lo + i, lo + j) = b[i][j];
  }
  return out;
}

double min_eigenvalue(const CMat4& m) {
  const auto ev = eig4(m);
  double lo = ev[0].real();
  for (const auto& v : ev) lo = std::min(lo, v.real());
  return lo;
}

}  // namespace cdd

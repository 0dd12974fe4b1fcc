#pragma once

#include <array>

#include "cdd/matrix.hpp"

namespace cdd {

// Eigenvalues of a general complex 4x4 matrix, unordered.
//
// Householder reduction to upper Hessenberg form followed by shifted QR
// iteration with Wilkinson shifts.  Throws NumericalError if the iteration
// has not deflated every eigenvalue after 200 sweeps (the message reports
// the largest remaining subdiagonal entry).
std::array<Complex, 4> eig4(const CMat4& m);

// Smallest real part among the eigenvalues of a (nominally Hermitian)
// matrix.  Used for positivity diagnostics along trajectories.
double min_eigenvalue(const CMat4& m);

}  // namespace cdd

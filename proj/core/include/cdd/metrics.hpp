#pragma once

#include "cdd/control.hpp"
#include "cdd/matrix.hpp"
#include "cdd/state.hpp"

namespace cdd {

// <target| rho |target>, clamped to [0, 1] for reporting.  Trajectories are
// integrated in the interaction picture, where the ideal evolution holds the
// state fixed, so gate fidelity is overlap with the initial state.
double fidelity(const DensityMatrix4& rho, const PureState4& target);

// Trace overlap Tr(rho_ref rho); coincides with the pure-state fidelity when
// rho_ref is a projector.
double fidelity(const DensityMatrix4& rho, const DensityMatrix4& rho_ref);

// Wootters concurrence: max(0, l1 - l2 - l3 - l4) with l_i the decreasing
// square roots of the eigenvalues of rho (sy x sy) conj(rho) (sy x sy).
// Negative numerical dust below 1e-10 is clamped before the square root.
double concurrence(const DensityMatrix4& rho);
double concurrence(const PureState4& psi);

double purity(const DensityMatrix4& rho);  // Tr(rho^2)

// Undo the interaction picture: rho_lab = Uc(t) U0(t) rho U0(t)^dag Uc(t)^dag.
// Concurrence is invariant under the local Uc, so it may be reported from
// U0 rho U0^dag alone; this returns the full lab-frame state.
DensityMatrix4 to_lab_frame(const DensityMatrix4& rho_interaction,
                            const ExchangeCoupling& ex, const ControlField& cf, double t);

}  // namespace cdd

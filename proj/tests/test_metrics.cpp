#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "cdd/control.hpp"
#include "cdd/matrix.hpp"
#include "cdd/metrics.hpp"
#include "cdd/state.hpp"
#include "support/oracles.hpp"

using namespace cdd;
using testsupport::Rng;

namespace {

// Pure-state concurrence in closed form: 2 |a0 a3 - a1 a2|.
double pure_concurrence_formula(const PureState4& psi) {
  return 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
}

DensityMatrix4 werner(double p) {
  const CMat4 bell = outer(PureState4::bell_phi_plus());
  CMat4 rho = p * bell + (0.25 * (1.0 - p)) * CMat4::identity();
  return DensityMatrix4(rho);
}

}  // namespace

TEST_CASE("fidelity basics") {
  const PureState4 ud = PureState4::up_down();
  const DensityMatrix4 rho = DensityMatrix4::pure(ud);
  CHECK(fidelity(rho, ud) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fidelity(rho, PureState4::down_up()) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(fidelity(rho, PureState4::singlet()) == doctest::Approx(0.5).epsilon(1e-14));

  // Projector overlap route agrees with the pure-target route.
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix4 mixed = DensityMatrix4::unchecked(rng.density());
    const PureState4 target = rng.pure_state();
    CHECK(fidelity(mixed, target) ==
          doctest::Approx(fidelity(mixed, DensityMatrix4::pure(target))).epsilon(1e-12));
  }

  // Maximally mixed state has overlap 1/4 with every pure state.
  const DensityMatrix4 mm = DensityMatrix4::unchecked(0.25 * CMat4::identity());
  CHECK(fidelity(mm, PureState4::singlet()) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("purity distinguishes pure from mixed") {
  CHECK(purity(DensityMatrix4::pure(PureState4::bell_phi_plus())) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(purity(DensityMatrix4::unchecked(0.25 * CMat4::identity())) ==
        doctest::Approx(0.25).epsilon(1e-14));

  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const double p = purity(DensityMatrix4::unchecked(rng.density()));
    CHECK(p <= 1.0 + 1e-12);
    CHECK(p >= 0.25 - 1e-12);
  }
}

TEST_CASE("concurrence matches the pure-state closed form") {
  CHECK(concurrence(PureState4::bell_phi_plus()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(concurrence(PureState4::singlet()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(concurrence(PureState4::up_down()) == doctest::Approx(0.0).epsilon(1e-12));

  Rng rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const PureState4 psi = rng.pure_state();
    const double expected = pure_concurrence_formula(psi);
    CHECK(std::abs(concurrence(psi) - expected) < 1e-9);
    // Density-matrix route agrees on projectors.
    CHECK(std::abs(concurrence(DensityMatrix4::pure(psi)) - expected) < 1e-9);
  }
}

TEST_CASE("concurrence of Werner states") {
  // C(p) = max(0, (3p - 1) / 2) for p Bell + (1 - p)/4 identity.
  for (const double p : {0.2, 0.5, 0.9}) {
    const double expected = std::max(0.0, (3.0 * p - 1.0) / 2.0);
    CHECK(std::abs(concurrence(werner(p)) - expected) < 1e-9);
  }
  CHECK(concurrence(werner(1.0 / 3.0)) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(concurrence(werner(0.0)) == 0.0);
}

TEST_CASE("concurrence is invariant under local unitaries") {
  Rng rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix4 rho = DensityMatrix4::unchecked(rng.density());
    const CMat4 local = kron(rng.unitary2(), rng.unitary2());
    const DensityMatrix4 rotated = DensityMatrix4::unchecked(local * rho.matrix() * dagger(local));
    CHECK(std::abs(concurrence(rotated) - concurrence(rho)) < 1e-9);
  }
}

TEST_CASE("mixing never raises concurrence above the ensemble average") {
  // Convex roof: C(sum p_i |psi_i><psi_i|) <= sum p_i C(psi_i).
  Rng rng(45);
  for (int trial = 0; trial < 20; ++trial) {
    const PureState4 a = rng.pure_state();
    const PureState4 b = rng.pure_state();
    const double w = rng.real(0.1, 0.9);
    const CMat4 mix = w * outer(a) + (1.0 - w) * outer(b);
    const double avg = w * concurrence(a) + (1.0 - w) * concurrence(b);
    CHECK(concurrence(DensityMatrix4(mix)) <= avg + 1e-9);
  }
}

TEST_CASE("ideal gate output is maximally entangled") {
  const ExchangeCoupling ex{std::numbers::pi / 8.0};
  const PureState4 out = apply(free_unitary(ex, 1.0), PureState4::up_down());
  CHECK(std::abs(concurrence(out) - 1.0) < 1e-10);
}

TEST_CASE("lab frame transform preserves concurrence and purity") {
  const ExchangeCoupling ex{std::numbers::pi / 8.0};
  const ControlField cf = ControlField::from_windings(14, 7, 1.0);

  Rng rng(46);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix4 rho = DensityMatrix4::unchecked(rng.density());
    const double t = rng.real(0.0, 1.0);
    const DensityMatrix4 lab = to_lab_frame(rho, ex, cf, t);
    CHECK(std::abs(purity(lab) - purity(rho)) < 1e-12);
    // Uc is local, U0 is not: only the control part must leave concurrence
    // unchanged.  Compare against the U0-only rotation.
    const CMat4 u0 = free_unitary(ex, t);
    const DensityMatrix4 exchanged =
        DensityMatrix4::unchecked(u0 * rho.matrix() * dagger(u0));
    CHECK(std::abs(concurrence(lab) - concurrence(exchanged)) < 1e-9);
  }

  // At t = 0 both frames coincide.
  const DensityMatrix4 rho0 = DensityMatrix4::pure(PureState4::up_down());
  CHECK(max_abs_diff(to_lab_frame(rho0, ex, cf, 0.0).matrix(), rho0.matrix()) < 1e-14);
}

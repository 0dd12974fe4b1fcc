#include "cdd/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>

#include "cdd/eigenvalues.hpp"
#include "cdd/errors.hpp"

namespace cdd {

namespace {

constexpr double kTraceDriftLimit = 1e-4;
constexpr double kHermDriftLimit = 1e-6;

// acc += a * x with the complex product written out, keeping the hot loops
// branch-free.
inline void axpy(CMat4& acc, const Complex& a, const CMat4& x) {
  const double ar = a.real();
  const double ai = a.imag();
  for (std::size_t i = 0; i < 16; ++i) {
    const double xr = x.e[i].real();
    const double xi = x.e[i].imag();
    acc.e[i] += Complex{ar * xr - ai * xi, ar * xi + ai * xr};
  }
}

// Dressed-coupling samples for one channel on the half-step grid
// t = m dt/2, m = 0..2n: both the operator and its adjoint.
struct ChannelSamples {
  std::array<std::vector<CMat4>, 2> r;
  std::array<std::vector<CMat4>, 2> rdag;
};

// Memory integrals at stage half-index m (time m dt/2).  History nodes sit
// on the full dt grid; odd m appends the trailing half interval ending at
// the stage point itself.
void accumulate_memory(const KernelTable& kernels, const ChannelSamples& cs, int m,
                       double dt, MemoryIntegrals& out) {
  out = MemoryIntegrals{};
  if (m == 0) return;
  const int f = m / 2;
  const bool half = (m % 2) != 0;
  for (int sp = 0; sp < 2; ++sp) {
    CMat4& qt = out.thermal[static_cast<std::size_t>(sp)];
    CMat4& qe = out.emission[static_cast<std::size_t>(sp)];
    const auto& r = cs.r[static_cast<std::size_t>(sp)];
    const auto& rd = cs.rdag[static_cast<std::size_t>(sp)];
    for (int i = 0; i <= f; ++i) {
      double w;
      if (!half)
        w = (i == 0 || i == f) ? 0.5 * dt : dt;
      else if (f == 0)
        w = 0.25 * dt;  // single half interval: nodes {0, stage}
      else if (i == 0)
        w = 0.5 * dt;
      else if (i == f)
        w = 0.75 * dt;  // closes [t_{f-1}, t_f] and opens [t_f, stage]
      else
        w = dt;
      const std::size_t d = static_cast<std::size_t>(m - 2 * i);
      const std::size_t node = static_cast<std::size_t>(2 * i);
      axpy(qt, w * kernels.thermal[d], rd[node]);
      axpy(qe, w * kernels.emission[d], r[node]);
    }
    if (half) {
      const std::size_t node = static_cast<std::size_t>(m);
      axpy(qt, 0.25 * dt * kernels.thermal[0], rd[node]);
      axpy(qe, 0.25 * dt * kernels.emission[0], r[node]);
    }
  }
}

// The four commutator terms for one channel at one stage time.  The first
// two pair the stage operator with the memory integrals; the last two are
// their formal adjoints, written out so the expression is exact for
// non-Hermitian input states as well.
void add_channel_terms(CMat4& acc, CouplingTopology topology,
                       const std::array<const CMat4*, 2>& r,
                       const std::array<const CMat4*, 2>& rdag,
                       const MemoryIntegrals& q, const CMat4& rho) {
  for (int sp = 0; sp < 2; ++sp) {
    const CMat4& qt = q.thermal[static_cast<std::size_t>(sp)];
    const CMat4& qe = q.emission[static_cast<std::size_t>(sp)];
    const CMat4 p1 = rho * qt;
    const CMat4 p2 = rho * qe;
    const CMat4 p3 = dagger(qt) * rho;
    const CMat4 p4 = dagger(qe) * rho;
    for (int s = 0; s < 2; ++s) {
      if (coupling_weight(topology, s + 1, sp + 1) == 0.0) continue;
      const CMat4& a = *r[static_cast<std::size_t>(s)];
      const CMat4& ad = *rdag[static_cast<std::size_t>(s)];
      acc += commutator(a, p1);
      acc += commutator(ad, p2);
      acc += commutator(p3, ad);
      acc += commutator(p4, a);
    }
  }
}

}  // namespace

void SimulationConfig::validate() const {
  if (!std::isfinite(exchange.j))
    throw std::invalid_argument("SimulationConfig: exchange rate must be finite");
  if (!(spectral.eta >= 0.0) || !std::isfinite(spectral.eta))
    throw std::invalid_argument("SimulationConfig: eta must be >= 0 and finite");
  if (!(spectral.omega_c > 0.0) || !std::isfinite(spectral.omega_c))
    throw std::invalid_argument("SimulationConfig: omega_c must be positive");
  for (const auto& ch : channels)
    for (const auto& l : ch.lambda)
      if (!std::isfinite(l.real()) || !std::isfinite(l.imag()))
        throw std::invalid_argument("SimulationConfig: channel weights must be finite");
  if (!(t_final > 0.0) || !std::isfinite(t_final))
    throw std::invalid_argument("SimulationConfig: t_final must be positive");
  if (n_steps < 100)
    throw std::invalid_argument("SimulationConfig: n_steps must be >= 100");
  const double fastest =
      std::max(std::abs(field.nx()) + std::abs(field.nz()), 4.0 * std::abs(exchange.j));
  if (dt() * fastest >= 0.1) {
    std::ostringstream msg;
    msg << "SimulationConfig: dt * max(nx + nz, 4 J) = " << dt() * fastest
        << " must stay below 0.1; increase n_steps";
    throw std::invalid_argument(msg.str());
  }
  if (hermiticity_error(initial_state.matrix()) > 1e-10 ||
      std::abs(trace(initial_state.matrix()) - Complex{1.0}) > 1e-10)
    throw std::invalid_argument("SimulationConfig: initial state must be a unit-trace "
                                "Hermitian matrix");
}

CMat4 dressed_coupling(const SimulationConfig& cfg, const NoiseChannel& channel,
                       int qubit, double t) {
  if (qubit != 1 && qubit != 2)
    throw std::invalid_argument("dressed_coupling: qubit must be 1 or 2");
  const RotationMatrix3 rot = rotation_matrix(cfg.field, t);
  CVec3 mu{};  // lambda contracted with the control rotation
  for (int n = 0; n < 3; ++n)
    for (int m = 0; m < 3; ++m) mu[static_cast<std::size_t>(n)] += channel.lambda[static_cast<std::size_t>(m)] * rot(m, n);
  CMat4 out;
  for (int n = 0; n < 3; ++n) {
    const Complex w = mu[static_cast<std::size_t>(n)];
    if (w == Complex{0.0, 0.0}) continue;
    axpy(out, w, heisenberg_sigma(cfg.exchange, qubit, n + 1, t));
  }
  return out;
}

DressedCouplingTable sample_dressed_couplings(const SimulationConfig& cfg,
                                              const NoiseChannel& channel, double dt,
                                              int n_steps) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw std::invalid_argument("sample_dressed_couplings: dt must be positive");
  if (n_steps < 0)
    throw std::invalid_argument("sample_dressed_couplings: n_steps must be >= 0");
  DressedCouplingTable table;
  table.dt = dt;
  for (int s = 0; s < 2; ++s) {
    table.samples[static_cast<std::size_t>(s)].reserve(static_cast<std::size_t>(n_steps) + 1);
    for (int i = 0; i <= n_steps; ++i)
      table.samples[static_cast<std::size_t>(s)].push_back(
          dressed_coupling(cfg, channel, s + 1, i * dt));
  }
  return table;
}

MemoryIntegrals history_integrals(const KernelTable& kernels,
                                  const DressedCouplingTable& couplings, int j) {
  if (j < 0) throw std::invalid_argument("history_integrals: j must be >= 0");
  if (std::abs(kernels.dt - couplings.dt) > 1e-12 * std::max(kernels.dt, couplings.dt))
    throw std::invalid_argument("history_integrals: kernel and coupling grids differ");
  if (static_cast<std::size_t>(j) >= kernels.thermal.size() ||
      static_cast<std::size_t>(j) >= couplings.samples[0].size())
    throw std::invalid_argument("history_integrals: j beyond tabulated range");

  MemoryIntegrals out{};
  if (j == 0) return out;
  const double dt = couplings.dt;
  for (int sp = 0; sp < 2; ++sp) {
    for (int i = 0; i <= j; ++i) {
      const double w = (i == 0 || i == j) ? 0.5 * dt : dt;
      const std::size_t d = static_cast<std::size_t>(j - i);
      const CMat4& sample = couplings.samples[static_cast<std::size_t>(sp)][static_cast<std::size_t>(i)];
      axpy(out.thermal[static_cast<std::size_t>(sp)], w * kernels.thermal[d], dagger(sample));
      axpy(out.emission[static_cast<std::size_t>(sp)], w * kernels.emission[d], sample);
    }
  }
  return out;
}

CMat4 master_rhs(const SimulationConfig& cfg, const KernelTable& kernels,
                 const std::vector<DressedCouplingTable>& couplings, int j,
                 const CMat4& rho) {
  if (couplings.size() != cfg.channels.size())
    throw std::invalid_argument("master_rhs: one coupling table per channel required");
  CMat4 acc;
  for (std::size_t c = 0; c < couplings.size(); ++c) {
    const MemoryIntegrals q = history_integrals(kernels, couplings[c], j);
    const CMat4& r0 = couplings[c].samples[0][static_cast<std::size_t>(j)];
    const CMat4& r1 = couplings[c].samples[1][static_cast<std::size_t>(j)];
    const CMat4 rd0 = dagger(r0);
    const CMat4 rd1 = dagger(r1);
    add_channel_terms(acc, cfg.topology, {&r0, &r1}, {&rd0, &rd1}, q, rho);
  }
  return acc;
}

Trajectory integrate(const SimulationConfig& cfg) {
  cfg.validate();
  const int n = cfg.n_steps;
  const double dt = cfg.dt();
  const double h = 0.5 * dt;

  const KernelTable kernels = build_kernel_table(cfg.spectral, cfg.bath, h, 2 * n);

  const std::size_t n_ch = cfg.channels.size();
  std::vector<ChannelSamples> samples(n_ch);
  for (std::size_t c = 0; c < n_ch; ++c) {
    for (int s = 0; s < 2; ++s) {
      auto& r = samples[c].r[static_cast<std::size_t>(s)];
      auto& rd = samples[c].rdag[static_cast<std::size_t>(s)];
      r.reserve(static_cast<std::size_t>(2 * n) + 1);
      rd.reserve(static_cast<std::size_t>(2 * n) + 1);
      for (int m = 0; m <= 2 * n; ++m) {
        r.push_back(dressed_coupling(cfg, cfg.channels[c], s + 1, m * h));
        rd.push_back(dagger(r.back()));
      }
    }
  }

  Trajectory traj;
  traj.times.reserve(static_cast<std::size_t>(n) + 1);
  traj.states.reserve(static_cast<std::size_t>(n) + 1);
  traj.diagnostics.reserve(static_cast<std::size_t>(n) + 1);

  CMat4 rho = cfg.initial_state.matrix();
  const auto record = [&traj](double t, const CMat4& m) {
    StepDiagnostics d;
    d.trace_error = std::abs(trace(m) - Complex{1.0});
    d.hermiticity_error = hermiticity_error(m);
    d.min_eigenvalue = min_eigenvalue(m);
    if (d.trace_error > kTraceDriftLimit || d.hermiticity_error > kHermDriftLimit) {
      std::ostringstream msg;
      msg << "integrate: invariant drift at t = " << t
          << " (trace error " << d.trace_error << ", hermiticity error "
          << d.hermiticity_error << ")";
      throw NumericalError(msg.str());
    }
    traj.times.push_back(t);
    traj.states.push_back(DensityMatrix4::unchecked(m));
    traj.diagnostics.push_back(d);
  };
  record(0.0, rho);

  std::vector<MemoryIntegrals> q_begin(n_ch), q_half(n_ch), q_end(n_ch);
  const auto generator = [&](int m, const std::vector<MemoryIntegrals>& q,
                             const CMat4& state) {
    CMat4 acc;
    for (std::size_t c = 0; c < n_ch; ++c) {
      const std::size_t idx = static_cast<std::size_t>(m);
      add_channel_terms(acc, cfg.topology,
                        {&samples[c].r[0][idx], &samples[c].r[1][idx]},
                        {&samples[c].rdag[0][idx], &samples[c].rdag[1][idx]}, q[c],
                        state);
    }
    return acc;
  };

  for (int j = 0; j < n; ++j) {
    const int m0 = 2 * j;
    for (std::size_t c = 0; c < n_ch; ++c) {
      accumulate_memory(kernels, samples[c], m0 + 1, dt, q_half[c]);
      accumulate_memory(kernels, samples[c], m0 + 2, dt, q_end[c]);
    }
    const CMat4 k1 = generator(m0, q_begin, rho);
    const CMat4 k2 = generator(m0 + 1, q_half, rho + h * k1);
    const CMat4 k3 = generator(m0 + 1, q_half, rho + h * k2);
    const CMat4 k4 = generator(m0 + 2, q_end, rho + dt * k3);
    CMat4 incr = k1;
    incr += k4;
    axpy(incr, 2.0, k2);
    axpy(incr, 2.0, k3);
    axpy(rho, dt / 6.0, incr);
    record((j + 1) * dt, rho);
    std::swap(q_begin, q_end);  // list the end-of-step integrals as the next k1 set
  }
  return traj;
}

bool operator==(const SimulationConfig& a, const SimulationConfig& b) {
  return a.exchange.j == b.exchange.j && a.field.nx() == b.field.nx() &&
         a.field.nz() == b.field.nz() && a.field.t_c() == b.field.t_c() &&
         a.channels.size() == b.channels.size() &&
         std::equal(a.channels.begin(), a.channels.end(), b.channels.begin(),
                    [](const NoiseChannel& x, const NoiseChannel& y) {
                      return x.kind == y.kind && x.lambda == y.lambda;
                    }) &&
         a.topology == b.topology && a.spectral.eta == b.spectral.eta &&
         a.spectral.omega_c == b.spectral.omega_c && a.bath.theta() == b.bath.theta() &&
         a.t_final == b.t_final && a.n_steps == b.n_steps &&
         a.initial_state == b.initial_state;
}

}  // namespace cdd

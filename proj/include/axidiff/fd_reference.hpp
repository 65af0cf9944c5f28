#ifndef AXIDIFF_FD_REFERENCE_HPP
#define AXIDIFF_FD_REFERENCE_HPP

// Crank–Nicolson finite differences for u_t = κ (u_rr + u_r / r) on a uniform
// mesh r_i = i Δr, i = 0..nr. Shares no code with the analytic routes beyond
// sampling the initial condition.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "axidiff/errors.hpp"
#include "axidiff/initial_condition.hpp"

namespace axidiff {

enum class OuterBC { dirichlet_zero, neumann_zero };

struct FDConfig {
  double r_max = 12.0;
  int nr = 2400;  // number of intervals
  double t_end = 0.5;
  int nt = 800;  // number of time steps
  OuterBC outer_bc = OuterBC::dirichlet_zero;

  void validate(const InitialCondition& g, double kappa) const {
    require(std::isfinite(r_max) && r_max > 0.0, "FDConfig: r_max must be > 0");
    require(std::isfinite(t_end) && t_end > 0.0, "FDConfig: t_end must be > 0");
    require(nr >= 64, "FDConfig: nr must be >= 64");
    require(nt >= 32, "FDConfig: nt must be >= 32");
    require(std::isfinite(kappa) && kappa > 0.0, "FDConfig: kappa must be > 0");
    const double support = g.support_bound();
    const double extent = std::isfinite(support) ? support : 0.0;
    require(r_max >= 8.0 * std::sqrt(kappa * t_end) + extent,
            "FDConfig: r_max must be >= 8 sqrt(kappa t_end) + support extent");
  }
};

struct RadialProfile {
  std::vector<double> radii;
  std::vector<double> values;
  double t = 0.0;

  /// Linear interpolation between nodes.
  double value_at(double r) const {
    require(!radii.empty() && r >= radii.front() && r <= radii.back(),
            "RadialProfile: r outside the mesh");
    const double dr = radii[1] - radii[0];
    const std::size_t i = std::min(radii.size() - 2, static_cast<std::size_t>(r / dr));
    const double f = (r - radii[i]) / dr;
    return (1.0 - f) * values[i] + f * values[i + 1];
  }
};

/// Σ w_i u_i with w_0 = Δr²/8, w_i = r_i Δr, and r_max Δr / 2 at the last node.
inline double discrete_mass(const RadialProfile& p) {
  const std::size_t n = p.radii.size();
  require(n >= 2, "discrete_mass: need at least two nodes");
  const double dr = p.radii[1] - p.radii[0];
  double m = p.values[0] * dr * dr / 8.0;
  for (std::size_t i = 1; i + 1 < n; ++i) m += p.values[i] * p.radii[i] * dr;
  m += p.values[n - 1] * p.radii[n - 1] * dr / 2.0;
  return m;
}

namespace detail {

// Solves a tridiagonal system in place; sub[0] and sup[n-1] are ignored.
inline void thomas(std::vector<double> sub, std::vector<double> diag, std::vector<double> sup,
                   std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = sub[i] / diag[i - 1];
    diag[i] -= m * sup[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

inline double fd_sample(const InitialCondition& g, double r, double dr) {
  if (const auto* d = std::get_if<UniformDisk>(&g.profile())) {
    if (!g.is_log_weighted()) {
      // area fraction of the cell lying inside the disk
      const double lo = std::max(0.0, r - 0.5 * dr);
      const double hi = r + 0.5 * dr;
      const double in = std::clamp(d->radius, lo, hi);
      return (in * in - lo * lo) / (hi * hi - lo * lo);
    }
  }
  return g(r);
}

}  // namespace detail

/// u(r, t_end) on the mesh. on_step, if given, sees the initial profile and the
/// profile after every step.
inline RadialProfile solve_fd(const InitialCondition& g, double kappa, const FDConfig& cfg,
                              const std::function<void(const RadialProfile&)>& on_step = {}) {
  cfg.validate(g, kappa);
  require(!g.is_log_weighted(), "solve_fd: log-weighted data is singular at the axis");
  const int n = cfg.nr + 1;
  const double dr = cfg.r_max / cfg.nr;
  const double dt = cfg.t_end / cfg.nt;

  RadialProfile p;
  p.radii.resize(n);
  p.values.resize(n);
  for (int i = 0; i < n; ++i) {
    p.radii[i] = i * dr;
    p.values[i] = detail::fd_sample(g, p.radii[i], dr);
    require(std::isfinite(p.values[i]), "solve_fd: initial condition not finite on the mesh");
  }
  if (cfg.outer_bc == OuterBC::dirichlet_zero) p.values[n - 1] = 0.0;
  double init_max = 0.0;
  for (double v : p.values) init_max = std::max(init_max, std::abs(v));

  // L u as rows (lo, mid, up)
  std::vector<double> lo(n, 0.0), mid(n, 0.0), up(n, 0.0);
  const double k2 = kappa / (dr * dr);
  mid[0] = -4.0 * k2;  // 2 u_rr with the ghost node u_{-1} = u_1
  up[0] = 4.0 * k2;
  for (int i = 1; i < n - 1; ++i) {
    const double ri = p.radii[i];
    lo[i] = k2 * (ri - 0.5 * dr) / ri;
    up[i] = k2 * (ri + 0.5 * dr) / ri;
    mid[i] = -lo[i] - up[i];
  }
  const bool dirichlet = cfg.outer_bc == OuterBC::dirichlet_zero;
  if (!dirichlet) {
    // zero flux through r_max; half cell of weight r_max Δr / 2
    const double rn = p.radii[n - 1];
    lo[n - 1] = 2.0 * k2 * (rn - 0.5 * dr) / rn;
    mid[n - 1] = -lo[n - 1];
  }

  auto step = [&](double theta, double h) {
    std::vector<double> rhs(n), a(n), b(n), c(n);
    const auto& u = p.values;
    for (int i = 0; i < n; ++i) {
      double lu = mid[i] * u[i];
      if (i > 0) lu += lo[i] * u[i - 1];
      if (i < n - 1) lu += up[i] * u[i + 1];
      rhs[i] = u[i] + (1.0 - theta) * h * lu;
      a[i] = -theta * h * lo[i];
      b[i] = 1.0 - theta * h * mid[i];
      c[i] = -theta * h * up[i];
    }
    if (dirichlet) {
      a[n - 1] = 0.0;
      b[n - 1] = 1.0;
      rhs[n - 1] = 0.0;
    }
    detail::thomas(std::move(a), std::move(b), std::move(c), rhs);
    p.values = std::move(rhs);
  };
  auto check = [&](double t) {
    p.t = t;
    for (double v : p.values)
      if (!std::isfinite(v) || std::abs(v) > 10.0 * init_max)
        throw ConvergenceError("solve_fd: instability detected at t = " + std::to_string(t));
    if (on_step) on_step(p);
  };

  check(0.0);
  // Rannacher start: four backward-Euler quarter steps damp the stiff modes
  // that CN leaves oscillating on rough data.
  for (int k = 1; k <= 4; ++k) {
    step(1.0, 0.25 * dt);
    check(0.25 * k * dt);
  }
  for (int s = 1; s < cfg.nt; ++s) {
    step(0.5, dt);
    check((s + 1) * dt);
  }
  p.t = cfg.t_end;
  return p;
}

}  // namespace axidiff

#endif  // AXIDIFF_FD_REFERENCE_HPP

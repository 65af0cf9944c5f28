#ifndef AXIDIFF_LOG_KERNEL_HPP
#define AXIDIFF_LOG_KERNEL_HPP

// Initial data h(r) log(r). Writing log y = log(z/2) + log(4κt/r) with
// z = yr/2κt and expanding I0(z) log(z/2) = -K0(z) + Σ ψ(n+1) (z/2)^{2n}/(n!)²
// splits the solution into
//
//   u = (1/2κt) e^{-x} [ log(4κt/r) J(h) - K(h) + Σ_{n>=0} ψ(n+1) (r/2κt)^{2n} / (4^n n!²) z_{2n+1}(h) ]
//
// with J(h) = ∫ y h e^{-y²/4κt} I0(z) dy, K(h) = ∫ y h e^{-y²/4κt} K0(z) dy and
// z_s(h) = ∫ h y^s e^{-y²/4κt} dy.

#include <algorithm>
#include <cmath>
#include <vector>

#include "axidiff/errors.hpp"
#include "axidiff/gauss_kronrod.hpp"
#include "axidiff/initial_condition.hpp"
#include "axidiff/quadrature_oracle.hpp"
#include "axidiff/series.hpp"
#include "axidiff/specfun.hpp"
#include "axidiff/summation.hpp"

namespace axidiff {

struct LogDecomposition {
  double log_term = 0.0;
  double k0_term = 0.0;
  SeriesResult psi_series;
  double total = 0.0;
};

namespace detail {

inline void require_plain(const InitialCondition& h, const char* what) {
  require(!h.is_log_weighted(), std::string(what) + ": pass the base profile h, not h log r");
}

inline QuadratureResult relative_quadrature(const std::function<double(double)>& f,
                                            std::vector<double> pts, double tol) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return integrate_adaptive(f, pts, {1e-300, tol, 20000});
}

// (1/2κt) ∫ y h e^{-(y+r)²/4κt} [e^z K0(z)] dy, which equals (1/2κt) e^{-x} K(h).
inline double k0_damped(const InitialCondition& h, const PhysicalSetup& s, double tol,
                        double truncation_scale = 1.0) {
  const double kt = s.kt();
  double y_max = truncation_scale * (std::sqrt(4.0 * kt * std::log(1.0 / 2.2e-16)) + 10.0 * std::sqrt(kt));
  probe_growth(h, s, y_max);
  y_max = std::min(y_max, h.support_bound());
  std::vector<double> pts{0.0, y_max};
  const double delta = std::min(1.0, std::sqrt(kt)) / 8.0;
  for (int k = 0; k <= 40; ++k) pts.push_back(delta * std::ldexp(1.0, -k));
  for (double k : {0.5, 1.0, 2.0, 4.0}) pts.push_back(k * std::sqrt(2.0 * kt));
  std::erase_if(pts, [y_max](double p) { return p > y_max; });
  auto f = [&](double y) {
    if (y <= 0.0) return 0.0;
    const double e = (y + s.r) * (y + s.r) / (4.0 * kt);
    return y * h.base_value(y) * std::exp(-e) * specfun::bessel_k_scaled(0.0, y * s.r / (2.0 * kt));
  };
  return relative_quadrature(f, pts, tol).value / (2.0 * kt);
}

}  // namespace detail

/// z_s(h) = ∫ h(y) y^s e^{-y²/4κt} dy, to relative tolerance tol.
inline double z_moment(const InitialCondition& h, double s_exp, const PhysicalSetup& s,
                       double tol = 1e-12) {
  detail::require_plain(h, "z_moment");
  require(s_exp > 0.0, "z_moment: s must be > 0");
  require(tol > 0.0, "z_moment: tol must be > 0");
  const double sq = std::sqrt(4.0 * s.kt());
  const double peak = sq * std::sqrt(0.5 * s_exp);
  double y_max = sq * (std::sqrt(0.5 * (s_exp + 1.0)) + 7.0);
  probe_growth(h, s, y_max);
  y_max = std::min(y_max, h.support_bound());
  std::vector<double> pts{0.0, y_max};
  for (double k : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
    const double p = peak + k * sq;
    if (p > 0.0 && p < y_max) pts.push_back(p);
  }
  // scale out the peak value so huge moments stay in range
  const double log_peak = s_exp * std::log(std::max(peak, 1e-300)) - peak * peak / (sq * sq);
  auto f = [&](double y) {
    if (y <= 0.0) return 0.0;
    return h.base_value(y) * std::exp(s_exp * std::log(y) - y * y / (sq * sq) - log_peak);
  };
  return detail::relative_quadrature(f, pts, tol).value * std::exp(log_peak);
}

/// K(h) = ∫ y h e^{-y²/4κt} K0(yr/2κt) dy.
inline double k0_integral(const InitialCondition& h, const PhysicalSetup& s, double tol = 1e-12) {
  detail::require_plain(h, "k0_integral");
  s.validate();
  require(s.r > 0.0, "k0_integral: r must be > 0");
  return std::exp(s.x()) * 2.0 * s.kt() * detail::k0_damped(h, s, tol);
}

/// |I0(x) log(x/2) - (-K0(x) + Σ_{n<N} ψ(n+1) (x/2)^{2n}/(n!)²)|
inline double i0_log_expansion_check(double x, int n_terms) {
  require(x > 0.0 && x <= 10.0, "i0_log_expansion_check: need 0 < x <= 10");
  require(n_terms >= 20, "i0_log_expansion_check: need N >= 20");
  const double lhs = specfun::bessel_i0_scaled(x) * std::exp(x) * std::log(0.5 * x);
  NeumaierSum<double> sum;
  sum.add(-specfun::bessel_k_scaled(0.0, x) * std::exp(-x));
  double c = 1.0;  // (x/2)^{2n} / (n!)²
  for (int n = 0; n < n_terms; ++n) {
    if (n > 0) c *= 0.25 * x * x / (static_cast<double>(n) * n);
    sum.add(specfun::digamma_int(n + 1) * c);
  }
  return std::abs(lhs - sum.value());
}

/// Three-part evaluation of u for initial data h(r) log(r).
inline LogDecomposition u_log_weighted(const InitialCondition& h, const PhysicalSetup& s,
                                       double tol = 1e-10) {
  detail::require_plain(h, "u_log_weighted");
  s.validate();
  require(s.r > 0.0, "u_log_weighted: r must be > 0");
  require(tol > 0.0 && tol <= 1e-4, "u_log_weighted: tol must lie in (0, 1e-4]");
  const double kt = s.kt();
  const double x = s.x();
  const double inner_tol = std::max(1e-13, 0.01 * tol);

  LogDecomposition d;
  // (1/2κt) e^{-x} J(h) is the plain heat solution for data h
  d.log_term = std::log(4.0 * kt / s.r) * solve_quadrature(h, s, inner_tol).value;
  d.k0_term = -detail::k0_damped(h, s, inner_tol);

  const double pref = std::exp(-x) / (2.0 * kt);
  const double q = (s.r / (2.0 * kt)) * (s.r / (2.0 * kt)) / 4.0;
  SeriesResult& ps = d.psi_series;
  NeumaierSum<double> sum, sum_from_one;
  double coef = pref;  // pref q^n / (n!)²
  double first = 0.0;
  const int max_terms = 500;
  ps.status = SeriesStatus::budget_exhausted;
  for (int n = 0; n < max_terms; ++n) {
    if (n > 0) coef *= q / (static_cast<double>(n) * n);
    const double addend = coef * specfun::digamma_int(n + 1) * z_moment(h, 2.0 * n + 1.0, s, inner_tol);
    if (!std::isfinite(addend)) throw ConvergenceError("u_log_weighted: non-finite addend");
    sum.add(addend);
    if (n == 0) first = addend;
    else sum_from_one.add(addend);
    ps.partial_sums.push_back(sum.value());
    ps.terms_used = n + 1;
    ps.tail_estimate = std::abs(addend);
    const double running = d.log_term + d.k0_term + sum.value();
    if (std::abs(addend) < tol * std::max(1.0, std::abs(running)) &&
        x / ((n + 1.0) * (n + 1.0)) < 0.5) {
      ps.status = SeriesStatus::converged;
      break;
    }
  }
  ps.value = sum.value();
  if (ps.status != SeriesStatus::converged)
    throw ConvergenceError("u_log_weighted: digamma series did not converge");

  // Index-start guard: the n = 0 addend must be ψ(1) z_1(h) times the prefactor.
  const double dropped = ps.value - sum_from_one.value();
  const double expected = -specfun::kEulerGamma * z_moment(h, 1.0, s, inner_tol) * pref;
  if (std::abs(dropped - expected) > 1e-12 * std::max(1.0, std::abs(first)) ||
      std::abs(dropped - first) > 1e-12 * std::max(1.0, std::abs(first)))
    throw ConvergenceError("u_log_weighted: n = 0 addend inconsistent with psi(1) z_1");

  d.total = d.log_term + d.k0_term + ps.value;
  return d;
}

/// The decomposition with its first term written as log(4κt/r) z_1(h) (no I0
/// weight) and the digamma sum started at n = 1. Kept only to measure how far
/// that form lands from the quadrature.
inline double u_log_weighted_printed(const InitialCondition& h, const PhysicalSetup& s,
                                     double tol = 1e-10) {
  const LogDecomposition d = u_log_weighted(h, s, tol);
  const double pref = std::exp(-s.x()) / (2.0 * s.kt());
  const double z1 = z_moment(h, 1.0, s, std::max(1e-13, 0.01 * tol));
  const double first = d.psi_series.partial_sums.front();
  return std::log(4.0 * s.kt() / s.r) * pref * z1 + d.k0_term + (d.psi_series.value - first);
}

}  // namespace axidiff

#endif  // AXIDIFF_LOG_KERNEL_HPP

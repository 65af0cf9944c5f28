#ifndef AXIDIFF_QUADRATURE_ORACLE_HPP
#define AXIDIFF_QUADRATURE_ORACLE_HPP

// Direct evaluation of the heat-kernel solution
//
//   u(r,t) = (1/2κt) e^{-r²/4κt} ∫_0^∞ y g(y) I0(y r / 2κt) e^{-y²/4κt} dy
//
// by adaptive Gauss–Kronrod quadrature. This is the ground truth that the series,
// contour and log-kernel routes are checked against.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "axidiff/errors.hpp"
#include "axidiff/gauss_kronrod.hpp"
#include "axidiff/initial_condition.hpp"
#include "axidiff/specfun.hpp"

namespace axidiff {

struct OracleOptions {
  double truncation_scale = 1.0;  // multiplies the truncation radius
  int max_intervals = 20000;
};

/// Radius beyond which the Gaussian factor e^{-(y-r)²/4κt} is below machine epsilon.
inline double truncation_radius(const PhysicalSetup& s) {
  const double eps = std::numeric_limits<double>::epsilon();
  return s.r + std::sqrt(4.0 * s.kt() * std::log(1.0 / eps)) + 10.0 * std::sqrt(s.kt());
}

/// Heat kernel y e^{-r²/4κt} e^{-y²/4κt} I0(yr/2κt) / (2κt), assembled as
/// y e^{-(y-r)²/4κt} [e^{-z} I0(z)] / (2κt) so that it never overflows.
inline double heat_kernel(double y, const PhysicalSetup& s) {
  const double four_kt = 4.0 * s.kt();
  const double d = y - s.r;
  return y * std::exp(-d * d / four_kt) * specfun::bessel_i0_scaled(y * s.r / (2.0 * s.kt())) /
         (2.0 * s.kt());
}

/// Fires GrowthError if a Custom sampler violates |y h(y)| < 1e6 e^{y²/4κt} at
/// 32 logarithmically spaced radii up to y_max, or returns a non-finite value.
inline void probe_growth(const InitialCondition& h, const PhysicalSetup& s, double y_max) {
  if (!h.is_custom()) return;
  for (int k = 0; k < 32; ++k) {
    const double y = y_max * std::pow(10.0, -6.0 + 6.0 * k / 31.0);
    const double v = h.base_value(y);
    const double bound = 1e6 * std::exp(y * y / (4.0 * s.kt()));
    if (!std::isfinite(v) || std::abs(y * v) >= bound)
      throw GrowthError("initial condition violates the growth bound |y h(y)| < c e^{y^2/4kt} at y = " +
                        std::to_string(y));
  }
}

namespace detail {

inline std::vector<double> kernel_breakpoints(const InitialCondition& g, const PhysicalSetup& s,
                                              double y_max, bool graded_origin) {
  std::vector<double> pts{0.0, y_max};
  const double sigma = std::sqrt(2.0 * s.kt());
  for (double k : {-6.0, -3.0, -1.0, 0.0, 1.0, 3.0, 6.0}) pts.push_back(s.r + k * sigma);
  const double support = g.support_bound();
  if (std::isfinite(support)) pts.push_back(support);
  if (graded_origin) {
    const double delta = std::min(1.0, std::sqrt(s.kt())) / 8.0;
    for (int k = 0; k <= 40; ++k) pts.push_back(delta * std::ldexp(1.0, -k));
  }
  std::erase_if(pts, [y_max](double p) { return !(p >= 0.0 && p <= y_max); });
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

inline void check_tol(double tol) {
  require(tol >= 1e-13 && tol <= 1e-4, "quadrature tolerance must lie in [1e-13, 1e-4]");
}

template <typename Weight>
QuadratureResult integrate_against_kernel(const InitialCondition& g, const PhysicalSetup& s,
                                          double tol, const OracleOptions& opt,
                                          bool graded_origin, Weight&& weight) {
  double y_max = truncation_radius(s) * opt.truncation_scale;
  probe_growth(g, s, y_max);
  y_max = std::min(y_max, g.support_bound());
  const auto pts = kernel_breakpoints(g, s, y_max, graded_origin);
  auto integrand = [&](double y) { return heat_kernel(y, s) * weight(y); };
  AdaptiveOptions ao{tol, tol, opt.max_intervals};
  try {
    return integrate_adaptive(integrand, pts, ao);
  } catch (const ConvergenceError&) {
    if (g.is_custom()) {
      // a non-finite damped integrand means the sampler outgrew the kernel
      for (double y : pts)
        if (y > 0.0 && !std::isfinite(integrand(y)))
          throw GrowthError("custom initial condition overflows the damped integrand");
    }
    throw;
  }
}

}  // namespace detail

/// u(r,t) for initial data h(r) log(r). The log singularity at the origin is
/// handled by a geometrically graded set of panel boundaries on [0, δ].
inline QuadratureResult solve_quadrature_log(const InitialCondition& h, const PhysicalSetup& s,
                                             double tol, const OracleOptions& opt = {}) {
  s.validate();
  detail::check_tol(tol);
  require(!h.is_log_weighted(), "solve_quadrature_log: pass the base profile h, not h log r");
  return detail::integrate_against_kernel(h, s, tol, opt, true, [&h](double y) {
    return y > 0.0 ? h.base_value(y) * std::log(y) : 0.0;
  });
}

/// u(r,t) for initial data g. abs_error_estimate <= tol * max(1, |value|).
inline QuadratureResult solve_quadrature(const InitialCondition& g, const PhysicalSetup& s,
                                         double tol, const OracleOptions& opt = {}) {
  s.validate();
  detail::check_tol(tol);
  if (g.is_log_weighted()) return solve_quadrature_log(g.base(), s, tol, opt);
  return detail::integrate_against_kernel(g, s, tol, opt, false,
                                          [&g](double y) { return g.base_value(y); });
}

}  // namespace axidiff

#endif  // AXIDIFF_QUADRATURE_ORACLE_HPP

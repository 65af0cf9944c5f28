#ifndef AXIDIFF_MELLIN_BARNES_HPP
#define AXIDIFF_MELLIN_BARNES_HPP

// Mellin–Barnes representation of the heat-kernel solution. Pairing the kernel
// y e^{-y²/4κt} I0(yr/2κt) with g through Parseval's formula gives, on a
// vertical line Re s = c,
//
//   u = (1/r) e^{-r²/8κt} (1/2πi) ∫ Γ((s+1)/2) (4κt)^{s/2} M_{-s/2,0}(x) 𝔐g(1-s) ds
//     = e^{-x}/√(4κt) (1/2πi) ∫ Γ((s+1)/2) (4κt)^{s/2} ₁F₁((s+1)/2; 1; x) 𝔐g(1-s) ds
//
// with x = r²/(4κt). The second (₁F₁) form is what u_contour integrates.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "axidiff/errors.hpp"
#include "axidiff/initial_condition.hpp"
#include "axidiff/specfun.hpp"
#include "axidiff/summation.hpp"

namespace axidiff {

using specfun::Complex;

enum class DecayHint { polynomial, exponential };

/// Mellin transform of an initial condition, presented as s ↦ 𝔐g(1-s).
struct MellinDescriptor {
  std::string name;
  double strip_lo = 0.0;  // 𝔐g(1-s) is analytic for strip_lo < Re s < strip_hi
  double strip_hi = 0.0;
  std::function<Complex(Complex)> evaluate;   // 𝔐g(1-s), strip-checked
  std::function<Complex(Complex)> transform;  // 𝔐g(s), analytic continuation, unchecked
  DecayHint decay_hint = DecayHint::polynomial;

  /// Admissible contour abscissae: max(strip_lo, -1) < c < strip_hi.
  bool admits(double c) const { return c > std::max(strip_lo, -1.0) && c < strip_hi; }
};

struct ContourConfig {
  double c = 0.5;
  double tau_max = 0.0;  // 0 selects the height adaptively
  int n_points = 2048;   // minimum node count
  double tol = 1e-10;
};

struct ContourResult {
  double value = 0.0;
  double imag_residual = 0.0;  // |Im| of the computed integral, discarded after the check
  double tau_max = 0.0;
  int n_points = 0;
  double endpoint_magnitude = 0.0;
};

namespace detail {

inline Complex lgamma_c(Complex z) { return specfun::log_gamma_complex(z); }

inline void check_strip(Complex s, double lo, double hi, const char* what) {
  if (!(s.real() > lo && s.real() < hi))
    throw ParameterError(std::string(what) + ": Re s = " + std::to_string(s.real()) +
                         " outside the strip (" + std::to_string(lo) + ", " +
                         std::to_string(hi) + ")");
}

inline Complex mellin_j0_formula(Complex s, double a) {
  // 2^{s-1} Γ(s/2) / Γ(1 - s/2) a^{-s}
  return std::exp((s - 1.0) * std::log(2.0) + lgamma_c(0.5 * s) - lgamma_c(1.0 - 0.5 * s) -
                  s * std::log(a));
}

inline Complex mellin_j0_squared_formula(Complex s, double a) {
  // 2^{s-1} Γ(s/2) Γ(1-s) / (Γ²(1-s/2) Γ(1-s/2)) a^{-s}
  return std::exp((s - 1.0) * std::log(2.0) + lgamma_c(0.5 * s) + lgamma_c(1.0 - s) -
                  3.0 * lgamma_c(1.0 - 0.5 * s) - s * std::log(a));
}

inline Complex mellin_iv_kv_formula(Complex s, double a, double v) {
  // Γ(s/2+v) Γ(1/2-s/2) Γ(s/2) / (4√π Γ(v+1-s/2)) a^{-s}
  return std::exp(lgamma_c(0.5 * s + v) + lgamma_c(0.5 - 0.5 * s) + lgamma_c(0.5 * s) -
                  lgamma_c(v + 1.0 - 0.5 * s) - s * std::log(a)) /
         (4.0 * std::sqrt(specfun::kPi));
}

inline Complex mellin_gaussian_formula(Complex s, double c) {
  // Γ(s/2) c^{-s/2} / 2
  return 0.5 * std::exp(lgamma_c(0.5 * s) - 0.5 * s * std::log(c));
}

}  // namespace detail

/// 𝔐[J0(ay)](s), valid for 0 < Re s < 3/2.
inline Complex mellin_j0(Complex s, double a) {
  require(a > 0.0, "mellin_j0: a must be > 0");
  detail::check_strip(s, 0.0, 1.5, "mellin_j0");
  return detail::mellin_j0_formula(s, a);
}

/// 𝔐[J0²(ay)](s), valid for 0 < Re s < 1.
inline Complex mellin_j0_squared(Complex s, double a) {
  require(a > 0.0, "mellin_j0_squared: a must be > 0");
  detail::check_strip(s, 0.0, 1.0, "mellin_j0_squared");
  return detail::mellin_j0_squared_formula(s, a);
}

/// 𝔐[I_v(ay) K_v(ay)](s), valid for 0 < Re s < 1.
inline Complex mellin_iv_kv(Complex s, double a, double v) {
  require(a > 0.0, "mellin_iv_kv: a must be > 0");
  detail::check_strip(s, std::max(0.0, -2.0 * v), 1.0, "mellin_iv_kv");
  return detail::mellin_iv_kv_formula(s, a, v);
}

/// 𝔐[exp(-c y²)](s), valid for Re s > 0.
inline Complex mellin_gaussian(Complex s, double c) {
  require(c > 0.0, "mellin_gaussian: c must be > 0");
  detail::check_strip(s, 0.0, std::numeric_limits<double>::infinity(), "mellin_gaussian");
  return detail::mellin_gaussian_formula(s, c);
}

// Descriptors: the strip of 𝔐g(1-s) is the reflection of the strip of 𝔐g(s).

inline MellinDescriptor descriptor_j0(double a) {
  require(a > 0.0, "descriptor_j0: a must be > 0");
  return {"j0", -0.5, 1.0, [a](Complex s) { return mellin_j0(1.0 - s, a); },
          [a](Complex s) { return detail::mellin_j0_formula(s, a); }, DecayHint::polynomial};
}

inline MellinDescriptor descriptor_j0_squared(double a) {
  require(a > 0.0, "descriptor_j0_squared: a must be > 0");
  return {"j0sq", 0.0, 1.0, [a](Complex s) { return mellin_j0_squared(1.0 - s, a); },
          [a](Complex s) { return detail::mellin_j0_squared_formula(s, a); },
          DecayHint::polynomial};
}

/// v = 0 is accepted here (the transform exists); only the residue series needs v ∉ Z.
inline MellinDescriptor descriptor_iv_kv(double a, double v) {
  require(a > 0.0, "descriptor_iv_kv: a must be > 0");
  require(v >= 0.0 && v < 1.0, "descriptor_iv_kv: v must lie in [0, 1)");
  return {"ivkv", 0.0, 1.0, [a, v](Complex s) { return mellin_iv_kv(1.0 - s, a, v); },
          [a, v](Complex s) { return detail::mellin_iv_kv_formula(s, a, v); },
          DecayHint::polynomial};
}

inline MellinDescriptor descriptor_gaussian(double c) {
  require(c > 0.0, "descriptor_gaussian: c must be > 0");
  return {"gaussian", -std::numeric_limits<double>::infinity(), 1.0,
          [c](Complex s) { return mellin_gaussian(1.0 - s, c); },
          [c](Complex s) { return detail::mellin_gaussian_formula(s, c); },
          DecayHint::exponential};
}

/// Catalog lookup; throws ParameterError for profiles without a cataloged transform.
inline MellinDescriptor descriptor_for(const InitialCondition& g) {
  require(!g.is_log_weighted(), "contour: no Mellin descriptor for log-weighted data");
  const auto& p = g.profile();
  if (const auto* q = std::get_if<Gaussian>(&p)) return descriptor_gaussian(q->c);
  if (const auto* q = std::get_if<BesselJ0>(&p)) return descriptor_j0(q->a);
  if (const auto* q = std::get_if<BesselJ0Squared>(&p)) return descriptor_j0_squared(q->a);
  if (const auto* q = std::get_if<ProductIK>(&p)) return descriptor_iv_kv(q->a, q->v);
  throw ParameterError("contour: no cataloged Mellin transform for initial condition '" +
                       g.name() + "'");
}

enum class IntegrandForm { hypergeometric, whittaker };

/// Integrand of the contour integral at s, including the outer prefactor, so
/// that u = (1/2π) ∫ contour_integrand(c + iτ) dτ.
inline Complex contour_integrand(const MellinDescriptor& md, const PhysicalSetup& setup, Complex s,
                                 IntegrandForm form = IntegrandForm::hypergeometric,
                                 const specfun::Accuracy& acc = {1e-14, 20000}) {
  const double kt4 = 4.0 * setup.kt();
  const double x = setup.x();
  const Complex a = 0.5 * (s + 1.0);
  const Complex common = std::exp(detail::lgamma_c(a) + 0.5 * s * std::log(kt4)) * md.evaluate(s);
  if (form == IntegrandForm::hypergeometric) {
    // e^{-x}/√(4κt) · ₁F₁(a;1;x), with e^{-x} folded into the series
    return common * specfun::hyp1f1_scaled(a, 1.0, x, acc) / std::sqrt(kt4);
  }
  require(setup.r > 0.0, "contour_integrand: Whittaker form needs r > 0");
  // (1/r) e^{-r²/8κt} M_{-s/2,0}(x)
  return common * std::exp(-0.5 * x) * specfun::whittaker_m(-0.5 * s, 0.0, x, acc) / setup.r;
}

namespace detail {

inline double nearest_pole_distance(const MellinDescriptor& md, double c) {
  // Γ((s+1)/2) has its first pole at s = -1; strip edges are pole lines of 𝔐g(1-s).
  double d = c + 1.0;
  if (std::isfinite(md.strip_lo)) d = std::min(d, c - md.strip_lo);
  if (std::isfinite(md.strip_hi)) d = std::min(d, md.strip_hi - c);
  return d;
}

}  // namespace detail

/// Evaluates the contour integral by the trapezoid rule on τ ∈ [-τ_max, τ_max].
/// The height starts from (4/π) ln(K/tol), K = |integrand(c)|, and grows until
/// the endpoint magnitude is below tol; the step is fine enough that the
/// trapezoid error e^{-2πd/h} (d = distance from c to the nearest pole) is below tol.
inline ContourResult u_contour(const MellinDescriptor& md, const PhysicalSetup& setup,
                               const ContourConfig& cfg = {}) {
  setup.validate();
  if (!(setup.r > 0.0))
    throw ParameterError("u_contour: r = 0 is outside the domain of the 1/r prefactor; use the series or quadrature route");
  require(md.admits(cfg.c), "u_contour: abscissa c = " + std::to_string(cfg.c) +
                                " is outside the admissible strip of '" + md.name + "'");
  require(cfg.n_points >= 64, "u_contour: n_points must be >= 64");
  require(cfg.tol > 0.0 && cfg.tol < 1e-2, "u_contour: tol must lie in (0, 1e-2)");

  auto f = [&](double tau) { return contour_integrand(md, setup, Complex(cfg.c, tau)); };
  const double k0 = std::max(std::abs(f(0.0)), 1e-300);

  constexpr double kMaxHeight = 500.0;
  double tau_max = cfg.tau_max;
  if (tau_max <= 0.0) {
    tau_max = std::clamp(4.0 / specfun::kPi * std::log(k0 / cfg.tol), 10.0, kMaxHeight);
    while (tau_max < kMaxHeight &&
           std::max(std::abs(f(tau_max)), std::abs(f(-tau_max))) > 1e-2 * cfg.tol)
      tau_max = std::min(kMaxHeight, 1.25 * tau_max);
  }
  const double endpoint = std::max(std::abs(f(tau_max)), std::abs(f(-tau_max)));
  if (endpoint > cfg.tol)
    throw ConvergenceError("u_contour: integrand magnitude " + std::to_string(endpoint) +
                           " at tau_max exceeds tol (truncation)");

  const double d = detail::nearest_pole_distance(md, cfg.c);
  const double h_needed = 2.0 * specfun::kPi * d / (std::log(k0 / cfg.tol) + 5.0);
  const int intervals =
      std::max(cfg.n_points - 1, static_cast<int>(std::ceil(2.0 * tau_max / h_needed)));
  const double h = 2.0 * tau_max / intervals;

  std::vector<Complex> nodes(static_cast<std::size_t>(intervals) + 1);
  for (int k = 0; k <= intervals; ++k) {
    const double w = (k == 0 || k == intervals) ? 0.5 : 1.0;
    nodes[static_cast<std::size_t>(k)] = w * f(-tau_max + k * h);
  }
  const Complex integral = pairwise_sum<Complex>(nodes) * h / (2.0 * specfun::kPi);

  ContourResult res{integral.real(), std::abs(integral.imag()), tau_max, intervals + 1, endpoint};
  if (res.imag_residual > 10.0 * cfg.tol)
    throw ConvergenceError("u_contour: conjugate-symmetry violation, |Im| = " +
                           std::to_string(res.imag_residual));
  return res;
}

struct PoleEstimate {
  double location = 0.0;
  int order = 0;  // positive for poles, negative for zeros
};

/// The residue-form integrand after s -> 1 - s: Γ(1 - s/2) 𝔐g(s). Entire
/// factors ((4κt)^{(1-s)/2}, ₁F₁(1 - s/2; 1; x)) are omitted since they add no poles.
inline Complex residue_kernel(const MellinDescriptor& md, Complex s) {
  return std::exp(detail::lgamma_c(1.0 - 0.5 * s)) * md.transform(s);
}

/// Locates poles of residue_kernel(md, ·) on [lo, hi] of the real axis by the
/// argument principle: the winding number of the kernel around thin boxes
/// equals (#zeros - #poles) inside. Boxes with nonzero count are bisected down
/// to `resolution`; the count at the finest level is the order estimate.
inline std::vector<PoleEstimate> residue_scan(const MellinDescriptor& md, double lo, double hi,
                                              double resolution = 1e-6) {
  require(lo < hi, "residue_scan: empty window");
  // The transform 𝔐g(s) is analytic on (1 - strip_hi, 1 - strip_lo); the window
  // must stay left of it, up to half a unit to admit a pole on its left edge.
  require(hi <= 1.0 - md.strip_hi + 0.5, "residue_scan: window must lie left of the strip");
  require(resolution > 0.0, "residue_scan: resolution must be > 0");
  auto kernel = [&md](Complex s) { return residue_kernel(md, s); };

  // Phase increment along a segment, subdivided until each step turns by less
  // than 0.3 rad so a pole close to the path cannot alias.
  std::function<double(Complex, Complex, Complex, Complex, int)> phase =
      [&](Complex z0, Complex z1, Complex f0, Complex f1, int depth) -> double {
    const double d = std::arg(f1 / f0);
    if (std::abs(d) < 0.3 || depth > 40) return d;
    const Complex zm = 0.5 * (z0 + z1);
    const Complex fm = kernel(zm);
    return phase(z0, zm, f0, fm, depth + 1) + phase(zm, z1, fm, f1, depth + 1);
  };

  // winding number of the kernel around the box [a, b] x [-eta, eta]
  auto winding = [&](double a, double b) {
    const double eta = std::min(0.25, 0.5 * (b - a));
    const std::vector<Complex> corners = {{a, -eta}, {b, -eta}, {b, eta}, {a, eta}};
    constexpr int kPerSide = 16;
    double total = 0.0;
    for (std::size_t side = 0; side < corners.size(); ++side) {
      const Complex from = corners[side];
      const Complex to = corners[(side + 1) % corners.size()];
      Complex z0 = from;
      Complex f0 = kernel(z0);
      for (int k = 1; k <= kPerSide; ++k) {
        const Complex z1 = from + (to - from) * (static_cast<double>(k) / kPerSide);
        const Complex f1 = kernel(z1);
        total += phase(z0, z1, f0, f1, 0);
        z0 = z1;
        f0 = f1;
      }
    }
    return static_cast<int>(std::lround(total / (2.0 * specfun::kPi)));
  };

  std::vector<PoleEstimate> poles;
  // Box edges follow an irrational-looking step and split fraction so they
  // never land on the integer / half-integer lattices where these kernels
  // have their poles.
  constexpr double kSplit = 0.4871;
  constexpr double kStep = 0.5137;
  std::function<void(double, double, int)> refine = [&](double a, double b, int count) {
    if (count == 0) return;
    if (b - a <= resolution) {
      poles.push_back({0.5 * (a + b), -count});
      return;
    }
    const double m = a + kSplit * (b - a);
    const int left = winding(a, m);
    refine(a, m, left);
    refine(m, b, count - left);
  };
  for (double a = lo; a < hi; a += kStep) {
    const double b = std::min(hi, a + kStep);
    refine(a, b, winding(a, b));
  }
  return poles;
}

}  // namespace axidiff

#endif  // AXIDIFF_MELLIN_BARNES_HPP

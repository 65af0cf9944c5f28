#ifndef AXIDIFF_SPECFUN_HPP
#define AXIDIFF_SPECFUN_HPP

// Scalar special functions in double precision: Gamma (real and complex log),
// digamma at integers, Bessel J0 / I_v / K_v, Laguerre polynomials, Kummer's
// confluent hypergeometric 1F1 and the Whittaker M function.
//
// Everything here is a pure function; there is no global state.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "axidiff/errors.hpp"
#include "axidiff/summation.hpp"

namespace axidiff::specfun {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEulerGamma = std::numbers::egamma;

/// Series control. rel_tol is relative to the running sum.
struct Accuracy {
  double rel_tol = 1e-12;
  int max_terms = 10000;

  void validate() const {
    require(rel_tol > 0.0 && rel_tol < 1e-3, "Accuracy.rel_tol must lie in (0, 1e-3)");
    require(max_terms >= 16, "Accuracy.max_terms must be >= 16");
  }
};

namespace detail {

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// sin(pi x) with exact argument reduction, so sin_pi(n) == 0 for integer n.
inline double sin_pi(double x) {
  const double r = x - 2.0 * std::round(0.5 * x);  // r in [-1, 1]
  if (r == 0.0 || std::abs(r) == 1.0) return 0.0;
  if (r > 0.5) return std::sin(kPi * (1.0 - r));
  if (r < -0.5) return -std::sin(kPi * (1.0 + r));
  return std::sin(kPi * r);
}

// Lanczos approximation, g = 7, nine coefficients.
inline double lanczos_gamma(double x) {
  static constexpr std::array<double, 9> p = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double g = 7.0;
  const double z = x - 1.0;
  double acc = p[0];
  for (std::size_t i = 1; i < p.size(); ++i) acc += p[i] / (z + static_cast<double>(i));
  const double tt = z + g + 0.5;
  return std::sqrt(2.0 * kPi) * std::pow(tt, z + 0.5) * std::exp(-tt) * acc;
}

inline Complex stirling_log_gamma(Complex z) {
  // B_{2k} / (2k (2k-1))
  static constexpr std::array<double, 8> c = {1.0 / 12.0,         -1.0 / 360.0,
                                              1.0 / 1260.0,       -1.0 / 1680.0,
                                              1.0 / 1188.0,       -691.0 / 360360.0,
                                              1.0 / 156.0,        -3617.0 / 122400.0};
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  Complex pw = inv;
  for (double ck : c) {
    series += ck * pw;
    pw *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series;
}

}  // namespace detail

/// Γ(x) for real x. Reflection handles x < 1/2. Throws PoleError on 0, -1, -2, ...
inline double gamma_real(double x) {
  if (!std::isfinite(x)) throw ParameterError("gamma_real: non-finite argument");
  if (detail::is_nonpositive_integer(x))
    throw PoleError("gamma_real: pole at non-positive integer " + std::to_string(x));
  if (x < 0.5) return kPi / (detail::sin_pi(x) * detail::lanczos_gamma(1.0 - x));
  // exact factorials where representable
  if (x == std::floor(x) && x <= 23.0) {
    double f = 1.0;
    for (int k = 2; k < static_cast<int>(x); ++k) f *= k;
    return f;
  }
  return detail::lanczos_gamma(x);
}

/// log Γ(z), continuous branch obtained from Stirling's series after an upward
/// shift (so Im log Γ accumulates the principal logs of z, z+1, ...).
inline Complex log_gamma_complex(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw ParameterError("log_gamma_complex: non-finite argument");
  if (z.imag() == 0.0 && detail::is_nonpositive_integer(z.real()))
    throw PoleError("log_gamma_complex: pole at non-positive integer");
  constexpr double kShiftTo = 10.0;
  Complex shift_log = 0.0;
  if (z.real() < kShiftTo && std::abs(z) < 2.0 * kShiftTo + std::abs(z.real())) {
    const int n = static_cast<int>(std::ceil(kShiftTo - z.real()));
    for (int k = 0; k < n; ++k) shift_log += std::log(z + static_cast<double>(k));
    z += static_cast<double>(n);
  }
  return detail::stirling_log_gamma(z) - shift_log;
}

/// Real log|Γ(x)|, x > 0.
inline double log_gamma_real(double x) {
  require(x > 0.0, "log_gamma_real: x must be positive");
  return log_gamma_complex(Complex(x, 0.0)).real();
}

/// ψ(n) = -γ + Σ_{k<n} 1/k
inline double digamma_int(int n) {
  require(n >= 1, "digamma_int: n must be >= 1");
  double s = -kEulerGamma;
  for (int k = 1; k < n; ++k) s += 1.0 / k;
  return s;
}

/// J0(x), absolute error below ~1e-15 for x <= 50.
inline double bessel_j0(double x) {
  if (!std::isfinite(x)) throw ParameterError("bessel_j0: non-finite argument");
  x = std::abs(x);
  if (x <= 5.0) {
    const double q = -0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
      term *= q / (static_cast<double>(k) * k);
      sum += term;
      if (std::abs(term) < 1e-18) break;
    }
    return sum;
  }
  if (x <= 50.0) {
    // J0(x) = (1/π) ∫_0^π cos(x sin θ) dθ; the trapezoid rule on a full period
    // is exact up to terms of order J_{2N}(x).
    const int n = static_cast<int>(std::ceil(0.5 * x)) + 32;
    double sum = 0.5 * (1.0 + 1.0);
    for (int k = 1; k < n; ++k) sum += std::cos(x * std::sin(kPi * k / n));
    return sum / n;
  }
  // Hankel asymptotic expansion
  double p = 1.0, q = -0.125 / x;
  double ak = -0.125;  // a_1(0) = -1/8
  double xpow = x;
  for (int k = 2; k < 30; ++k) {
    const double odd = 2.0 * k - 1.0;
    ak *= -(odd * odd) / (8.0 * k);
    xpow *= x;
    const double term = ak / xpow;
    if (std::abs(term) < 1e-18) break;
    // even k feeds P with sign (-1)^{k/2}; odd k feeds Q with sign (-1)^{(k-1)/2}
    if (k % 2 == 0)
      p += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    else
      q += (((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0) * term;
  }
  const double chi = x - 0.25 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

/// e^{-x} I_v(x) for x >= 0. Power series up to x = 50, asymptotic expansion beyond.
inline double bessel_iv_scaled(double v, double x) {
  require(std::isfinite(v) && std::isfinite(x) && x >= 0.0,
          "bessel_iv_scaled: need finite v and x >= 0");
  if (v < 0.0 && v == std::floor(v)) v = -v;  // I_{-n} = I_n
  if (x == 0.0) {
    if (v == 0.0) return 1.0;
    if (v > 0.0) return 0.0;
    throw ParameterError("bessel_iv: I_v(0) diverges for negative non-integer v");
  }
  if (x <= 50.0) {
    const double h = 0.5 * x;
    const double q = h * h;
    // v + 1 is never a non-positive integer here thanks to the I_{-n} fold
    double term = std::exp(v * std::log(h) - x) / gamma_real(v + 1.0);
    double sum = term;
    for (int k = 1; k < 400; ++k) {
      term *= q / (k * (v + k));
      sum += term;
      if (k > h && std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
  }
  const double mu = 4.0 * v * v;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (mu - odd * odd) / (8.0 * k * x);
    if (std::abs(next) > std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * kPi * x);
}

/// e^{-x} I0(x); lies in (0, 1] and never overflows.
inline double bessel_i0_scaled(double x) {
  require(x >= 0.0, "bessel_i0_scaled: x must be >= 0");
  if (x <= 30.0) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 200; ++k) {
      term *= q / (static_cast<double>(k) * k);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return sum * std::exp(-x);
  }
  double c = 1.0, sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = c * odd * odd / (8.0 * k * x);
    if (next > c) break;
    c = next;
    sum += c;
    if (c < 1e-17 * sum) break;
  }
  return sum / std::sqrt(2.0 * kPi * x);
}

/// I_v(x) by its power series (overflows past x ~ 700).
inline double bessel_iv(double v, double x) {
  if (x == 0.0) return bessel_iv_scaled(v, 0.0);
  return bessel_iv_scaled(v, x) * std::exp(x);
}

/// e^{x} K_v(x) from K_v(x) = ∫_0^∞ e^{-x cosh t} cosh(vt) dt. Valid for every
/// real order, including integers, and for any x > 0.
inline double bessel_k_scaled(double v, double x) {
  require(std::isfinite(v) && std::isfinite(x) && x > 0.0, "bessel_k_scaled: need x > 0");
  const double h = std::min(0.1, 0.6 / std::sqrt(x));
  double sum = 0.5;  // t = 0 node, half weight
  for (int k = 1; k < 100000; ++k) {
    const double t = k * h;
    const double sh = std::sinh(0.5 * t);
    const double term = std::exp(-2.0 * x * sh * sh) * std::cosh(v * t);
    sum += term;
    if (term < 1e-18 * sum && 2.0 * x * sh * sh > std::abs(v) * t + 1.0) break;
  }
  return sum * h;
}

/// K_v(x) for non-integer v. Uses K_v = π(I_{-v} - I_v) / (2 sin πv) for x <= 2
/// and the integral representation above 2, where the difference cancels.
inline double bessel_kv(double v, double x) {
  require(std::isfinite(v), "bessel_kv: non-finite order");
  if (std::abs(v - std::round(v)) <= 1e-6)
    throw PoleError("bessel_kv: order within 1e-6 of an integer; perturb v");
  require(x > 0.0, "bessel_kv: x must be > 0");
  if (x <= 2.0)
    return kPi * (bessel_iv(-v, x) - bessel_iv(v, x)) / (2.0 * detail::sin_pi(v));
  return bessel_k_scaled(v, x) * std::exp(-x);
}

/// L_n(x) by upward three-term recurrence.
inline double laguerre(long n, double x) {
  require(n >= 0 && n <= 1000000, "laguerre: n must lie in [0, 1e6]");
  if (n == 0) return 1.0;
  double prev = 1.0, cur = 1.0 - x;
  for (long k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Leading term of the large-n oscillatory asymptotic of L_n(x), x > 0.
inline double laguerre_asymp(long n, double x) {
  require(n >= 1, "laguerre_asymp: n must be >= 1");
  require(x > 0.0, "laguerre_asymp: x must be > 0");
  const double nx = static_cast<double>(n) * x;
  return std::exp(0.5 * x) / std::sqrt(kPi) * std::pow(nx, -0.25) *
         std::cos(2.0 * std::sqrt(nx) - 0.25 * kPi);
}

namespace detail {

// Σ (a)_k x^k / ((b)_k k!) times e^{-scale_exp}; the exponential is folded
// into the first term so large x does not overflow before cancellation.
inline Complex hyp1f1_series(Complex a, double b, double x, const Accuracy& acc,
                             double scale_exp) {
  require(!is_nonpositive_integer(b), "hyp1f1: b must not be a non-positive integer");
  require(std::isfinite(x), "hyp1f1: non-finite x");
  acc.validate();
  Complex term = std::exp(-scale_exp);
  NeumaierSum<Complex> sum;
  sum.add(term);
  for (int k = 0; k < acc.max_terms; ++k) {
    const Complex ratio = (a + static_cast<double>(k)) * x / ((b + k) * (k + 1.0));
    term *= ratio;
    sum.add(term);
    if (term == 0.0) return sum.value();
    const Complex next_ratio =
        (a + static_cast<double>(k + 1)) * x / ((b + k + 1.0) * (k + 2.0));
    if (std::abs(term) <= acc.rel_tol * std::abs(sum.value()) &&
        std::abs(next_ratio) < 0.5)
      return sum.value();
  }
  throw ConvergenceError("hyp1f1: series did not converge within max_terms");
}

}  // namespace detail

/// ₁F₁(a; b; x) by its ascending series with compensated summation.
inline Complex hyp1f1(Complex a, double b, double x, const Accuracy& acc = {}) {
  require(x >= 0.0, "hyp1f1: x must be >= 0");
  return detail::hyp1f1_series(a, b, x, acc, 0.0);
}

inline double hyp1f1(double a, double b, double x, const Accuracy& acc = {}) {
  return hyp1f1(Complex(a, 0.0), b, x, acc).real();
}

/// e^{-x} ₁F₁(a; b; x), usable up to x ~ 700.
inline Complex hyp1f1_scaled(Complex a, double b, double x, const Accuracy& acc = {}) {
  require(x >= 0.0, "hyp1f1_scaled: x must be >= 0");
  return detail::hyp1f1_series(a, b, x, acc, x);
}

/// M_{μ,v}(x) = x^{v+1/2} e^{-x/2} ₁F₁(v - μ + 1/2; 2v + 1; x)
inline Complex whittaker_m(Complex mu, double v, double x, const Accuracy& acc = {}) {
  require(x > 0.0, "whittaker_m: x must be > 0");
  require(!detail::is_nonpositive_integer(2.0 * v + 1.0),
          "whittaker_m: 2v+1 must not be a non-positive integer");
  // fold e^{-x/2} into the series so e^{x} growth of ₁F₁ never overflows
  return std::pow(x, v + 0.5) *
         detail::hyp1f1_series(v - mu + 0.5, 2.0 * v + 1.0, x, acc, 0.5 * x);
}

}  // namespace axidiff::specfun

#endif  // AXIDIFF_SPECFUN_HPP

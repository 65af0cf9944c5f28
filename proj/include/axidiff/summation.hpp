#ifndef AXIDIFF_SUMMATION_HPP
#define AXIDIFF_SUMMATION_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>

namespace axidiff {

namespace detail {
inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& z) {
  return std::max(std::abs(z.real()), std::abs(z.imag()));
}

// Neumaier's two-sum step applied per component.
inline void two_sum_step(double& sum, double& comp, double x) {
  const double t = sum + x;
  if (std::abs(sum) >= std::abs(x))
    comp += (sum - t) + x;
  else
    comp += (x - t) + sum;
  sum = t;
}
}  // namespace detail

/// Compensated (Neumaier) accumulator for double or std::complex<double>.
template <typename T>
class NeumaierSum {
 public:
  void add(const T& x) {
    if constexpr (std::is_same_v<T, double>) {
      detail::two_sum_step(sum_, comp_, x);
    } else {
      double sr = sum_.real(), si = sum_.imag();
      double cr = comp_.real(), ci = comp_.imag();
      detail::two_sum_step(sr, cr, x.real());
      detail::two_sum_step(si, ci, x.imag());
      sum_ = T(sr, si);
      comp_ = T(cr, ci);
    }
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

/// Pairwise summation with a fixed tree determined only by the element count,
/// so the result is reproducible regardless of how the inputs were produced.
template <typename T>
T pairwise_sum(std::span<const T> xs) {
  if (xs.size() <= 8) {
    T s{};
    for (const T& x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace axidiff

#endif  // AXIDIFF_SUMMATION_HPP

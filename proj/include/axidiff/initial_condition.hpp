#ifndef AXIDIFF_INITIAL_CONDITION_HPP
#define AXIDIFF_INITIAL_CONDITION_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <variant>

#include "axidiff/errors.hpp"
#include "axidiff/specfun.hpp"

namespace axidiff {

/// Diffusivity and evaluation point. Every formula depends on kappa and t only
/// through the product kappa * t.
struct PhysicalSetup {
  double kappa = 1.0;
  double r = 0.0;
  double t = 1.0;

  void validate() const {
    require(std::isfinite(kappa) && kappa > 0.0, "PhysicalSetup: kappa must be > 0");
    require(std::isfinite(t) && t > 0.0, "PhysicalSetup: t must be > 0");
    require(std::isfinite(r) && r >= 0.0, "PhysicalSetup: r must be >= 0");
    require(std::isfinite(kappa * t) && kappa * t > 0.0,
            "PhysicalSetup: kappa * t must be finite and positive");
  }
  double kt() const { return kappa * t; }
  /// r^2 / (4 kappa t)
  double x() const { return r * r / (4.0 * kappa * t); }
};

struct Gaussian {
  double c;  // g(r) = exp(-c r^2)
};
struct UniformDisk {
  double radius;  // g(r) = 1 on [0, radius)
};
struct BesselJ0 {
  double a;  // g(r) = J0(a r)
};
struct BesselJ0Squared {
  double a;
};
struct ProductIK {
  double a;
  double v;  // g(r) = I_v(a r) K_v(a r), 0 < v < 1 non-integer
};

enum class SupportHint { finite, gaussian_dominated };

struct Custom {
  std::function<double(double)> sampler;
  SupportHint hint = SupportHint::gaussian_dominated;
  double support_radius = std::numeric_limits<double>::infinity();
};

using Profile = std::variant<Gaussian, UniformDisk, BesselJ0, BesselJ0Squared, ProductIK, Custom>;

/// I_v(x) K_v(x) for 0 < v < 1; tends to 1/(2v) as x -> 0 and to 1/(2x) at infinity.
inline double bessel_ik_product(double v, double x) {
  if (x == 0.0) return 0.5 / v;
  if (x <= 2.0) return specfun::bessel_iv(v, x) * specfun::bessel_kv(v, x);
  return specfun::bessel_iv_scaled(v, x) * specfun::bessel_k_scaled(v, x);
}

/// Initial temperature profile g(r), optionally multiplied by log(r).
class InitialCondition {
 public:
  static InitialCondition gaussian(double c) {
    require(std::isfinite(c) && c > 0.0, "Gaussian: c must be > 0");
    return InitialCondition(Gaussian{c});
  }
  static InitialCondition uniform_disk(double radius) {
    require(std::isfinite(radius) && radius > 0.0, "UniformDisk: radius must be > 0");
    return InitialCondition(UniformDisk{radius});
  }
  static InitialCondition bessel_j0(double a) {
    require(std::isfinite(a) && a > 0.0, "BesselJ0: a must be > 0");
    return InitialCondition(BesselJ0{a});
  }
  static InitialCondition bessel_j0_squared(double a) {
    require(std::isfinite(a) && a > 0.0, "BesselJ0Squared: a must be > 0");
    return InitialCondition(BesselJ0Squared{a});
  }
  static InitialCondition product_ik(double a, double v) {
    require(std::isfinite(a) && a > 0.0, "ProductIK: a must be > 0");
    require(std::isfinite(v) && v > 0.0 && v < 1.0, "ProductIK: v must lie in (0, 1)");
    if (std::abs(v - std::round(v)) <= 1e-6)
      throw PoleError("ProductIK: v must not be an integer");
    return InitialCondition(ProductIK{a, v});
  }
  static InitialCondition custom(std::function<double(double)> sampler, SupportHint hint,
                                 double support_radius = std::numeric_limits<double>::infinity()) {
    require(static_cast<bool>(sampler), "Custom: sampler must be callable");
    if (hint == SupportHint::finite)
      require(std::isfinite(support_radius) && support_radius > 0.0,
              "Custom: finite support hint needs a positive support radius");
    return InitialCondition(Custom{std::move(sampler), hint, support_radius});
  }
  /// g(r) = h(r) log(r)
  static InitialCondition log_weighted(const InitialCondition& base) {
    require(!base.log_weighted_, "LogWeighted: base must not itself be log-weighted");
    InitialCondition ic = base;
    ic.log_weighted_ = true;
    return ic;
  }

  const Profile& profile() const { return profile_; }
  bool is_log_weighted() const { return log_weighted_; }
  bool is_custom() const { return std::holds_alternative<Custom>(profile_); }

  /// The profile without the log factor.
  InitialCondition base() const {
    InitialCondition b = *this;
    b.log_weighted_ = false;
    return b;
  }

  /// Value of the base profile h(y) (no log factor).
  double base_value(double y) const {
    return std::visit(
        [y](const auto& p) -> double {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, Gaussian>) {
            return std::exp(-p.c * y * y);
          } else if constexpr (std::is_same_v<T, UniformDisk>) {
            return y < p.radius ? 1.0 : (y == p.radius ? 0.5 : 0.0);
          } else if constexpr (std::is_same_v<T, BesselJ0>) {
            return specfun::bessel_j0(p.a * y);
          } else if constexpr (std::is_same_v<T, BesselJ0Squared>) {
            const double j = specfun::bessel_j0(p.a * y);
            return j * j;
          } else if constexpr (std::is_same_v<T, ProductIK>) {
            return bessel_ik_product(p.v, p.a * y);
          } else {
            if (p.hint == SupportHint::finite && y > p.support_radius) return 0.0;
            return p.sampler(y);
          }
        },
        profile_);
  }

  double operator()(double y) const {
    const double h = base_value(y);
    return log_weighted_ ? h * std::log(y) : h;
  }

  /// Radius beyond which g vanishes identically (infinity if none).
  double support_bound() const {
    if (const auto* d = std::get_if<UniformDisk>(&profile_)) return d->radius;
    if (const auto* c = std::get_if<Custom>(&profile_))
      return c->hint == SupportHint::finite ? c->support_radius
                                            : std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::infinity();
  }

  std::string name() const {
    static constexpr const char* names[] = {"gaussian", "disk", "j0", "j0sq", "ivkv", "custom"};
    std::string n = names[profile_.index()];
    return log_weighted_ ? "log-" + n : n;
  }

 private:
  explicit InitialCondition(Profile p) : profile_(std::move(p)) {}

  Profile profile_;
  bool log_weighted_ = false;
};

}  // namespace axidiff

#endif  // AXIDIFF_INITIAL_CONDITION_HPP

#pragma once

// Distribution functions on the extended real line: the space of
// left-continuous, nondecreasing maps into [0,1], the maximal element eps0,
// the sampled pointwise order, and the phi families used as stability
// envelopes.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "rnstab/errors.hpp"

namespace rnstab {

/// Standard normal CDF. Delegates to the C library's complementary error
/// function, which is accurate to a few ulp over the whole real line, so
/// Phi(z) = erfc(-z / sqrt 2) / 2 keeps absolute error well below 1e-15 and
/// relative accuracy deep in the lower tail.
inline double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

/// t -> eps0(t - shift): 0 for t <= shift, 1 above.
struct Eps0Shift {
  double shift = 0.0;
};

/// t -> t / (t + c) for t > 0, 0 otherwise. c = 0 collapses to eps0.
struct Ratio {
  double c = 0.0;
};

/// t -> Phi(scale * t - location). scale stays 1 unless produced by
/// scale_arg.
struct GaussianShift {
  double location = 0.0;
  double scale = 1.0;
};

/// Left-continuous step function: 0 on (-inf, b0], values[i] on
/// (b_i, b_{i+1}], values.back() above the last breakpoint.
struct Grid {
  std::vector<double> breakpoints;
  std::vector<double> values;
};

class DistributionFn {
 public:
  using Variant = std::variant<Eps0Shift, Ratio, GaussianShift, Grid>;

  DistributionFn() : v_(Eps0Shift{}) {}

  DistributionFn(Eps0Shift e) : v_(e) {  // NOLINT(google-explicit-constructor)
    if (!std::isfinite(e.shift) || e.shift < 0.0) {
      throw DomainError("Eps0Shift requires a finite shift >= 0");
    }
  }

  DistributionFn(Ratio r) : v_(r) {  // NOLINT(google-explicit-constructor)
    if (!std::isfinite(r.c) || r.c < 0.0) {
      throw DomainError("Ratio requires a finite c >= 0");
    }
  }

  DistributionFn(GaussianShift g) : v_(g) {  // NOLINT(google-explicit-constructor)
    if (!std::isfinite(g.location) || !std::isfinite(g.scale) || g.scale <= 0.0) {
      throw DomainError("GaussianShift requires finite location and scale > 0");
    }
  }

  DistributionFn(Grid g) : v_(std::move(g)) {  // NOLINT(google-explicit-constructor)
    const auto& grid = std::get<Grid>(v_);
    if (grid.breakpoints.empty() || grid.breakpoints.size() != grid.values.size()) {
      throw DomainError("Grid needs matching, nonempty breakpoints and values");
    }
    for (std::size_t i = 0; i < grid.breakpoints.size(); ++i) {
      const double b = grid.breakpoints[i];
      const double v = grid.values[i];
      if (!std::isfinite(b) || !(v >= 0.0 && v <= 1.0)) {
        throw DomainError("Grid breakpoints must be finite and values in [0,1]");
      }
      if (i > 0 && !(b > grid.breakpoints[i - 1])) {
        throw DomainError("Grid breakpoints must be strictly increasing");
      }
      if (i > 0 && v < grid.values[i - 1]) {
        throw DomainError("Grid values must be nondecreasing");
      }
    }
  }

  const Variant& variant() const noexcept { return v_; }

  template <class T>
  bool holds() const noexcept {
    return std::holds_alternative<T>(v_);
  }

  template <class T>
  const T& as() const {
    return std::get<T>(v_);
  }

 private:
  Variant v_;
};

inline DistributionFn eps0() { return Eps0Shift{0.0}; }

namespace detail {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace detail

/// Evaluates F at an extended real t. F(-inf) = 0 and F(+inf) = 1 for every
/// variant.
inline double eval(const DistributionFn& F, double t) {
  if (std::isnan(t)) {
    throw DomainError("distribution function evaluated at NaN");
  }
  if (t == -std::numeric_limits<double>::infinity()) return 0.0;
  if (t == std::numeric_limits<double>::infinity()) return 1.0;
  return std::visit(
      detail::Overloaded{
          [t](const Eps0Shift& e) { return t > e.shift ? 1.0 : 0.0; },
          [t](const Ratio& r) {
            if (t <= 0.0) return 0.0;
            if (r.c == 0.0) return 1.0;
            return t / (t + r.c);
          },
          [t](const GaussianShift& g) { return normal_cdf(g.scale * t - g.location); },
          [t](const Grid& g) {
            const auto it = std::lower_bound(g.breakpoints.begin(), g.breakpoints.end(), t);
            const auto idx = static_cast<std::size_t>(it - g.breakpoints.begin());
            return idx == 0 ? 0.0 : g.values[idx - 1];
          },
      },
      F.variant());
}

/// Left limit lim_{s -> t-} F(s). Every variant is left-continuous, so at
/// finite t this is eval(F, t); at +inf a Grid keeps its last value, which
/// is what separates D+ from Delta+.
inline double left_limit(const DistributionFn& F, double t) {
  if (t == std::numeric_limits<double>::infinity()) {
    if (F.holds<Grid>()) return F.as<Grid>().values.back();
    return 1.0;
  }
  return eval(F, t);
}

/// Membership in D+: left limit 1 at +inf.
inline bool in_d_plus(const DistributionFn& F) {
  return left_limit(F, std::numeric_limits<double>::infinity()) == 1.0;
}

/// Sampled pointwise order: F(t) <= G(t) + tol for every t in grid.
inline bool leq(const DistributionFn& F, const DistributionFn& G, std::span<const double> grid,
                double tol) {
  if (grid.empty()) throw UsageError("leq: empty grid");
  if (!(tol >= 0.0)) throw DomainError("leq: tolerance must be >= 0");
  return std::all_of(grid.begin(), grid.end(),
                     [&](double t) { return eval(F, t) <= eval(G, t) + tol; });
}

/// t -> F(gamma * t), kept in closed form for every variant.
inline DistributionFn scale_arg(const DistributionFn& F, double gamma) {
  if (!std::isfinite(gamma) || gamma <= 0.0) {
    throw DomainError("scale_arg: gamma must be finite and > 0");
  }
  return std::visit(
      detail::Overloaded{
          [gamma](const Eps0Shift& e) -> DistributionFn { return Eps0Shift{e.shift / gamma}; },
          [gamma](const Ratio& r) -> DistributionFn { return Ratio{r.c / gamma}; },
          [gamma](const GaussianShift& g) -> DistributionFn {
            return GaussianShift{g.location, g.scale * gamma};
          },
          [gamma](const Grid& g) -> DistributionFn {
            Grid out{g.breakpoints, g.values};
            for (double& b : out.breakpoints) b /= gamma;
            return out;
          },
      },
      F.variant());
}

/// Samples F at increasing points into a Grid. The grid's right limit at
/// each point (its value on the following cell) is the sampled value, so the
/// step function never exceeds F on [points.front(), +inf).
inline DistributionFn sample_to_grid(const DistributionFn& F, std::span<const double> points) {
  Grid g;
  g.breakpoints.assign(points.begin(), points.end());
  g.values.reserve(points.size());
  for (double t : points) g.values.push_back(eval(F, t));
  return g;
}

enum class PhiFamily { ExpRatio, GaussianLocation };

inline std::string to_string(PhiFamily fam) {
  return fam == PhiFamily::ExpRatio ? "exp_ratio" : "gaussian_location";
}

/// phi_x for the family: ExpRatio gives Ratio(e^x), GaussianLocation gives
/// Phi(t - x).
inline DistributionFn phi(PhiFamily fam, double x) {
  if (fam == PhiFamily::ExpRatio) return Ratio{std::exp(x)};
  return GaussianShift{x, 1.0};
}

}  // namespace rnstab

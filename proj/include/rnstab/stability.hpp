#pragma once

// Characteristic-root analysis of f(x) = p f(x-1) - q f(x-2) and the
// stability constant gamma.

#include <cmath>
#include <sstream>
#include <string>

#include "rnstab/errors.hpp"

namespace rnstab {

struct Coefficients {
  double p = 0.0;
  double q = 0.0;
};

/// Roots of x^2 - p x + q = 0 with |alpha| > |beta|, and gamma.
struct Spectrum {
  double p = 0.0;
  double q = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  Coefficients coefficients() const { return {p, q}; }
};

namespace detail {
inline std::string fmt_pair(const char* a, double x, const char* b, double y) {
  std::ostringstream os;
  os.precision(17);
  os << a << '=' << x << ", " << b << '=' << y;
  return os.str();
}

inline void require_region(double alpha, double beta) {
  const double aa = std::abs(alpha), ab = std::abs(beta);
  if (!(std::isfinite(alpha) && std::isfinite(beta) && ab > 0.0 && ab < aa && aa < 1.0)) {
    throw OutsideValidityRegion("roots violate 0 < |beta| < |alpha| < 1 (" +
                                fmt_pair("alpha", alpha, "beta", beta) + ")");
  }
}
}  // namespace detail

/// |alpha - beta| (1 - |alpha|) (1 - |beta|) / (|alpha| + |beta| - 2 |alpha| |beta|)
inline double gamma_of(double alpha, double beta) {
  detail::require_region(alpha, beta);
  const double aa = std::abs(alpha), ab = std::abs(beta);
  return std::abs(alpha - beta) * (1.0 - aa) * (1.0 - ab) / (aa + ab - 2.0 * aa * ab);
}

inline Spectrum solve_characteristic(const Coefficients& c) {
  if (!std::isfinite(c.p) || !std::isfinite(c.q)) {
    throw DomainError("coefficients must be finite");
  }
  if (c.q == 0.0) {
    throw DegenerateEquation("q = 0 reduces the equation to first order");
  }
  const double disc = c.p * c.p - 4.0 * c.q;
  if (!(disc > 0.0)) {
    throw NonrealOrRepeatedRoots("p^2 - 4q <= 0 (" + detail::fmt_pair("p", c.p, "q", c.q) + ")");
  }
  // p = alpha + beta = 0 means |alpha| = |beta| exactly; rounding in the
  // square root would otherwise split them.
  if (c.p == 0.0) {
    throw OutsideValidityRegion("p = 0 gives roots of equal magnitude (" +
                                detail::fmt_pair("p", c.p, "q", c.q) + ")");
  }
  // Larger-magnitude root first without cancellation; the other from Vieta.
  const double root = std::sqrt(disc);
  const double big = c.p >= 0.0 ? 0.5 * (c.p + root) : 0.5 * (c.p - root);
  const double small = c.q / big;
  detail::require_region(big, small);
  return Spectrum{c.p, c.q, big, small, gamma_of(big, small)};
}

inline Coefficients from_roots(double alpha, double beta) {
  detail::require_region(alpha, beta);
  return {alpha + beta, alpha * beta};
}

inline Spectrum spectrum_from_roots(double alpha, double beta) {
  const Coefficients c = from_roots(alpha, beta);
  return Spectrum{c.p, c.q, alpha, beta, gamma_of(alpha, beta)};
}

}  // namespace rnstab

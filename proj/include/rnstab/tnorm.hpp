#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "rnstab/errors.hpp"

namespace rnstab {

enum class TNorm { Minimum, Product };

inline std::string to_string(TNorm T) { return T == TNorm::Minimum ? "minimum" : "product"; }

namespace detail {
inline void require_unit(double a, const char* what) {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw DomainError(std::string(what) + ": argument outside [0,1]");
  }
}
}  // namespace detail

inline double apply(TNorm T, double a, double b) {
  detail::require_unit(a, "tnorm apply");
  detail::require_unit(b, "tnorm apply");
  return T == TNorm::Minimum ? std::min(a, b) : a * b;
}

/// n-ary extension by left fold; the empty fold is 1.
inline double fold(TNorm T, std::span<const double> values) {
  double acc = 1.0;
  for (double v : values) {
    detail::require_unit(v, "tnorm fold");
    acc = apply(T, acc, v);
  }
  return acc;
}

struct TNormViolation {
  std::string axiom;  // "TN1-commutative", "TN1-associative", "TN2", "TN3"
  double a, b, c, d;
  double lhs, rhs;
};

/// Randomized check of commutativity, associativity, unit and joint
/// monotonicity on `samples` quadruples. The endpoints 0 and 1 are mixed into
/// the draws so boundary behaviour is always exercised.
inline std::vector<TNormViolation> check_tnorm_axioms(TNorm T, std::size_t samples,
                                                      std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, 9);
  auto draw = [&] {
    const int k = pick(rng);
    if (k == 0) return 0.0;
    if (k == 1) return 1.0;
    return unit(rng);
  };

  std::vector<TNormViolation> out;
  for (std::size_t i = 0; i < samples; ++i) {
    const double a = draw(), b = draw(), c = draw(), d = draw();

    const double ab = apply(T, a, b), ba = apply(T, b, a);
    if (std::abs(ab - ba) > tol) out.push_back({"TN1-commutative", a, b, c, d, ab, ba});

    const double left = apply(T, apply(T, a, b), c);
    const double right = apply(T, a, apply(T, b, c));
    if (std::abs(left - right) > tol) out.push_back({"TN1-associative", a, b, c, d, left, right});

    const double unit_val = apply(T, a, 1.0);
    if (std::abs(unit_val - a) > tol) out.push_back({"TN2", a, b, c, d, unit_val, a});

    // TN3 with (lo, hi) pairs built from the draws.
    const double a1 = std::min(a, c), c1 = std::max(a, c);
    const double b1 = std::min(b, d), d1 = std::max(b, d);
    const double lo = apply(T, a1, b1), hi = apply(T, c1, d1);
    if (lo > hi + tol) out.push_back({"TN3", a1, b1, c1, d1, lo, hi});
  }
  return out;
}

}  // namespace rnstab

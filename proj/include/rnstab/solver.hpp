#pragma once

// Constructive side of the stability result. A Scenario is a perturbed
// function f on the lattice x0 + Z; from it we build
//
//   G_n(x) = alpha^n (f(x-n) - beta  f(x-n-1)),   G = lim G_n
//   H_n(x) = beta^n  (f(x-n) - alpha f(x-n-1)),   H = lim H_n
//   F      = alpha/(alpha-beta) G - beta/(alpha-beta) H
//
// Limits are truncated at the first N whose geometric tail is certified below
// the policy target. Each returned bound also carries a floating-point
// rounding allowance, so |computed - exact| <= bound holds for the
// mathematical f the scenario describes.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "rnstab/errors.hpp"
#include "rnstab/noise.hpp"
#include "rnstab/stability.hpp"
#include "rnstab/vector.hpp"

namespace rnstab {

/// f(x0 + k) = c1 alpha^k + c2 beta^k + noise(k), with
/// |noise(k)| <= noise_scale e^(x0+k) / (1 + |p| + |q|).
///
/// The divisor keeps |f(x) - p f(x-1) + q f(x-2)| <= noise_scale e^x, so any
/// noise_scale <= 1 satisfies the hypothesis for the exp-ratio envelope.
struct Scenario {
  double anchor = 0.0;
  Spectrum spectrum;
  Vector c1;
  Vector c2;
  std::uint64_t noise_seed = 0;
  double noise_scale = 0.0;

  std::size_t dim() const noexcept { return c1.dim(); }
};

struct TruncationPolicy {
  double target_tail = 1e-10;
  std::size_t max_terms = 500;
};

namespace detail {

inline constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2.0;
// Generous multiplier on unit roundoff for the handful of operations between
// the model values and a returned vector.
inline constexpr double kRoundingFactor = 16.0;

inline double norm_sum(const Spectrum& s) { return 1.0 + std::abs(s.p) + std::abs(s.q); }

}  // namespace detail

/// e^x, the residual envelope paired with the exp-ratio phi family.
inline double envelope(double x) { return std::exp(x); }

inline Scenario make_scenario(double anchor, const Spectrum& spec, Vector c1, Vector c2,
                              std::uint64_t seed, double noise_scale) {
  if (c1.dim() != c2.dim()) throw UsageError("scenario: c1 and c2 differ in dimension");
  if (!std::isfinite(anchor)) throw DomainError("scenario: anchor must be finite");
  if (!(noise_scale >= 0.0) || !std::isfinite(noise_scale)) {
    throw DomainError("scenario: noise scale must be finite and >= 0");
  }
  return Scenario{anchor, spec, std::move(c1), std::move(c2), seed, noise_scale};
}

inline double lattice_point(const Scenario& sc, std::int64_t k) {
  return sc.anchor + static_cast<double>(k);
}

/// Index k with x = x0 + k; off-lattice x is a usage error.
inline std::int64_t lattice_index(const Scenario& sc, double x) {
  const double d = x - sc.anchor;
  const double r = std::round(d);
  if (!std::isfinite(d) || std::abs(d - r) > 1e-9 * std::max(1.0, std::abs(x))) {
    throw UsageError("point " + std::to_string(x) + " is not on the lattice " +
                     std::to_string(sc.anchor) + " + Z");
  }
  return static_cast<std::int64_t>(r);
}

inline double noise_amplitude(const Scenario& sc, std::int64_t k) {
  return sc.noise_scale * envelope(lattice_point(sc, k)) / detail::norm_sum(sc.spectrum);
}

/// Certified bound on |f(y) - p f(y-1) + q f(y-2)| at y = x0 + k.
inline double residual_bound(const Scenario& sc, std::int64_t k) {
  const Spectrum& s = sc.spectrum;
  const double y = lattice_point(sc, k);
  return (1.0 + 64.0 * detail::kUnitRoundoff) * sc.noise_scale / detail::norm_sum(s) *
         (envelope(y) + std::abs(s.p) * envelope(y - 1.0) + std::abs(s.q) * envelope(y - 2.0));
}

/// Upper bound on the coordinate magnitudes that enter f(x0 + k).
inline double magnitude_bound(const Scenario& sc, std::int64_t k) {
  const double kk = static_cast<double>(k);
  return norm(sc.c1) * std::pow(std::abs(sc.spectrum.alpha), kk) +
         norm(sc.c2) * std::pow(std::abs(sc.spectrum.beta), kk) + noise_amplitude(sc, k);
}

inline Vector noise_at(const Scenario& sc, std::int64_t k) {
  return noise_vector(sc.noise_seed, k, sc.dim(), noise_amplitude(sc, k));
}

inline Vector f_at(const Scenario& sc, std::int64_t k) {
  const double kk = static_cast<double>(k);
  Vector v = std::pow(sc.spectrum.alpha, kk) * sc.c1;
  v += std::pow(sc.spectrum.beta, kk) * sc.c2;
  v += noise_at(sc, k);
  return v;
}

inline Vector eval_f(const Scenario& sc, double x) { return f_at(sc, lattice_index(sc, x)); }

namespace detail {

// lead^n (f(k-n) - other f(k-n-1)).
inline Vector sequence_term(const Scenario& sc, std::int64_t k, std::size_t n, double lead,
                            double other) {
  const auto nn = static_cast<std::int64_t>(n);
  Vector v = f_at(sc, k - nn);
  v -= other * f_at(sc, k - nn - 1);
  v *= std::pow(lead, static_cast<double>(n));
  return v;
}

inline double sequence_rounding(const Scenario& sc, std::int64_t k, std::size_t n, double lead,
                                double other) {
  const auto nn = static_cast<std::int64_t>(n);
  return kRoundingFactor * kUnitRoundoff * std::pow(std::abs(lead), static_cast<double>(n)) *
         (magnitude_bound(sc, k - nn) + std::abs(other) * magnitude_bound(sc, k - nn - 1));
}

}  // namespace detail

inline Vector g_n(const Scenario& sc, const Spectrum& spec, double x, std::size_t n) {
  return detail::sequence_term(sc, lattice_index(sc, x), n, spec.alpha, spec.beta);
}

inline Vector h_n(const Scenario& sc, const Spectrum& spec, double x, std::size_t n) {
  return detail::sequence_term(sc, lattice_index(sc, x), n, spec.beta, spec.alpha);
}

struct LimitResult {
  Vector value;
  double bound = 0.0;       // truncation + rounding
  double truncation = 0.0;  // certified geometric tail, <= policy target
  double rounding = 0.0;
  std::size_t terms = 0;    // N, the index of the returned partial term
};

namespace detail {

// Smallest N with sum_{j>=N} |lead|^j rho(x-j) <= target, using
// rho(x-j) = R e^(x-j):  tail(N) = R e^x (|lead|/e)^N / (1 - |lead|/e).
inline std::pair<std::size_t, double> choose_terms(const Scenario& sc, std::int64_t k, double lead,
                                                   const TruncationPolicy& pol) {
  const double rate = std::abs(lead) / std::numbers::e;
  double tail = residual_bound(sc, k) / (1.0 - rate);
  if (tail == 0.0) return {0, 0.0};
  for (std::size_t n = 0; n <= pol.max_terms; ++n) {
    if (tail <= pol.target_tail) return {n, tail};
    if (n == pol.max_terms) break;
    tail *= rate;
  }
  throw TruncationFailure("truncation target " + std::to_string(pol.target_tail) +
                              " not reached within " + std::to_string(pol.max_terms) + " terms",
                          tail);
}

inline LimitResult limit(const Scenario& sc, double x, double lead, double other,
                         const TruncationPolicy& pol) {
  if (!(pol.target_tail > 0.0)) throw DomainError("truncation target must be > 0");
  const std::int64_t k = lattice_index(sc, x);
  const auto [n, tail] = choose_terms(sc, k, lead, pol);
  LimitResult out;
  out.value = sequence_term(sc, k, n, lead, other);
  out.truncation = tail;
  out.rounding = sequence_rounding(sc, k, n, lead, other);
  out.bound = out.truncation + out.rounding;
  out.terms = n;
  return out;
}

}  // namespace detail

inline LimitResult limit_G(const Scenario& sc, const Spectrum& spec, double x,
                           const TruncationPolicy& pol = {}) {
  return detail::limit(sc, x, spec.alpha, spec.beta, pol);
}

inline LimitResult limit_H(const Scenario& sc, const Spectrum& spec, double x,
                           const TruncationPolicy& pol = {}) {
  return detail::limit(sc, x, spec.beta, spec.alpha, pol);
}

struct SolutionPoint {
  Vector value;
  double error_bound = 0.0;
  LimitResult G;
  LimitResult H;
};

inline SolutionPoint construct_F(const Scenario& sc, const Spectrum& spec, double x,
                                 const TruncationPolicy& pol = {}) {
  SolutionPoint out;
  out.G = limit_G(sc, spec, x, pol);
  out.H = limit_H(sc, spec, x, pol);
  const double diff = spec.alpha - spec.beta;
  const double a = spec.alpha / diff;
  const double b = spec.beta / diff;
  out.value = a * out.G.value;
  out.value -= b * out.H.value;
  const double ga = std::abs(a), gb = std::abs(b);
  out.error_bound = ga * out.G.bound + gb * out.H.bound +
                    detail::kRoundingFactor * detail::kUnitRoundoff *
                        (ga * norm(out.G.value) + gb * norm(out.H.value));
  return out;
}

/// |F(x) - p F(x-1) + q F(x-2)|.
inline double recurrence_residual(const Vector& F0, const Vector& F1, const Vector& F2,
                                  const Coefficients& c, NormKind kind = NormKind::Euclidean) {
  Vector r = F0;
  r -= c.p * F1;
  r += c.q * F2;
  return norm(r, kind);
}

/// f(x) - p f(x-1) + q f(x-2) at x = x0 + k.
inline Vector residual_at(const Scenario& sc, const Coefficients& c, std::int64_t k) {
  Vector r = f_at(sc, k);
  r -= c.p * f_at(sc, k - 1);
  r += c.q * f_at(sc, k - 2);
  return r;
}

}  // namespace rnstab

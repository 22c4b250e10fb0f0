#pragma once

// The induced random normed space over R^d and sampled checkers for the
// RN axioms and for the convergence / Cauchy definitions.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "rnstab/distfn.hpp"
#include "rnstab/errors.hpp"
#include "rnstab/tnorm.hpp"
#include "rnstab/vector.hpp"

namespace rnstab {

/// How a norm induces the probabilistic norm mu_x.
///   Ratio:     mu_x(t) = t / (t + |x|)
///   Eps0Shift: mu_x(t) = eps0(t - |x|)
enum class InducedForm { Ratio, Eps0Shift };

struct RNSpace {
  std::size_t dimension = 2;
  TNorm tnorm = TNorm::Minimum;
  InducedForm form = InducedForm::Ratio;
  NormKind norm_kind = NormKind::Euclidean;
};

inline double norm(const RNSpace& space, const Vector& x) { return norm(x, space.norm_kind); }

inline DistributionFn mu(const RNSpace& space, const Vector& x) {
  if (x.dim() != space.dimension) {
    throw UsageError("mu: vector dimension " + std::to_string(x.dim()) +
                     " does not match space dimension " + std::to_string(space.dimension));
  }
  const double n = norm(space, x);
  if (n == 0.0) return eps0();
  if (space.form == InducedForm::Ratio) return Ratio{n};
  return Eps0Shift{n};
}

struct RnSample {
  Vector x;
  Vector y;
  double beta;
  double t;
  double s;
};

/// Deterministic sample set for the axiom harness. Magnitudes span several
/// decades; every tenth sample has t or s pinned to 0.
inline std::vector<RnSample> sample_rn_pairs(std::size_t dim, std::size_t count,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_real_distribution<double> log_mag(-3.0, 3.0);
  std::uniform_real_distribution<double> log_time(std::log(1e-3), std::log(1e3));
  std::uniform_real_distribution<double> beta_dist(-4.0, 4.0);

  auto vec = [&] {
    Vector v(dim);
    const double scale = std::exp(log_mag(rng));
    for (std::size_t i = 0; i < dim; ++i) v[i] = scale * coord(rng);
    return v;
  };

  std::vector<RnSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    RnSample smp{vec(), vec(), 0.0, std::exp(log_time(rng)), std::exp(log_time(rng))};
    do {
      smp.beta = beta_dist(rng);
    } while (smp.beta == 0.0);
    if (i % 10 == 3) smp.t = 0.0;
    if (i % 10 == 7) smp.s = 0.0;
    out.push_back(std::move(smp));
  }
  return out;
}

struct RnViolation {
  std::string axiom;  // "RN1", "RN2", "RN3"
  std::size_t sample;
  double t;
  double lhs;
  double rhs;
};

/// Checks RN1-RN3 for an arbitrary probabilistic norm `mu_of` (a callable
/// Vector -> DistributionFn) under the t-norm T.
///   RN1: mu_0 equals eps0 on the positive grid points; a nonzero sampled x
///        differs from eps0 by more than tol at some positive grid point.
///   RN2: |mu_{beta x}(t) - mu_x(t/|beta|)| <= tol on the grid.
///   RN3: mu_{x+y}(t+s) >= T(mu_x(t), mu_y(s)) - tol at the sampled (t, s).
template <class MuFn>
std::vector<RnViolation> check_rn_axioms(MuFn&& mu_of, TNorm T, std::span<const RnSample> samples,
                                         std::span<const double> grid, double tol) {
  std::vector<RnViolation> out;
  auto rn1 = [&](const Vector& x, std::size_t idx) {
    const DistributionFn m = mu_of(x);
    if (x.is_zero()) {
      for (double t : grid) {
        if (t <= 0.0) continue;
        const double v = eval(m, t);
        if (std::abs(v - 1.0) > tol) out.push_back({"RN1", idx, t, v, 1.0});
      }
      return;
    }
    bool differs = false;
    double closest = 1.0;
    for (double t : grid) {
      if (t <= 0.0) continue;
      const double v = eval(m, t);
      closest = std::min(closest, v);
      if (std::abs(v - 1.0) > tol) {
        differs = true;
        break;
      }
    }
    if (!differs) out.push_back({"RN1", idx, 0.0, closest, 1.0});
  };

  for (std::size_t i = 0; i < samples.size(); ++i) {
    const RnSample& smp = samples[i];
    rn1(smp.x, i);
    rn1(smp.y, i);

    const DistributionFn mx = mu_of(smp.x);
    const DistributionFn mbx = mu_of(smp.beta * smp.x);
    const double ab = std::abs(smp.beta);
    for (double t : grid) {
      const double lhs = eval(mbx, t);
      const double rhs = eval(mx, t / ab);
      if (std::abs(lhs - rhs) > tol) out.push_back({"RN2", i, t, lhs, rhs});
    }

    const double lhs = eval(mu_of(smp.x + smp.y), smp.t + smp.s);
    const double rhs = apply(T, eval(mx, smp.t), eval(mu_of(smp.y), smp.s));
    if (lhs < rhs - tol) out.push_back({"RN3", i, smp.t, lhs, rhs});
  }
  return out;
}

inline std::vector<RnViolation> check_rn_axioms(const RNSpace& space,
                                                std::span<const RnSample> samples,
                                                std::span<const double> grid, double tol) {
  return check_rn_axioms([&space](const Vector& x) { return mu(space, x); }, space.tnorm, samples,
                         grid, tol);
}

namespace detail {
inline void check_limit_args(std::size_t len, std::size_t N, double eps, double lambda) {
  if (N < 1 || N > len) {
    throw UsageError("index N=" + std::to_string(N) + " outside sequence of length " +
                     std::to_string(len));
  }
  if (!(eps > 0.0)) throw DomainError("eps must be > 0");
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in (0,1)");
}
}  // namespace detail

/// Finite-sequence Cauchy test: mu_{x_n - x_m}(eps) > 1 - lambda for all
/// n >= m >= N. Indices are 1-based, seq[0] is x_1.
inline bool is_cauchy(std::span<const Vector> seq, const RNSpace& space, double eps, double lambda,
                      std::size_t N) {
  detail::check_limit_args(seq.size(), N, eps, lambda);
  for (std::size_t m = N - 1; m < seq.size(); ++m) {
    for (std::size_t n = m + 1; n < seq.size(); ++n) {
      if (!(eval(mu(space, seq[n] - seq[m]), eps) > 1.0 - lambda)) return false;
    }
  }
  return true;
}

/// Finite-sequence convergence test: mu_{x_n - limit}(eps) > 1 - lambda for
/// all n >= N (1-based).
inline bool converges_to(std::span<const Vector> seq, const Vector& limit, const RNSpace& space,
                         double eps, double lambda, std::size_t N) {
  detail::check_limit_args(seq.size(), N, eps, lambda);
  for (std::size_t n = N - 1; n < seq.size(); ++n) {
    if (!(eval(mu(space, seq[n] - limit), eps) > 1.0 - lambda)) return false;
  }
  return true;
}

}  // namespace rnstab

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "rnstab/parallel.hpp"
#include "rnstab/solver.hpp"

using namespace rnstab;

namespace {

const Spectrum kSpec = spectrum_from_roots(0.5, -1.0 / 3.0);

Scenario noiseless(Vector c1, Vector c2, double anchor = 0.0) {
  return make_scenario(anchor, kSpec, std::move(c1), std::move(c2), 1, 0.0);
}

Scenario noisy(std::uint64_t seed, double scale = 0.4, double anchor = 0.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return make_scenario(anchor, kSpec, Vector{u(rng), u(rng)}, Vector{u(rng), u(rng)}, seed, scale);
}

const Vector e1 = Vector::unit(2, 0);
const Vector zero2 = Vector(2);

}  // namespace

TEST_CASE("eval_f on pure geometric solutions") {
  const Scenario a = noiseless(e1, zero2, 1.5);
  CHECK(eval_f(a, 4.5) == (1.0 / 8.0) * e1);
  const Scenario b = noiseless(zero2, e1, 1.5);
  const Vector v = eval_f(b, 3.5);
  CHECK(v[0] == Catch::Approx(1.0 / 9.0).margin(1e-16));
  CHECK(v[1] == 0.0);
  CHECK_THROWS_AS(eval_f(a, 2.0), UsageError);
}

TEST_CASE("noise is bounded by its amplitude and deterministic") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Scenario sc = noisy(seed);
    for (std::int64_t k = -40; k <= 40; ++k) {
      const Vector n1 = noise_at(sc, k);
      CHECK(norm(n1) <= noise_amplitude(sc, k));
      CHECK(norm(n1) <= envelope(lattice_point(sc, k)));
      CHECK(n1 == noise_at(sc, k));
      CHECK(eval_f(sc, lattice_point(sc, k)) == f_at(sc, k));
    }
  }
  // Different seeds give different draws.
  CHECK_FALSE(noise_at(noisy(1), 0) == noise_at(noisy(2), 0));
  // Odd dimensions are covered too.
  const Vector odd = noise_vector(7, 3, 3, 1.0);
  CHECK(odd.dim() == 3);
  CHECK(norm(odd) < 1.0);
}

TEST_CASE("residual of the scenario stays under the certified bound") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Scenario sc = noisy(seed);
    for (std::int64_t k = -5; k <= 5; ++k) {
      const double r = norm(residual_at(sc, kSpec.coefficients(), k));
      CHECK(r <= residual_bound(sc, k));
      CHECK(r <= envelope(lattice_point(sc, k)));
    }
  }
}

TEST_CASE("g_n and h_n") {
  const Scenario sc = noisy(3);
  const double x = 2.0;
  CHECK(g_n(sc, kSpec, x, 0) == eval_f(sc, x) - kSpec.beta * eval_f(sc, x - 1));
  CHECK(h_n(sc, kSpec, x, 0) == eval_f(sc, x) - kSpec.alpha * eval_f(sc, x - 1));

  // Pure alpha solution: g_n(x0 + 1) = (alpha - beta) e1 = 5/6 e1 for all n.
  const Scenario pa = noiseless(e1, zero2);
  double lo = 1e300, hi = -1e300;
  for (std::size_t n = 0; n <= 10; ++n) {
    const Vector g = g_n(pa, kSpec, 1.0, n);
    CHECK(g[1] == 0.0);
    lo = std::min(lo, g[0]);
    hi = std::max(hi, g[0]);
    CHECK(norm(h_n(pa, kSpec, 1.0, n)) <= 1e-15 * std::pow(2.0, n));
  }
  CHECK(hi - lo < 1e-12);
  CHECK(lo == Catch::Approx(5.0 / 6.0).margin(1e-12));

  // Pure beta solution: f(x-n) - beta f(x-n-1) vanishes, so g_n is zero up to
  // rounding, and h_n = (beta - alpha) beta^(k-1) is constant.
  const Scenario pb = noiseless(zero2, e1);
  const Vector h0 = h_n(pb, kSpec, 1.0, 0);
  CHECK(h0[0] == Catch::Approx(kSpec.beta - kSpec.alpha).margin(1e-15));
  for (std::size_t n = 0; n < 10; ++n) {
    CHECK(norm(g_n(pb, kSpec, 1.0, n)) <= 4e-16 * std::pow(1.5, static_cast<double>(n)));
    CHECK(norm(h_n(pb, kSpec, 1.0, n) - h0) <= 1e-12);
  }
}

TEST_CASE("one-step gap obeys the geometric envelope") {
  // Far from the origin the noise envelope dominates double rounding of the
  // exact part, so the comparison is meaningful for n up to 30.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Scenario sc = noisy(seed, 0.4, 64.25);
    for (std::int64_t k : {-10, 0, 10}) {
      const double x = lattice_point(sc, k);
      for (std::size_t n = 0; n < 30; ++n) {
        const double gap = norm(g_n(sc, kSpec, x, n) - g_n(sc, kSpec, x, n + 1));
        const double env = std::pow(0.5, static_cast<double>(n)) * envelope(x - static_cast<double>(n));
        CHECK(gap <= env);
      }
    }
  }
}

TEST_CASE("truncation picks the smallest certified N") {
  const TruncationPolicy pol;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Scenario sc = noisy(seed);
    for (std::int64_t k = -5; k <= 5; ++k) {
      const double x = lattice_point(sc, k);
      for (double lead : {kSpec.alpha, kSpec.beta}) {
        const LimitResult r = lead == kSpec.alpha ? limit_G(sc, kSpec, x, pol) : limit_H(sc, kSpec, x, pol);
        const double rate = std::abs(lead) / std::numbers::e;
        const double R = residual_bound(sc, k);
        auto tail = [&](double n) { return R * std::pow(rate, n) / (1.0 - rate); };
        CHECK(r.truncation <= pol.target_tail);
        CHECK(tail(static_cast<double>(r.terms)) <= pol.target_tail * (1.0 + 1e-12));
        if (r.terms > 0) CHECK(tail(static_cast<double>(r.terms) - 1.0) > pol.target_tail * (1.0 - 1e-12));
        const double predicted = std::ceil(std::log(pol.target_tail * (1.0 - rate) / R) / std::log(rate));
        CHECK(std::abs(static_cast<double>(r.terms) - std::max(0.0, predicted)) <= 1.0);
        CHECK(r.bound == r.truncation + r.rounding);
      }
    }
  }
}

TEST_CASE("limits of noiseless scenarios") {
  const Scenario pa = noiseless(e1, zero2);
  const LimitResult G = limit_G(pa, kSpec, 2.0);
  CHECK(G.terms == 0);
  CHECK(G.value == g_n(pa, kSpec, 2.0, 0));
  CHECK(G.truncation == 0.0);
  CHECK(G.truncation <= TruncationPolicy{}.target_tail);

  const Scenario pb = noiseless(zero2, e1);
  const LimitResult H = limit_H(pb, kSpec, 2.0);
  CHECK(H.terms == 0);
  CHECK(H.value == h_n(pb, kSpec, 2.0, 0));
}

TEST_CASE("truncation failure carries the achieved bound") {
  const Scenario sc = noisy(5);
  const TruncationPolicy tight{1e-300, 1};
  try {
    limit_G(sc, kSpec, 0.0, tight);
    FAIL("expected TruncationFailure");
  } catch (const TruncationFailure& e) {
    CHECK(e.achieved_bound() > 1e-300);
    CHECK(std::isfinite(e.achieved_bound()));
  }
  CHECK_THROWS_AS(limit_H(sc, kSpec, 0.0, tight), TruncationFailure);
  CHECK_THROWS_AS(construct_F(sc, kSpec, 0.0, tight), TruncationFailure);
  CHECK_THROWS_AS(limit_G(sc, kSpec, 0.0, TruncationPolicy{0.0, 10}), DomainError);
}

TEST_CASE("construct_F reproduces exact solutions") {
  for (const auto& [c1, c2] : {std::pair{e1, zero2}, std::pair{zero2, e1},
                               std::pair{Vector{1.0, -2.0}, Vector{0.5, 3.0}}}) {
    const Scenario sc = noiseless(c1, c2);
    for (std::int64_t k = -5; k <= 5; ++k) {
      const double x = lattice_point(sc, k);
      const SolutionPoint F = construct_F(sc, kSpec, x);
      CHECK(norm(F.value - eval_f(sc, x)) <= F.error_bound);
      CHECK(F.error_bound <= 1e-10);
    }
  }
}

TEST_CASE("constructed F solves the recurrence on noisy scenarios") {
  const Coefficients c = kSpec.coefficients();
  const double prop = 1.0 + std::abs(c.p) + std::abs(c.q);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Scenario sc = noisy(seed);
    std::vector<SolutionPoint> F;
    for (std::int64_t k = -5; k <= 5; ++k) F.push_back(construct_F(sc, kSpec, lattice_point(sc, k)));
    for (std::size_t i = 2; i < F.size(); ++i) {
      const double eb = std::max({F[i].error_bound, F[i - 1].error_bound, F[i - 2].error_bound});
      const double res = recurrence_residual(F[i].value, F[i - 1].value, F[i - 2].value, c);
      CHECK(res <= prop * eb);
      CHECK(res <= 10.0 * eb);
      CHECK(res <= 1e-8);
    }
  }
}

TEST_CASE("recurrence_residual") {
  const Coefficients c = kSpec.coefficients();
  for (int n = 2; n < 20; ++n) {
    const double a = kSpec.alpha;
    const Vector t0 = std::pow(a, n) * e1, t1 = std::pow(a, n - 1) * e1, t2 = std::pow(a, n - 2) * e1;
    CHECK(recurrence_residual(t0, t1, t2, c) <= 1e-14);
  }
  CHECK(recurrence_residual(Vector{1.0, 2.0}, Vector{-0.3, 0.7}, Vector{5.0, 1.0}, c) > 0.1);
}

TEST_CASE("lattice helpers") {
  const Scenario sc = noiseless(e1, zero2, 0.25);
  CHECK(lattice_index(sc, 3.25) == 3);
  CHECK(lattice_index(sc, -1.75) == -2);
  CHECK_THROWS_AS(lattice_index(sc, 0.5), UsageError);
  CHECK_THROWS_AS(make_scenario(0.0, kSpec, e1, Vector{1.0}, 1, 0.0), UsageError);
  CHECK_THROWS_AS(make_scenario(0.0, kSpec, e1, e1, 1, -1.0), DomainError);
}

TEST_CASE("parallel_map keeps order and the lowest failing index") {
  const auto sq = parallel_map(100, 4, [](std::size_t i) { return i * i; });
  for (std::size_t i = 0; i < 100; ++i) CHECK(sq[i] == i * i);
  try {
    parallel_map(50, 4, [](std::size_t i) -> int {
      if (i == 13 || i == 30) throw std::runtime_error(std::to_string(i));
      return 0;
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "13");
  }
  CHECK(parallel_map(0, 3, [](std::size_t) { return 1; }).empty());
}

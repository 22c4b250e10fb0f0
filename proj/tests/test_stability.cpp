#include <catch2/catch_amalgamated.hpp>

#include <boost/rational.hpp>
#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "rnstab/stability.hpp"

using namespace rnstab;
using Catch::Approx;

namespace {

using Q = boost::rational<long long>;

Q abs_q(Q v) { return v < 0 ? -v : v; }

Q gamma_exact(Q a, Q b) {
  const Q aa = abs_q(a), ab = abs_q(b);
  return abs_q(a - b) * (1 - aa) * (1 - ab) / (aa + ab - 2 * aa * ab);
}

double to_d(Q v) { return boost::rational_cast<double>(v); }

}  // namespace

TEST_CASE("gamma against exact rational arithmetic") {
  CHECK(gamma_exact(Q(1, 2), Q(-1, 3)) == Q(5, 9));
  CHECK(gamma_exact(Q(9, 10), Q(1, 10)) == Q(18, 205));
  CHECK(std::abs(gamma_of(0.5, -1.0 / 3.0) - to_d(Q(5, 9))) <= 1e-15);
  CHECK(std::abs(gamma_of(0.9, 0.1) - 0.072 / 0.82) <= 1e-15);
  CHECK(std::abs(gamma_of(0.9, 0.1) - to_d(Q(18, 205))) <= 1e-15);
}

TEST_CASE("gamma tends to 1 - t as beta approaches -t") {
  // |beta| = |alpha| itself lies outside the region; the closed form
  // simplifies to 1 - t there and gamma approaches it from inside.
  CHECK_THROWS_AS(gamma_of(0.25, -0.25), OutsideValidityRegion);
  CHECK(gamma_of(0.25, -0.25 * (1.0 - 1e-12)) == Approx(0.75).margin(1e-11));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int i = 0; i < 1000; ++i) {
    const double t = u(rng);
    CHECK(gamma_of(t, -t * (1.0 - 1e-12)) == Approx(1.0 - t).margin(1e-10));
  }
}

TEST_CASE("gamma region errors") {
  CHECK_THROWS_AS(gamma_of(1.0, 0.5), OutsideValidityRegion);
  CHECK_THROWS_AS(gamma_of(0.5, 0.0), OutsideValidityRegion);
  CHECK_THROWS_AS(gamma_of(0.5, -0.5), OutsideValidityRegion);
  CHECK_THROWS_AS(gamma_of(0.3, 0.5), OutsideValidityRegion);
  CHECK_THROWS_AS(gamma_of(std::nan(""), 0.1), OutsideValidityRegion);
}

TEST_CASE("solve_characteristic") {
  const Spectrum s = solve_characteristic({1.0 / 6.0, -1.0 / 6.0});
  const auto [r1, r2] = oracle::quadratic(1.0 / 6.0, -1.0 / 6.0);
  CHECK(s.alpha == Approx(0.5).margin(1e-15));
  CHECK(s.beta == Approx(-1.0 / 3.0).margin(1e-15));
  CHECK(std::abs(s.alpha - r1) <= 1e-15);
  CHECK(std::abs(s.beta - r2) <= 1e-15);
  for (double r : {s.alpha, s.beta}) CHECK(std::abs(r * r - s.p * r + s.q) <= 1e-14);
  CHECK(s.gamma == Approx(5.0 / 9.0).margin(1e-15));

  CHECK_THROWS_AS(solve_characteristic({1.0, -1.0}), OutsideValidityRegion);
  CHECK_THROWS_AS(solve_characteristic({2.0, 1.0}), NonrealOrRepeatedRoots);
  CHECK_THROWS_AS(solve_characteristic({0.1, 1.0}), NonrealOrRepeatedRoots);
  CHECK_THROWS_AS(solve_characteristic({0.5, 0.0}), DegenerateEquation);
  CHECK_THROWS_AS(solve_characteristic({0.0, -0.04}), OutsideValidityRegion);  // roots +-0.2
  CHECK_THROWS_AS(solve_characteristic({std::nan(""), 0.1}), DomainError);
  // All three validity errors share a base.
  CHECK_THROWS_AS(solve_characteristic({2.0, 1.0}), ValidityError);
}

TEST_CASE("from_roots") {
  const Coefficients c = from_roots(0.5, -1.0 / 3.0);
  CHECK(c.p == Approx(1.0 / 6.0).margin(1e-16));
  CHECK(c.q == Approx(-1.0 / 6.0).margin(1e-16));
  const Coefficients d = from_roots(0.9, 0.1);
  CHECK(d.p == Approx(1.0).margin(1e-15));
  CHECK(d.q == Approx(0.09).margin(1e-16));
  CHECK_THROWS_AS(from_roots(1.2, 0.1), OutsideValidityRegion);
}

TEST_CASE("round trips and gamma positivity on sampled admissible pairs") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> mag(1e-3, 0.999);
  std::uniform_int_distribution<int> sign(0, 1);
  double lo = 1.0, hi = 0.0;
  int n = 0;
  while (n < 10000) {
    double a = mag(rng), b = mag(rng);
    if (a == b) continue;
    if (a < b) std::swap(a, b);
    if (sign(rng)) a = -a;
    if (sign(rng)) b = -b;
    ++n;
    const Spectrum s = spectrum_from_roots(a, b);
    CHECK(s.gamma > 0.0);
    lo = std::min(lo, s.gamma);
    hi = std::max(hi, s.gamma);
    CHECK(std::abs(s.alpha + s.beta - s.p) <= 1e-12);
    CHECK(std::abs(s.alpha * s.beta - s.q) <= 1e-12);

    const double rel_gap = (std::abs(a) - std::abs(b)) / std::abs(a);
    if (rel_gap > 1e-3) {
      const Spectrum back = solve_characteristic(s.coefficients());
      CHECK(back.alpha == Approx(a).margin(1e-12 / rel_gap));
      CHECK(back.beta == Approx(b).margin(1e-12 / rel_gap));
      const Coefficients c = from_roots(back.alpha, back.beta);
      CHECK(std::abs(c.p - s.p) <= 1e-12);
      CHECK(std::abs(c.q - s.q) <= 1e-12);
    }
  }
  CHECK(lo < hi);
}

TEST_CASE("gamma decreases to 0 as |alpha| approaches 1") {
  for (double beta : {-0.5, -0.1, 0.05, 0.3}) {
    for (double sgn : {1.0, -1.0}) {
      double prev = std::numeric_limits<double>::infinity();
      for (double gap = 0.1; gap > 1e-7; gap /= 2.0) {
        const double a = sgn * (1.0 - gap);
        const double g = gamma_of(a, beta);
        CHECK(g < prev);
        prev = g;
      }
      CHECK(prev < 1e-6);
    }
  }
}

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

#include "rnstab/tnorm.hpp"

using namespace rnstab;

TEST_CASE("apply") {
  CHECK(apply(TNorm::Minimum, 0.3, 0.7) == 0.3);
  CHECK(apply(TNorm::Product, 0.5, 0.5) == 0.25);
  for (double a : {0.0, 0.1, 0.37, 0.5, 0.99, 1.0}) {
    CHECK(apply(TNorm::Minimum, a, 1.0) == a);
    CHECK(apply(TNorm::Product, a, 1.0) == a);
  }
  CHECK_THROWS_AS(apply(TNorm::Minimum, -0.1, 0.5), DomainError);
  CHECK_THROWS_AS(apply(TNorm::Product, 0.5, 1.5), DomainError);
}

TEST_CASE("fold") {
  CHECK(fold(TNorm::Minimum, std::vector<double>{}) == 1.0);
  CHECK(fold(TNorm::Product, std::vector<double>{}) == 1.0);
  CHECK(fold(TNorm::Minimum, std::vector<double>{0.4, 0.7, 0.2}) == 0.2);
  CHECK(fold(TNorm::Product, std::vector<double>{0.5, 0.5, 0.5}) == 0.125);
  CHECK_THROWS_AS(fold(TNorm::Minimum, std::vector<double>{0.4, 2.0}), DomainError);
}

TEST_CASE("fold of Minimum is the list minimum and permutation invariant") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> len(1, 12);
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<double> v(static_cast<std::size_t>(len(rng)));
    for (double& x : v) x = u(rng);
    const double m = *std::min_element(v.begin(), v.end());
    CHECK(fold(TNorm::Minimum, v) == m);
    std::shuffle(v.begin(), v.end(), rng);
    CHECK(fold(TNorm::Minimum, v) == m);
  }
}

TEST_CASE("axiom harness passes for both t-norms") {
  CHECK(check_tnorm_axioms(TNorm::Minimum, 5000, 1, 0.0).empty());
  CHECK(check_tnorm_axioms(TNorm::Product, 5000, 1, 4.0 * std::numeric_limits<double>::epsilon())
            .empty());
}

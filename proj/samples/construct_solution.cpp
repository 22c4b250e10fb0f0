// Builds the exact solution F from a perturbed f and prints |f - F| against
// the guaranteed bound e^x / gamma at a few lattice points.

#include <cstdio>

#include "rnstab/rnstab.hpp"

int main() {
  using namespace rnstab;
  const Spectrum spec = solve_characteristic({1.0 / 6.0, -1.0 / 6.0});
  std::printf("alpha=%.6f beta=%.6f gamma=%.6f\n", spec.alpha, spec.beta, spec.gamma);

  const Scenario sc = make_scenario(0.0, spec, Vector{1.0, -0.5}, Vector{0.25, 2.0}, 42, 0.4);
  for (int k = -3; k <= 3; ++k) {
    const double x = lattice_point(sc, k);
    const SolutionPoint F = construct_F(sc, spec, x);
    const double dev = norm(eval_f(sc, x) - F.value);
    std::printf("x=%+d  |f-F|=%.3e  bound=%.3e  (N_G=%zu N_H=%zu, error<=%.1e)\n", k, dev,
                envelope(x) / spec.gamma, F.G.terms, F.H.terms, F.error_bound);
  }
}

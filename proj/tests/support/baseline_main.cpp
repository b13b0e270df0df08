// Regenerates the frozen calibration baseline: finite-difference projected
// descent with a 50000-evaluation budget on the seeded noisy dataset.

#include "oracles.hpp"

#include <trfds/predprey.hpp>

#include <cstdio>
#include <cstdlib>

using namespace trfds;

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1;
  const long budget = argc > 2 ? std::strtol(argv[2], nullptr, 10) : 50000;

  const PredPreyDataset dataset = make_dataset(PredPreyParams::truth(), seed, 10.0);
  Problem problem = make_calibration_problem(dataset, PredPreyParams::initial_guess().to_vector(),
                                             PredPreyParams::lower_bounds(),
                                             PredPreyParams::upper_bounds());
  const double threshold = testsupport::fd_projected_descent(problem, budget);
  std::printf("seed=%llu budget=%ld baseline_f=%.17g\n",
              static_cast<unsigned long long>(seed), budget, threshold);
  return 0;
}

#include "nnhash/chaos.hpp"

#include <random>

namespace nnhash {

double divergence_probe(double delta, ChaosParam q, int t, std::uint64_t trials,
                        std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("divergence_probe needs at least one trial");
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw std::invalid_argument("divergence_probe delta must lie in [0,1)");
  }
  std::mt19937_64 rng(seed);
  std::uint64_t diverged = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    // 53 random bits -> uniform on [0,1); avoids the implementation-defined
    // std::uniform_real_distribution so probes repeat across standard libraries.
    const double x = static_cast<double>(rng() >> 11) * 0x1p-53;
    const double a = map_iter(x, q, t);
    const double b = map_iter(mod1(x + delta), q, t);
    if (std::fabs(a - b) > 0.1) ++diverged;
  }
  return static_cast<double>(diverged) / static_cast<double>(trials);
}

}  // namespace nnhash

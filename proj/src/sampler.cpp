#include "mcplan/sampler.hpp"

#include <cmath>

namespace mcplan {

CostVector sample_actual_cost(const CostVector& c_lo,
                              const EnvironmentProfile& profile,
                              RngEngine& rng) {
  CostVector actual;
  for (Resource r : kAllResources) {
    const double sigma =
        std::isinf(profile.sigma_divisor) ? 0.0
                                          : c_lo[r] / profile.sigma_divisor;
    // The normal draw happens even when sigma is zero so the stream position
    // does not depend on the profile.
    const double z = rng.normal();
    actual[r] = c_lo[r] / 2.0 + std::abs(z) * sigma;
  }
  return actual;
}

}  // namespace mcplan

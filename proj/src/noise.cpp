#include "graphfilt/noise.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace graphfilt {

Signal add_noise(const Signal& x, const NoiseSpec& spec) {
  if (!(spec.variance >= 0.0) || !std::isfinite(spec.variance))
    throw ValidationError("noise variance must be >= 0");
  if (!std::isfinite(spec.mean))
    throw ValidationError("noise mean must be finite");

  std::mt19937_64 gen(spec.seed);
  const double sigma = std::sqrt(spec.variance);
  const double two_pi = 2.0 * std::acos(-1.0);

  Signal out = Signal::uninitialized(x.topology_ptr());
  const std::size_t n = x.size();
  // Box-Muller pairs; u1 in (0,1], u2 in [0,1)
  for (std::size_t i = 0; i < n; i += 2) {
    const double u1 = (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    const double rad = std::sqrt(-2.0 * std::log(u1));
    out[i] = x[i] + spec.mean + sigma * (rad * std::cos(two_pi * u2));
    if (i + 1 < n)
      out[i + 1] = x[i + 1] + spec.mean + sigma * (rad * std::sin(two_pi * u2));
  }
  if (spec.clip)
    for (double& v : out.values()) v = std::clamp(v, 0.0, 1.0);
  return out;
}

}  // namespace graphfilt

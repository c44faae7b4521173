#pragma once

#include <cstdint>

#include "graphfilt/signal.hpp"

namespace graphfilt {

/// Additive Gaussian noise specification. Variates come from a seeded
/// MT19937-64 stream through the Box-Muller transform, so outputs are
/// identical for a given seed on every platform. With clip set, results are
/// clamped to [0,1] after the noise is added.
struct NoiseSpec {
  double mean = 0.0;
  double variance = 0.01;
  std::uint64_t seed = 0;
  bool clip = true;
};

Signal add_noise(const Signal& x, const NoiseSpec& spec);

}  // namespace graphfilt

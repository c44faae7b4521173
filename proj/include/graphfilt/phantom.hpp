#pragma once

#include "graphfilt/signal.hpp"

namespace graphfilt {

/// n x n Modified Shepp-Logan head phantom on a Grid2D. Ten superposed
/// ellipses with the standard parameter table; pixel centers are mapped to
/// [-1,1]^2 and point-sampled (inclusive ellipse boundary, no
/// anti-aliasing). Values lie in [0,1]; pixels outside every ellipse are 0.
Signal phantom(int n);

}  // namespace graphfilt

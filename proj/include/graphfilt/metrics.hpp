#pragma once

#include "graphfilt/signal.hpp"

namespace graphfilt {

/// Mean squared error over all samples (deterministic reduction order).
double mse(const Signal& a, const Signal& b);

/// Peak signal-to-noise ratio 10*log10(peak^2 / MSE) over the full signal.
/// Returns +infinity when the signals are identical. peak defaults to 1.0,
/// the nominal intensity range.
double psnr(const Signal& a, const Signal& b, double peak = 1.0);

}  // namespace graphfilt

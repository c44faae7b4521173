#include "graphfilt/metrics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "graphfilt/kernels/kernels.hpp"

namespace graphfilt {

double mse(const Signal& a, const Signal& b) {
  if (a.size() != b.size())
    throw ValidationError("mse: length mismatch (" + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  if (a.size() == 0) throw ValidationError("mse: empty signals");
  return kernels::active().sum_sq_diff(a.data(), b.data(), a.size()) /
         static_cast<double>(a.size());
}

double psnr(const Signal& a, const Signal& b, double peak) {
  if (!(peak > 0.0) || !std::isfinite(peak))
    throw ValidationError("psnr: peak must be positive");
  const double err = mse(a, b);
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / err);
}

}  // namespace graphfilt

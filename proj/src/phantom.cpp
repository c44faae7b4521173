#include "graphfilt/phantom.hpp"

#include <algorithm>
#include <cmath>

namespace graphfilt {

namespace {

// amplitude, semi-axis a, semi-axis b, center x0, center y0, rotation (deg)
constexpr double kEllipses[10][6] = {
    {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
    {-0.8, 0.6624, 0.8740, 0.0, -0.0184, 0.0},
    {-0.2, 0.1100, 0.3100, 0.22, 0.0, -18.0},
    {-0.2, 0.1600, 0.4100, -0.22, 0.0, 18.0},
    {0.1, 0.2100, 0.2500, 0.0, 0.35, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, 0.1, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, -0.1, 0.0},
    {0.1, 0.0460, 0.0230, -0.08, -0.605, 0.0},
    {0.1, 0.0230, 0.0230, 0.0, -0.606, 0.0},
    {0.1, 0.0230, 0.0460, 0.06, -0.605, 0.0},
};

}  // namespace

Signal phantom(int n) {
  if (n < 1) throw ValidationError("phantom size must be >= 1");
  Signal img = Signal::zeros(make_grid(n, n));
  const double half = (n - 1) / 2.0;  // pixel centers span [-1,1]; n=1 samples the center
  const double deg2rad = std::acos(-1.0) / 180.0;

  for (const auto& e : kEllipses) {
    const double amp = e[0];
    const double asq = e[1] * e[1];
    const double bsq = e[2] * e[2];
    const double x0 = e[3];
    const double y0 = e[4];
    const double cosp = std::cos(e[5] * deg2rad);
    const double sinp = std::sin(e[5] * deg2rad);
    for (int r = 0; r < n; ++r) {
      const double y = (n > 1 ? (half - r) / half : 0.0) - y0;
      double* row = img.data() + static_cast<std::size_t>(r) * n;
      for (int c = 0; c < n; ++c) {
        const double x = (n > 1 ? (c - half) / half : 0.0) - x0;
        const double u = x * cosp + y * sinp;
        const double v = y * cosp - x * sinp;
        if (u * u / asq + v * v / bsq <= 1.0) row[c] += amp;
      }
    }
  }
  // amplitude sums like 1 - 0.8 - 0.2 land a few ulp outside [0,1]
  for (double& v : img.values()) v = std::clamp(v, 0.0, 1.0);
  return img;
}

}  // namespace graphfilt

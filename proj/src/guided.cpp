#include "graphfilt/guided.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "graphfilt/kernels/kernels.hpp"

namespace graphfilt {

namespace {

// Truncated-window box mean: horizontal sliding sums per row, then vertical
// running sums over rows, then division by the in-image pixel count. The
// per-column recurrences are identical in every kernel variant, so results
// do not depend on the selected variant.
void box_mean(const double* src, double* dst, int rows, int cols, int w,
              std::vector<double>& hsum, std::vector<double>& vsum) {
  const int lo = w / 2;          // extra pixel goes up/left for even widths
  const int hi = w - 1 - lo;
  const auto& kern = kernels::active();

  hsum.resize(static_cast<std::size_t>(rows) * cols);
  vsum.assign(cols, 0.0);

  for (int r = 0; r < rows; ++r) {
    const double* s = src + static_cast<std::size_t>(r) * cols;
    double* h = hsum.data() + static_cast<std::size_t>(r) * cols;
    double run = 0.0;
    for (int c = 0; c <= std::min(hi, cols - 1); ++c) run += s[c];
    h[0] = run;
    for (int c = 1; c < cols; ++c) {
      if (c + hi < cols) run += s[c + hi];
      if (c - 1 - lo >= 0) run -= s[c - 1 - lo];
      h[c] = run;
    }
  }

  for (int r = 0; r <= std::min(hi, rows - 1); ++r)
    kern.vadd_inplace(hsum.data() + static_cast<std::size_t>(r) * cols, vsum.data(), cols);

  const int c_int_lo = std::min(lo, cols);
  const int c_int_hi = std::max(c_int_lo, cols - hi);
  for (int r = 0; r < rows; ++r) {
    if (r > 0) {
      if (r + hi < rows)
        kern.vadd_inplace(hsum.data() + static_cast<std::size_t>(r + hi) * cols,
                          vsum.data(), cols);
      if (r - 1 - lo >= 0)
        kern.vsub_inplace(hsum.data() + static_cast<std::size_t>(r - 1 - lo) * cols,
                          vsum.data(), cols);
    }
    const int cnt_r = std::min(r + hi, rows - 1) - std::max(r - lo, 0) + 1;
    double* d = dst + static_cast<std::size_t>(r) * cols;
    for (int c = 0; c < c_int_lo; ++c) {
      const int cnt_c = std::min(c + hi, cols - 1) - std::max(c - lo, 0) + 1;
      d[c] = vsum[c] / (static_cast<double>(cnt_r) * cnt_c);
    }
    if (c_int_lo < c_int_hi)
      kern.scale(vsum.data() + c_int_lo, 1.0 / (static_cast<double>(cnt_r) * w),
                 d + c_int_lo, static_cast<std::size_t>(c_int_hi - c_int_lo));
    for (int c = c_int_hi; c < cols; ++c) {
      const int cnt_c = std::min(c + hi, cols - 1) - std::max(c - lo, 0) + 1;
      d[c] = vsum[c] / (static_cast<double>(cnt_r) * cnt_c);
    }
  }
}

const Grid2D& require_grid(const Topology& topo, const char* who) {
  const Grid2D* grid = std::get_if<Grid2D>(&topo);
  if (!grid) throw ValidationError(std::string(who) + " requires a 2D grid topology");
  return *grid;
}

}  // namespace

void validate(const GuidedParams& params) {
  if (params.window_width < 1)
    throw ValidationError("guided window width must be >= 1, got " +
                          std::to_string(params.window_width));
  if (!(params.epsilon > 0.0) || !std::isfinite(params.epsilon))
    throw ValidationError("guided epsilon must be positive");
}

Signal mean_filter(const Signal& x, int window_width) {
  const Grid2D& grid = require_grid(x.topology(), "mean_filter");
  if (window_width < 1)
    throw ValidationError("mean_filter window width must be >= 1");
  Signal out = Signal::uninitialized(x.topology_ptr());
  std::vector<double> hsum, vsum;
  box_mean(x.data(), out.data(), grid.rows, grid.cols, window_width, hsum, vsum);
  return out;
}

GuidedFilter::GuidedFilter(std::shared_ptr<const Topology> topo, GuidedParams params)
    : topo_(std::move(topo)), params_(params) {
  if (!topo_) throw ValidationError("guided: topology required");
  validate(params_);
  require_grid(*topo_, "guided filter");
}

void GuidedFilter::apply_w(const Signal& g, const Signal& v, Signal& out) const {
  check_guidance_input(g, v);
  if (out.size() != g.size()) out = Signal::uninitialized(topo_);
  const Grid2D& grid = std::get<Grid2D>(*topo_);
  const int rows = grid.rows;
  const int cols = grid.cols;
  const std::size_t n = g.size();
  const int w = params_.window_width;
  const auto& kern = kernels::active();

  std::vector<double> hsum, vsum;
  std::vector<double> mean_g(n), mean_x(n), corr_g(n), corr_gx(n), t(n);

  box_mean(g.data(), mean_g.data(), rows, cols, w, hsum, vsum);
  box_mean(v.data(), mean_x.data(), rows, cols, w, hsum, vsum);
  kern.vmul(g.data(), g.data(), t.data(), n);
  box_mean(t.data(), corr_g.data(), rows, cols, w, hsum, vsum);
  kern.vmul(g.data(), v.data(), t.data(), n);
  box_mean(t.data(), corr_gx.data(), rows, cols, w, hsum, vsum);

  kern.sub_mul(corr_g.data(), mean_g.data(), mean_g.data(), corr_g.data(), n);    // var_g
  kern.sub_mul(corr_gx.data(), mean_g.data(), mean_x.data(), corr_gx.data(), n);  // cov_gx
  kern.div_shift(corr_gx.data(), corr_g.data(), params_.epsilon, t.data(), n);    // a
  kern.sub_mul(mean_x.data(), t.data(), mean_g.data(), mean_x.data(), n);         // b

  box_mean(t.data(), corr_g.data(), rows, cols, w, hsum, vsum);        // mean_a
  box_mean(mean_x.data(), corr_gx.data(), rows, cols, w, hsum, vsum);  // mean_b
  kern.mul_add(corr_g.data(), g.data(), corr_gx.data(), out.data(), n);
}

void GuidedFilter::degree(const Signal& g, Signal& out) const {
  check_guidance_input(g, g);
  if (out.size() != g.size()) out = Signal::uninitialized(topo_);
  std::fill(out.values().begin(), out.values().end(), 1.0);
}

void GuidedFilter::apply_w_degree(const Signal& g, const Signal& v, Signal& wv,
                                  Signal& deg) const {
  apply_w(g, v, wv);
  if (deg.size() != g.size()) deg = Signal::uninitialized(topo_);
  std::fill(deg.values().begin(), deg.values().end(), 1.0);
}

}  // namespace graphfilt

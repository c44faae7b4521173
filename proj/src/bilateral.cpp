#include "graphfilt/bilateral.hpp"

#include <cmath>
#include <string>

#include "graphfilt/kernels/kernels.hpp"

namespace graphfilt {

void validate(const BilateralParams& params) {
  if (params.window_width < 1 || params.window_width % 2 == 0)
    throw ValidationError("bilateral window width must be odd and >= 1, got " +
                          std::to_string(params.window_width));
  if (!(params.sigma_d > 0.0) || !std::isfinite(params.sigma_d))
    throw ValidationError("bilateral sigma_d must be positive");
  if (!(params.sigma_r > 0.0) || !std::isfinite(params.sigma_r))
    throw ValidationError("bilateral sigma_r must be positive");
}

double bilateral_weight(double dist, double dg, const BilateralParams& params) {
  const double sd = dist * dist / (2.0 * params.sigma_d * params.sigma_d);
  const double sr = dg * dg / (2.0 * params.sigma_r * params.sigma_r);
  return std::exp(-(sd + sr));
}

BilateralFilter::BilateralFilter(std::shared_ptr<const Topology> topo,
                                 BilateralParams params)
    : topo_(std::move(topo)), params_(params) {
  if (!topo_) throw ValidationError("bilateral: topology required");
  validate(params_);
  if (const Grid2D* grid = std::get_if<Grid2D>(topo_.get())) {
    const int rad = params_.window_width / 2;
    const double inv_two_sd2 = 1.0 / (2.0 * params_.sigma_d * params_.sigma_d);
    for (int dy = -rad; dy <= rad; ++dy) {
      for (int dx = -rad; dx <= rad; ++dx) {
        offsets_.push_back(static_cast<std::ptrdiff_t>(dy) * grid->cols + dx);
        off_dy_.push_back(dy);
        off_dx_.push_back(dx);
        neg_spatial_.push_back(-(static_cast<double>(dy) * dy + static_cast<double>(dx) * dx) *
                               inv_two_sd2);
      }
    }
  }
}

void BilateralFilter::apply_w(const Signal& g, const Signal& v, Signal& out) const {
  Signal deg = Signal::uninitialized(topo_);
  apply_w_degree(g, v, out, deg);
}

void BilateralFilter::degree(const Signal& g, Signal& out) const {
  Signal wv = Signal::uninitialized(topo_);
  apply_w_degree(g, g, wv, out);
}

void BilateralFilter::apply_w_degree(const Signal& g, const Signal& v, Signal& wv,
                                     Signal& deg) const {
  check_guidance_input(g, v);
  if (wv.size() != g.size()) wv = Signal::uninitialized(topo_);
  if (deg.size() != g.size()) deg = Signal::uninitialized(topo_);
  if (std::holds_alternative<Grid2D>(*topo_))
    grid_pass(g, v, wv.data(), deg.data());
  else
    graph_pass(g, v, wv.data(), deg.data());
}

void BilateralFilter::grid_pass(const Signal& g, const Signal& v, double* wv,
                                double* deg) const {
  const Grid2D& grid = std::get<Grid2D>(*topo_);
  const int rows = grid.rows;
  const int cols = grid.cols;
  const int rad = params_.window_width / 2;
  const double inv_two_sd2 = 1.0 / (2.0 * params_.sigma_d * params_.sigma_d);
  const double inv_two_sr2 = 1.0 / (2.0 * params_.sigma_r * params_.sigma_r);
  const double* gp = g.data();
  const double* vp = v.data();
  const auto& kern = kernels::active();

  for (int r = 0; r < rows; ++r) {
    const bool full_rows = (r >= rad && r + rad < rows);
    const std::size_t base = static_cast<std::size_t>(r) * cols;
    int c_lo = std::min(rad, cols);
    int c_hi = std::max(c_lo, cols - rad);
    if (!full_rows) {
      c_lo = cols;  // whole row truncated
      c_hi = cols;
    }

    // interior span: full window, kernel path
    if (c_lo < c_hi)
      kern.bilateral_row(gp + base, vp + base, offsets_.data(), neg_spatial_.data(),
                         static_cast<int>(offsets_.size()), inv_two_sr2,
                         static_cast<std::size_t>(c_lo), static_cast<std::size_t>(c_hi),
                         wv + base, deg + base);

    // truncated windows
    for (int c = 0; c < cols; ++c) {
      if (full_rows && c >= c_lo && c < c_hi) continue;
      const double gc = gp[base + c];
      double acc_w = 0.0;
      double acc_wv = 0.0;
      for (int dy = -rad; dy <= rad; ++dy) {
        const int rr = r + dy;
        if (rr < 0 || rr >= rows) continue;
        const std::size_t rbase = static_cast<std::size_t>(rr) * cols;
        for (int dx = -rad; dx <= rad; ++dx) {
          const int cc = c + dx;
          if (cc < 0 || cc >= cols) continue;
          const double dg = gc - gp[rbase + cc];
          const double ns = -(static_cast<double>(dy) * dy + static_cast<double>(dx) * dx) *
                            inv_two_sd2;
          const double w = std::exp(ns - dg * dg * inv_two_sr2);
          acc_w += w;
          acc_wv += w * vp[rbase + cc];
        }
      }
      wv[base + c] = acc_wv;
      deg[base + c] = acc_w;
    }
  }
}

void BilateralFilter::graph_pass(const Signal& g, const Signal& v, double* wv,
                                 double* deg) const {
  const GeneralGraph& graph = std::get<GeneralGraph>(*topo_);
  const double inv_two_sd2 = 1.0 / (2.0 * params_.sigma_d * params_.sigma_d);
  const double inv_two_sr2 = 1.0 / (2.0 * params_.sigma_r * params_.sigma_r);
  const double* gp = g.data();
  const double* vp = v.data();
  const int n = graph.node_count();
  for (int i = 0; i < n; ++i) {
    double acc_w = 1.0;  // self weight exp(0)
    double acc_wv = vp[i];
    const auto nodes = graph.neighbor_nodes(i);
    const auto dists = graph.neighbor_dists(i);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const int j = nodes[k];
      const double dg = gp[i] - gp[j];
      const double w =
          std::exp(-(dists[k] * dists[k] * inv_two_sd2 + dg * dg * inv_two_sr2));
      acc_w += w;
      acc_wv += w * vp[j];
    }
    wv[i] = acc_wv;
    deg[i] = acc_w;
  }
}

}  // namespace graphfilt

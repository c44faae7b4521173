#include "graphfilt/tv.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "graphfilt/kernels/kernels.hpp"

namespace graphfilt {

namespace {

// 2D coefficient field, one value per pixel; the pixel's value weights its
// forward differences (down and right edges).
void coeff_grid2d(const double* g, double* c, int rows, int cols, double eps) {
  const auto& kern = kernels::active();
  for (int r = 0; r < rows; ++r) {
    const double* row = g + static_cast<std::size_t>(r) * cols;
    const double* down = (r + 1 < rows) ? row + cols : row;  // zero dy on last row
    double* out = c + static_cast<std::size_t>(r) * cols;
    if (cols > 1) kern.tv_coeff_row(row, down, eps, 0.125, out, cols - 1);
    const double dy = down[cols - 1] - row[cols - 1];
    out[cols - 1] = 0.125 * eps / (eps + std::abs(dy));
  }
}

// 1D chain along a degenerate (single row or column) grid.
void coeff_chain(const double* g, double* c, int n, double eps) {
  for (int i = 0; i + 1 < n; ++i)
    c[i] = 0.25 * eps / (eps + std::abs(g[i + 1] - g[i]));
  c[n - 1] = 0.25;  // trailing gradient is zero
}

void apply_w_grid2d(const double* v, const double* c, double* out, int rows, int cols) {
  const auto& kern = kernels::active();
  for (int r = 0; r < rows; ++r) {
    const std::size_t base = static_cast<std::size_t>(r) * cols;
    const double* row = v + base;
    const double* up = row - cols;
    const double* down = row + cols;
    const double* c_row = c + base;
    const double* c_up = c_row - cols;
    double* o = out + base;

    if (r > 0 && r + 1 < rows && cols > 2)
      kern.tv_apply_w_row(up, row, down, c_up, c_row, o, 1, cols - 1);

    for (int col = 0; col < cols; ++col) {
      if (r > 0 && r + 1 < rows && col > 0 && col + 1 < cols) continue;
      const double x = row[col];
      double l = 0.0;
      if (r > 0) l += c_up[col] * (x - up[col]);
      if (r + 1 < rows) l += c_row[col] * (x - down[col]);
      if (col > 0) l += c_row[col - 1] * (x - row[col - 1]);
      if (col + 1 < cols) l += c_row[col] * (x - row[col + 1]);
      o[col] = x - l;
    }
  }
}

void apply_w_chain(const double* v, const double* c, double* out, int n) {
  for (int i = 0; i < n; ++i) {
    double l = 0.0;
    if (i > 0) l += c[i - 1] * (v[i] - v[i - 1]);
    if (i + 1 < n) l += c[i] * (v[i] - v[i + 1]);
    out[i] = v[i] - l;
  }
}

std::vector<double> coeff_graph(const GeneralGraph& graph, const double* g, double eps) {
  const auto& edges = graph.edges();
  std::vector<double> c(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!(edges[e].dist > 0.0))
      throw ValidationError("tv filter requires strictly positive edge distances");
    const double grad = std::abs(g[edges[e].j] - g[edges[e].i]) / edges[e].dist;
    c[e] = 0.25 * eps / (eps + grad);
  }
  return c;
}

std::vector<double> edge_weights_graph(const GeneralGraph& graph, const double* g,
                                       double eps) {
  const auto& edges = graph.edges();
  std::vector<double> w = coeff_graph(graph, g, eps);
  for (std::size_t e = 0; e < edges.size(); ++e)
    w[e] /= edges[e].dist * edges[e].dist;
  // keep the smoothing step monotone: weighted node degrees must stay <= 1
  std::vector<double> rowsum(graph.node_count(), 0.0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    rowsum[edges[e].i] += w[e];
    rowsum[edges[e].j] += w[e];
  }
  const double worst = rowsum.empty() ? 0.0
                                      : *std::max_element(rowsum.begin(), rowsum.end());
  if (worst > 1.0)
    for (double& we : w) we /= worst;
  return w;
}

}  // namespace

void validate(const TvParams& params) {
  if (!(params.epsilon > 0.0) || !std::isfinite(params.epsilon))
    throw ValidationError("tv epsilon must be positive");
}

std::vector<double> tv_coefficients(const Signal& g, const TvParams& params) {
  validate(params);
  if (const Grid2D* grid = g.grid()) {
    std::vector<double> c(g.size());
    if (grid->rows == 1 || grid->cols == 1)
      coeff_chain(g.data(), c.data(), static_cast<int>(g.size()), params.epsilon);
    else
      coeff_grid2d(g.data(), c.data(), grid->rows, grid->cols, params.epsilon);
    return c;
  }
  return coeff_graph(*g.graph(), g.data(), params.epsilon);
}

std::vector<double> tv_edge_weights(const Signal& g, const TvParams& params) {
  validate(params);
  const GeneralGraph* graph = g.graph();
  if (!graph) throw ValidationError("tv_edge_weights requires a general graph");
  return edge_weights_graph(*graph, g.data(), params.epsilon);
}

TvFilter::TvFilter(std::shared_ptr<const Topology> topo, TvParams params)
    : topo_(std::move(topo)), params_(params) {
  if (!topo_) throw ValidationError("tv: topology required");
  validate(params_);
}

void TvFilter::apply_w(const Signal& g, const Signal& v, Signal& out) const {
  check_guidance_input(g, v);
  if (out.size() != g.size()) out = Signal::uninitialized(topo_);
  if (const Grid2D* grid = std::get_if<Grid2D>(topo_.get())) {
    std::vector<double> c(g.size());
    const int n = static_cast<int>(g.size());
    if (grid->rows == 1 || grid->cols == 1) {
      coeff_chain(g.data(), c.data(), n, params_.epsilon);
      apply_w_chain(v.data(), c.data(), out.data(), n);
    } else {
      coeff_grid2d(g.data(), c.data(), grid->rows, grid->cols, params_.epsilon);
      apply_w_grid2d(v.data(), c.data(), out.data(), grid->rows, grid->cols);
    }
    return;
  }
  const GeneralGraph& graph = std::get<GeneralGraph>(*topo_);
  const std::vector<double> w = edge_weights_graph(graph, g.data(), params_.epsilon);
  const auto& edges = graph.edges();
  std::copy(v.data(), v.data() + v.size(), out.data());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const double flow = w[e] * (v[edges[e].i] - v[edges[e].j]);
    out[edges[e].i] -= flow;
    out[edges[e].j] += flow;
  }
}

void TvFilter::degree(const Signal& g, Signal& out) const {
  check_guidance_input(g, g);
  if (out.size() != g.size()) out = Signal::uninitialized(topo_);
  std::fill(out.values().begin(), out.values().end(), 1.0);
}

void TvFilter::apply_w_degree(const Signal& g, const Signal& v, Signal& wv,
                              Signal& deg) const {
  apply_w(g, v, wv);
  if (deg.size() != g.size()) deg = Signal::uninitialized(topo_);
  std::fill(deg.values().begin(), deg.values().end(), 1.0);
}

}  // namespace graphfilt

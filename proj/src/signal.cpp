#include "graphfilt/signal.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "graphfilt/kernels/kernels.hpp"

namespace graphfilt {

Grid2D::Grid2D(int rows_, int cols_, int window_width_)
    : rows(rows_), cols(cols_), window_width(window_width_) {
  if (rows < 1 || cols < 1)
    throw ValidationError("grid dimensions must be at least 1x1, got " +
                          std::to_string(rows) + "x" + std::to_string(cols));
  if (window_width < 1 || window_width % 2 == 0)
    throw ValidationError("grid window width must be odd and >= 1, got " +
                          std::to_string(window_width));
}

GeneralGraph::GeneralGraph(int node_count, std::vector<GraphEdge> edges,
                           std::vector<double> positions, int pos_dim)
    : n_(node_count),
      pos_dim_(pos_dim),
      edges_(std::move(edges)),
      positions_(std::move(positions)) {
  if (n_ < 1) throw ValidationError("graph must have at least one node");
  if (pos_dim_ < 0) throw ValidationError("position dimension must be >= 0");
  if (pos_dim_ == 0 && !positions_.empty())
    throw ValidationError("positions given but position dimension is 0");
  if (pos_dim_ > 0 &&
      positions_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(pos_dim_))
    throw ValidationError("positions array has wrong size for " + std::to_string(n_) +
                          " nodes of dimension " + std::to_string(pos_dim_));

  for (auto& e : edges_) {
    if (e.i == e.j)
      throw ValidationError("self-loop on node " + std::to_string(e.i));
    if (e.i < 0 || e.j < 0 || e.i >= n_ || e.j >= n_)
      throw ValidationError("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                            ") references a node outside 0.." + std::to_string(n_ - 1));
    if (!(e.dist >= 0.0) || !std::isfinite(e.dist))
      throw ValidationError("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                            ") has invalid distance");
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(edges_.begin(), edges_.end(), [](const GraphEdge& a, const GraphEdge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  for (std::size_t k = 1; k < edges_.size(); ++k)
    if (edges_[k].i == edges_[k - 1].i && edges_[k].j == edges_[k - 1].j)
      throw ValidationError("duplicate edge (" + std::to_string(edges_[k].i) + "," +
                            std::to_string(edges_[k].j) + ")");

  // CSR adjacency over both directions
  std::vector<std::int32_t> deg(n_, 0);
  for (const auto& e : edges_) {
    ++deg[e.i];
    ++deg[e.j];
  }
  max_degree_ = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
  adj_start_.assign(n_ + 1, 0);
  for (int i = 0; i < n_; ++i) adj_start_[i + 1] = adj_start_[i] + deg[i];
  adj_node_.resize(adj_start_[n_]);
  adj_dist_.resize(adj_start_[n_]);
  adj_edge_.resize(adj_start_[n_]);
  std::vector<std::int32_t> fill(adj_start_.begin(), adj_start_.end() - 1);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto& e = edges_[k];
    adj_node_[fill[e.i]] = e.j;
    adj_dist_[fill[e.i]] = e.dist;
    adj_edge_[fill[e.i]] = static_cast<std::int32_t>(k);
    ++fill[e.i];
    adj_node_[fill[e.j]] = e.i;
    adj_dist_[fill[e.j]] = e.dist;
    adj_edge_[fill[e.j]] = static_cast<std::int32_t>(k);
    ++fill[e.j];
  }
}

std::span<const std::int32_t> GeneralGraph::neighbor_nodes(int i) const {
  return {adj_node_.data() + adj_start_[i],
          static_cast<std::size_t>(adj_start_[i + 1] - adj_start_[i])};
}

std::span<const double> GeneralGraph::neighbor_dists(int i) const {
  return {adj_dist_.data() + adj_start_[i],
          static_cast<std::size_t>(adj_start_[i + 1] - adj_start_[i])};
}

std::span<const std::int32_t> GeneralGraph::neighbor_edges(int i) const {
  return {adj_edge_.data() + adj_start_[i],
          static_cast<std::size_t>(adj_start_[i + 1] - adj_start_[i])};
}

bool GeneralGraph::operator==(const GeneralGraph& other) const {
  return n_ == other.n_ && pos_dim_ == other.pos_dim_ && edges_ == other.edges_ &&
         positions_ == other.positions_;
}

std::size_t node_count(const Topology& topo) {
  return std::visit(
      [](const auto& t) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(t)>, Grid2D>)
          return t.node_count();
        else
          return static_cast<std::size_t>(t.node_count());
      },
      topo);
}

std::shared_ptr<const Topology> make_grid(int rows, int cols, int window_width) {
  return std::make_shared<const Topology>(Grid2D(rows, cols, window_width));
}

std::shared_ptr<const Topology> make_graph(int node_count, std::vector<GraphEdge> edges,
                                           std::vector<double> positions, int pos_dim) {
  return std::make_shared<const Topology>(
      GeneralGraph(node_count, std::move(edges), std::move(positions), pos_dim));
}

Signal::Signal(std::shared_ptr<const Topology> topo, std::vector<double> values)
    : topo_(std::move(topo)), values_(std::move(values)) {
  if (!topo_) throw ValidationError("signal requires a topology");
  const std::size_t n = node_count(*topo_);
  if (values_.size() != n)
    throw ValidationError("signal length " + std::to_string(values_.size()) +
                          " does not match topology node count " + std::to_string(n));
  if (!all_finite(values_))
    throw ValidationError("signal contains non-finite values");
}

Signal Signal::constant(std::shared_ptr<const Topology> topo, double value) {
  Signal s = uninitialized(std::move(topo));
  std::fill(s.values_.begin(), s.values_.end(), value);
  return s;
}

Signal Signal::zeros(std::shared_ptr<const Topology> topo) {
  return constant(std::move(topo), 0.0);
}

Signal Signal::uninitialized(std::shared_ptr<const Topology> topo) {
  if (!topo) throw ValidationError("signal requires a topology");
  Signal s;
  s.values_.resize(node_count(*topo));
  s.topo_ = std::move(topo);
  return s;
}

const Grid2D* Signal::grid() const {
  return topo_ ? std::get_if<Grid2D>(topo_.get()) : nullptr;
}

const GeneralGraph* Signal::graph() const {
  return topo_ ? std::get_if<GeneralGraph>(topo_.get()) : nullptr;
}

bool Signal::same_topology(const Signal& other) const {
  if (topo_ == other.topo_) return topo_ != nullptr;
  if (!topo_ || !other.topo_) return false;
  return *topo_ == *other.topo_;
}

double dot(const Signal& u, const Signal& v) {
  if (u.size() != v.size())
    throw ValidationError("dot: length mismatch (" + std::to_string(u.size()) + " vs " +
                          std::to_string(v.size()) + ")");
  return kernels::active().dot(u.data(), v.data(), u.size());
}

bool all_finite(std::span<const double> values) {
  for (double x : values)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace graphfilt

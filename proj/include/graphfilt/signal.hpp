#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "graphfilt/errors.hpp"

namespace graphfilt {

/// Rectangular pixel grid. Filter neighborhoods are square windows centered
/// on each pixel and truncated at the image border; spatial distances are
/// Euclidean in pixel units. `window_width` is the grid's default
/// neighborhood width; filters carry their own width in their parameters.
struct Grid2D {
  int rows = 0;
  int cols = 0;
  int window_width = 5;

  Grid2D() = default;
  Grid2D(int rows_, int cols_, int window_width_ = 5);

  std::size_t node_count() const {
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  }
  bool operator==(const Grid2D&) const = default;
};

/// Undirected edge with a spatial distance between its endpoints.
struct GraphEdge {
  std::int32_t i = 0;
  std::int32_t j = 0;
  double dist = 1.0;

  bool operator==(const GraphEdge&) const = default;
};

/// Arbitrary topology: nodes with optional d-dimensional coordinates plus a
/// weighted edge list. Edges are stored with i < j; the constructor
/// normalizes order and rejects self-loops, duplicates, and bad indices.
class GeneralGraph {
 public:
  GeneralGraph(int node_count, std::vector<GraphEdge> edges,
               std::vector<double> positions = {}, int pos_dim = 0);

  int node_count() const { return n_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  int pos_dim() const { return pos_dim_; }
  const std::vector<double>& positions() const { return positions_; }

  /// Highest number of edges incident to any node.
  int max_degree() const { return max_degree_; }

  /// Neighbors of node i as parallel spans (target node, edge distance,
  /// index into edges()).
  std::span<const std::int32_t> neighbor_nodes(int i) const;
  std::span<const double> neighbor_dists(int i) const;
  std::span<const std::int32_t> neighbor_edges(int i) const;

  bool operator==(const GeneralGraph& other) const;

 private:
  int n_ = 0;
  int pos_dim_ = 0;
  int max_degree_ = 0;
  std::vector<GraphEdge> edges_;
  std::vector<double> positions_;
  // CSR adjacency over both edge directions
  std::vector<std::int32_t> adj_start_;
  std::vector<std::int32_t> adj_node_;
  std::vector<double> adj_dist_;
  std::vector<std::int32_t> adj_edge_;
};

using Topology = std::variant<Grid2D, GeneralGraph>;

std::size_t node_count(const Topology& topo);

std::shared_ptr<const Topology> make_grid(int rows, int cols, int window_width = 5);
std::shared_ptr<const Topology> make_graph(int node_count, std::vector<GraphEdge> edges,
                                           std::vector<double> positions = {},
                                           int pos_dim = 0);

/// One real value per node of a topology. Values are 64-bit reals, nominally
/// in [0,1] for image intensities. The validating constructor rejects
/// non-finite values and length mismatches.
class Signal {
 public:
  Signal() = default;
  Signal(std::shared_ptr<const Topology> topo, std::vector<double> values);

  static Signal constant(std::shared_ptr<const Topology> topo, double value);
  static Signal zeros(std::shared_ptr<const Topology> topo);
  /// Allocated but unchecked; for internal buffers the caller fills.
  static Signal uninitialized(std::shared_ptr<const Topology> topo);

  std::size_t size() const { return values_.size(); }
  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  const std::shared_ptr<const Topology>& topology_ptr() const { return topo_; }
  const Topology& topology() const { return *topo_; }
  const Grid2D* grid() const;
  const GeneralGraph* graph() const;

  /// True when both signals share a topology (same object or equal value).
  bool same_topology(const Signal& other) const;

 private:
  std::shared_ptr<const Topology> topo_;
  std::vector<double> values_;
};

/// Deterministic dot product (fixed reduction order, see kernels.hpp).
/// Throws ValidationError on length mismatch.
double dot(const Signal& u, const Signal& v);

bool all_finite(std::span<const double> values);

}  // namespace graphfilt

#pragma once

#include "graphfilt/filter.hpp"

namespace graphfilt {

/// Bilateral filter parameters: spatial scale sigma_d, range scale sigma_r,
/// and the window width (odd) used on grids.
struct BilateralParams {
  int window_width = 5;
  double sigma_d = 1.0;
  double sigma_r = 0.2;
};

void validate(const BilateralParams& params);

/// Single bilateral weight
///   exp(-dist^2 / (2 sigma_d^2) - dg^2 / (2 sigma_r^2))
/// for a spatial distance and a guidance intensity difference. Always in
/// (0, 1]. Assumes validated params.
double bilateral_weight(double dist, double dg, const BilateralParams& params);

/// Bilateral filter as an implicit operator. On Grid2D the neighborhood of a
/// pixel is the window_width x window_width patch centered on it, truncated
/// at the border and including the pixel itself (self weight 1). On general
/// graphs the neighborhood is the node plus its edge neighbors with the
/// edge-supplied spatial distances.
class BilateralFilter final : public FilterOperator {
 public:
  BilateralFilter(std::shared_ptr<const Topology> topo, BilateralParams params = {});

  std::string_view name() const override { return "bilateral"; }
  const std::shared_ptr<const Topology>& topology() const override { return topo_; }
  const BilateralParams& params() const { return params_; }

  using FilterOperator::apply_w;
  using FilterOperator::degree;
  void apply_w(const Signal& g, const Signal& v, Signal& out) const override;
  void degree(const Signal& g, Signal& out) const override;
  void apply_w_degree(const Signal& g, const Signal& v, Signal& wv,
                      Signal& deg) const override;

 private:
  void grid_pass(const Signal& g, const Signal& v, double* wv, double* deg) const;
  void graph_pass(const Signal& g, const Signal& v, double* wv, double* deg) const;

  std::shared_ptr<const Topology> topo_;
  BilateralParams params_;
  // precomputed full-window tables for the grid fast path
  std::vector<std::ptrdiff_t> offsets_;
  std::vector<int> off_dy_, off_dx_;
  std::vector<double> neg_spatial_;
};

}  // namespace graphfilt

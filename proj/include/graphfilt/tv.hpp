#pragma once

#include <vector>

#include "graphfilt/filter.hpp"

namespace graphfilt {

/// Total-variation filter regularization parameter.
struct TvParams {
  double epsilon = 1e-3;
};

void validate(const TvParams& params);

/// Anisotropic-diffusion coefficients derived from a guidance signal with
/// forward differences (zero at the trailing row/column):
///
///   2D grid:  C = 1/8 * eps ./ (eps + sqrt(|Gg|.^2 + |gG'|.^2)), one value
///             per pixel, returned row-major;
///   1xN / Nx1 grid: C = 1/4 * eps ./ (eps + |grad g|), one value per node;
///   general graph:  C_e = 1/4 * eps ./ (eps + |g_i - g_j| / dist_e), one
///             value per edge in edge order.
std::vector<double> tv_coefficients(const Signal& g, const TvParams& params);

/// Final Laplacian edge weights on a general graph: C_e / dist_e^2, uniformly
/// rescaled down when the largest weighted node degree exceeds 1 so the
/// smoothing step keeps nonnegative W diagonal entries (only reachable on
/// graphs with node degree > 2 or sub-unit distances).
std::vector<double> tv_edge_weights(const Signal& g, const TvParams& params);

/// Total-variation filter as an implicit operator: L(g) is the weighted
/// graph Laplacian built from the diffusion coefficients, D = I and
/// W = I - L. Row sums of W are exactly 1 and off-diagonal entries are
/// nonnegative, so the smoothing step obeys the discrete maximum principle.
class TvFilter final : public FilterOperator {
 public:
  TvFilter(std::shared_ptr<const Topology> topo, TvParams params = {});

  std::string_view name() const override { return "tv"; }
  const std::shared_ptr<const Topology>& topology() const override { return topo_; }
  const TvParams& params() const { return params_; }

  using FilterOperator::apply_w;
  using FilterOperator::degree;
  void apply_w(const Signal& g, const Signal& v, Signal& out) const override;
  void degree(const Signal& g, Signal& out) const override;
  void apply_w_degree(const Signal& g, const Signal& v, Signal& wv,
                      Signal& deg) const override;

 private:
  std::shared_ptr<const Topology> topo_;
  TvParams params_;
};

}  // namespace graphfilt

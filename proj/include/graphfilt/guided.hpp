#pragma once

#include "graphfilt/filter.hpp"

namespace graphfilt {

/// Guided filter parameters: mean-filter window width and the smoothness
/// degree epsilon (larger epsilon, stronger smoothing). Even widths are
/// accepted; the window then extends one extra pixel up and left.
struct GuidedParams {
  int window_width = 5;
  double epsilon = 1e-4;
};

void validate(const GuidedParams& params);

/// Mean filter on a Grid2D signal: each output pixel is the arithmetic mean
/// of the w x w window centered on it, truncated at the border (divide by
/// the count of in-image pixels). Throws on non-grid topologies.
Signal mean_filter(const Signal& x, int window_width);

/// Guided filter as an implicit operator (Grid2D only). One application
/// computes, with f_mean the mean filter above and elementwise arithmetic:
///
///   a = (f_mean(g.*x) - f_mean(g).*f_mean(x)) ./ (var_g + eps)
///   b = f_mean(x) - a .* f_mean(g)
///   y = f_mean(a) .* g + f_mean(b)
///
/// The transform is linear in x; its matrix is W(g) and the degree matrix is
/// the identity, so apply_w is the whole smoothing step. W is exactly
/// symmetric away from the border; truncated normalization leaves a small
/// asymmetry in the border band.
class GuidedFilter final : public FilterOperator {
 public:
  GuidedFilter(std::shared_ptr<const Topology> topo, GuidedParams params = {});

  std::string_view name() const override { return "guided"; }
  const std::shared_ptr<const Topology>& topology() const override { return topo_; }
  const GuidedParams& params() const { return params_; }

  using FilterOperator::apply_w;
  using FilterOperator::degree;
  void apply_w(const Signal& g, const Signal& v, Signal& out) const override;
  void degree(const Signal& g, Signal& out) const override;
  void apply_w_degree(const Signal& g, const Signal& v, Signal& wv,
                      Signal& deg) const override;

 private:
  std::shared_ptr<const Topology> topo_;
  GuidedParams params_;
};

}  // namespace graphfilt

#pragma once

#include <string_view>

#include "graphfilt/signal.hpp"

namespace graphfilt {

/// Contract for smoothing filters expressed as implicit graph operators.
///
/// For a fixed guidance signal g the filter defines a symmetric weight
/// matrix W(g) and the diagonal degree matrix D(g) with strictly positive
/// entries d_i = sum_j w_ij. Neither matrix is stored; both act through
/// apply_w / degree. The smoothing step is x -> D^{-1} W x and the graph
/// Laplacian is L = D - W.
class FilterOperator {
 public:
  virtual ~FilterOperator() = default;

  virtual std::string_view name() const = 0;
  virtual const std::shared_ptr<const Topology>& topology() const = 0;

  /// out = W(g) v. Linear in v for fixed g. out must not alias g or v.
  virtual void apply_w(const Signal& g, const Signal& v, Signal& out) const = 0;

  /// out = diag(D(g)), all entries > 0.
  virtual void degree(const Signal& g, Signal& out) const = 0;

  /// Both W(g)v and diag(D(g)). Filters with expensive weights override
  /// this to share one weight pass.
  virtual void apply_w_degree(const Signal& g, const Signal& v, Signal& wv,
                              Signal& deg) const;

  Signal apply_w(const Signal& g, const Signal& v) const;
  Signal degree(const Signal& g) const;

 protected:
  /// Throws ValidationError unless g and v live on this operator's topology.
  void check_guidance_input(const Signal& g, const Signal& v) const;
};

/// One smoothing step D^{-1}(g) W(g) x.
Signal smooth(const FilterOperator& filter, const Signal& g, const Signal& x);

/// Graph Laplacian application D(g) v - W(g) v.
Signal apply_l(const FilterOperator& filter, const Signal& g, const Signal& v);

}  // namespace graphfilt

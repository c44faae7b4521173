#include "graphfilt/filter.hpp"

#include <string>

#include "graphfilt/kernels/kernels.hpp"

namespace graphfilt {

void FilterOperator::apply_w_degree(const Signal& g, const Signal& v, Signal& wv,
                                    Signal& deg) const {
  apply_w(g, v, wv);
  degree(g, deg);
}

Signal FilterOperator::apply_w(const Signal& g, const Signal& v) const {
  Signal out = Signal::uninitialized(topology());
  apply_w(g, v, out);
  return out;
}

Signal FilterOperator::degree(const Signal& g) const {
  Signal out = Signal::uninitialized(topology());
  degree(g, out);
  return out;
}

void FilterOperator::check_guidance_input(const Signal& g, const Signal& v) const {
  const auto& topo = topology();
  const std::size_t n = node_count(*topo);
  if (g.size() != n || !(g.topology_ptr() == topo || (g.topology_ptr() && *g.topology_ptr() == *topo)))
    throw ValidationError(std::string(name()) + ": guidance signal is not on this operator's topology");
  if (v.size() != n || !v.same_topology(g))
    throw ValidationError(std::string(name()) + ": input signal topology mismatch");
}

Signal smooth(const FilterOperator& filter, const Signal& g, const Signal& x) {
  Signal wv = Signal::uninitialized(filter.topology());
  Signal deg = Signal::uninitialized(filter.topology());
  filter.apply_w_degree(g, x, wv, deg);
  Signal out = Signal::uninitialized(filter.topology());
  kernels::active().vdiv(wv.data(), deg.data(), out.data(), out.size());
  return out;
}

Signal apply_l(const FilterOperator& filter, const Signal& g, const Signal& v) {
  Signal wv = Signal::uninitialized(filter.topology());
  Signal deg = Signal::uninitialized(filter.topology());
  filter.apply_w_degree(g, v, wv, deg);
  Signal out = Signal::uninitialized(filter.topology());
  kernels::active().mul_sub(deg.data(), v.data(), wv.data(), out.data(), out.size());
  return out;
}

}  // namespace graphfilt

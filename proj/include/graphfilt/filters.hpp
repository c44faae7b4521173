#pragma once

#include <memory>
#include <variant>

#include "graphfilt/bilateral.hpp"
#include "graphfilt/guided.hpp"
#include "graphfilt/tv.hpp"

namespace graphfilt {

enum class FilterKind { bilateral, guided, tv };

using FilterParams = std::variant<BilateralParams, GuidedParams, TvParams>;

std::string_view filter_kind_name(FilterKind kind);
FilterKind parse_filter_kind(std::string_view name);

/// Instantiates the requested filter; the params variant must match the kind.
std::unique_ptr<FilterOperator> make_filter(FilterKind kind, const FilterParams& params,
                                            std::shared_ptr<const Topology> topo);

}  // namespace graphfilt

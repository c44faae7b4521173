#include "graphfilt/filters.hpp"

#include <string>

namespace graphfilt {

std::string_view filter_kind_name(FilterKind kind) {
  switch (kind) {
    case FilterKind::bilateral: return "bilateral";
    case FilterKind::guided: return "guided";
    case FilterKind::tv: return "tv";
  }
  return "?";
}

FilterKind parse_filter_kind(std::string_view name) {
  if (name == "bilateral") return FilterKind::bilateral;
  if (name == "guided") return FilterKind::guided;
  if (name == "tv") return FilterKind::tv;
  throw ValidationError("unknown filter kind '" + std::string(name) +
                        "' (expected bilateral, guided or tv)");
}

std::unique_ptr<FilterOperator> make_filter(FilterKind kind, const FilterParams& params,
                                            std::shared_ptr<const Topology> topo) {
  switch (kind) {
    case FilterKind::bilateral:
      if (const auto* p = std::get_if<BilateralParams>(&params))
        return std::make_unique<BilateralFilter>(std::move(topo), *p);
      break;
    case FilterKind::guided:
      if (const auto* p = std::get_if<GuidedParams>(&params))
        return std::make_unique<GuidedFilter>(std::move(topo), *p);
      break;
    case FilterKind::tv:
      if (const auto* p = std::get_if<TvParams>(&params))
        return std::make_unique<TvFilter>(std::move(topo), *p);
      break;
  }
  throw ValidationError("filter parameters do not match filter kind");
}

}  // namespace graphfilt

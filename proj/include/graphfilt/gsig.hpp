#pragma once

#include <string>

#include "graphfilt/signal.hpp"

namespace graphfilt {

/// Plain-text graph-signal format:
///
///   GSIG 1 <N> <E> <dim>
///   <id> <value> [<dim coordinates>]     (N node lines, ids 0..N-1)
///   <i> <j> <dist>                       (E edge lines)
///
/// Values are written with 17 significant digits so a write/read round trip
/// reproduces every double bit-exactly. Blank lines and lines starting with
/// '#' are ignored. Parse errors report the offending line number.
Signal read_graph_signal(const std::string& path);
void write_graph_signal(const std::string& path, const Signal& s);

}  // namespace graphfilt

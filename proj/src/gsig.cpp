#include "graphfilt/gsig.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace graphfilt {

namespace {

struct LineReader {
  std::istream& in;
  const std::string& path;
  long line_no = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw IoError(path + ": line " + std::to_string(line_no) + ": " + msg);
  }

  // Next non-blank, non-comment line split into tokens; false at EOF.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      tokens.clear();
      std::istringstream ss(line);
      std::string tok;
      while (ss >> tok) tokens.push_back(tok);
      if (tokens.empty() || tokens[0][0] == '#') continue;
      return true;
    }
    return false;
  }
};

long parse_long(const LineReader& r, const std::string& tok, const char* what) {
  long value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    r.fail(std::string("invalid ") + what + " '" + tok + "'");
  return value;
}

double parse_double(const LineReader& r, const std::string& tok, const char* what) {
  double value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    r.fail(std::string("invalid ") + what + " '" + tok + "'");
  return value;
}

void append_double(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

Signal read_graph_signal(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open file");
  LineReader reader{in, path};
  std::vector<std::string> tok;

  if (!reader.next(tok)) reader.fail("empty file (expected GSIG header)");
  if (tok.size() != 5 || tok[0] != "GSIG")
    reader.fail("malformed header (expected 'GSIG 1 <N> <E> <dim>')");
  if (tok[1] != "1") reader.fail("unsupported GSIG version '" + tok[1] + "'");
  const long n = parse_long(reader, tok[2], "node count");
  const long e = parse_long(reader, tok[3], "edge count");
  const long dim = parse_long(reader, tok[4], "coordinate dimension");
  if (n < 1) reader.fail("node count must be >= 1");
  if (e < 0 || dim < 0) reader.fail("negative edge count or dimension");
  if (n > (1L << 30) || e > (1L << 30) || dim > 16)
    reader.fail("header sizes exceed the supported range");

  std::vector<double> values(n, 0.0);
  std::vector<double> positions(dim > 0 ? n * dim : 0, 0.0);
  std::vector<char> seen(n, 0);
  for (long k = 0; k < n; ++k) {
    if (!reader.next(tok)) reader.fail("unexpected end of file (expected node line)");
    if (tok.size() != static_cast<std::size_t>(2 + dim))
      reader.fail("node line has " + std::to_string(tok.size()) + " fields, expected " +
                  std::to_string(2 + dim));
    const long id = parse_long(reader, tok[0], "node id");
    if (id < 0 || id >= n)
      reader.fail("node id " + std::to_string(id) + " outside 0.." + std::to_string(n - 1));
    if (seen[id]) reader.fail("duplicate node id " + std::to_string(id));
    seen[id] = 1;
    values[id] = parse_double(reader, tok[1], "node value");
    for (long d = 0; d < dim; ++d)
      positions[id * dim + d] = parse_double(reader, tok[2 + d], "coordinate");
  }

  std::vector<GraphEdge> edges;
  edges.reserve(e);
  for (long k = 0; k < e; ++k) {
    if (!reader.next(tok)) reader.fail("unexpected end of file (expected edge line)");
    if (tok.size() != 3)
      reader.fail("edge line has " + std::to_string(tok.size()) + " fields, expected 3");
    const long i = parse_long(reader, tok[0], "edge endpoint");
    const long j = parse_long(reader, tok[1], "edge endpoint");
    const double dist = parse_double(reader, tok[2], "edge distance");
    if (i < 0 || i >= n || j < 0 || j >= n)
      reader.fail("edge references node " + std::to_string(i < 0 || i >= n ? i : j) +
                  " (graph has " + std::to_string(n) + " nodes)");
    if (i == j) reader.fail("self-loop on node " + std::to_string(i));
    if (!(dist >= 0.0)) reader.fail("negative edge distance");
    edges.push_back({static_cast<std::int32_t>(i), static_cast<std::int32_t>(j), dist});
  }
  if (reader.next(tok)) reader.fail("unexpected content after last edge");

  std::shared_ptr<const Topology> topo;
  try {
    topo = make_graph(static_cast<int>(n), std::move(edges), std::move(positions),
                      static_cast<int>(dim));
  } catch (const ValidationError& err) {
    throw IoError(path + ": " + err.what());
  }
  return Signal(std::move(topo), std::move(values));
}

void write_graph_signal(const std::string& path, const Signal& s) {
  const GeneralGraph* graph = s.graph();
  if (!graph) throw ValidationError("write_graph_signal: signal is not on a graph");
  if (!all_finite(s.values()))
    throw ValidationError("write_graph_signal: signal contains non-finite values");

  std::string out;
  out += "GSIG 1 " + std::to_string(graph->node_count()) + " " +
         std::to_string(graph->edges().size()) + " " + std::to_string(graph->pos_dim()) +
         "\n";
  const int dim = graph->pos_dim();
  for (int i = 0; i < graph->node_count(); ++i) {
    out += std::to_string(i);
    out += ' ';
    append_double(out, s[i]);
    for (int d = 0; d < dim; ++d) {
      out += ' ';
      append_double(out, graph->positions()[static_cast<std::size_t>(i) * dim + d]);
    }
    out += '\n';
  }
  for (const GraphEdge& e : graph->edges()) {
    out += std::to_string(e.i);
    out += ' ';
    out += std::to_string(e.j);
    out += ' ';
    append_double(out, e.dist);
    out += '\n';
  }

  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError(path + ": cannot open file for writing");
  f << out;
  if (!f) throw IoError(path + ": write failed");
}

}  // namespace graphfilt

#include "bipart/io.hpp"

#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace bipart {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::int64_t parse_int(const std::string& tok, std::size_t line_no,
                       const char* what) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("line " + std::to_string(line_no) + ": " + what +
                     " is not an integer: '" + tok + "'");
  return v;
}

struct RawEdge {
  std::int64_t i, j, w;
};

}  // namespace

LoadedBipartite read_edge_list(std::istream& in, EdgeListFormat format) {
  const bool one_based = format == EdgeListFormat::konect;
  const std::int64_t min_id = one_based ? 1 : 0;

  std::vector<RawEdge> raw;
  bool have_hint = false;
  std::int64_t hint_nb = 0, hint_nt = 0;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '%') {
      // KONECT size header: "% <edges> <n_bottom> <n_top>".
      if (!have_hint) {
        const auto toks = tokenize(line.substr(first + 1));
        if (toks.size() >= 3) {
          std::int64_t vals[3];
          bool numeric = true;
          for (int k = 0; k < 3 && numeric; ++k) {
            const auto [ptr, ec] = std::from_chars(
                toks[k].data(), toks[k].data() + toks[k].size(), vals[k]);
            numeric = ec == std::errc() &&
                      ptr == toks[k].data() + toks[k].size() && vals[k] >= 0;
          }
          if (numeric) {
            have_hint = true;
            hint_nb = vals[1];
            hint_nt = vals[2];
          }
        }
      }
      continue;
    }

    const auto toks = tokenize(line);
    if (toks.size() < 2 || toks.size() > 4)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'i j [w [t]]'");
    RawEdge e;
    e.i = parse_int(toks[0], line_no, "bottom id");
    e.j = parse_int(toks[1], line_no, "top id");
    e.w = toks.size() >= 3 ? parse_int(toks[2], line_no, "weight") : 1;
    if (e.i < min_id || e.j < min_id)
      throw ParseError("line " + std::to_string(line_no) + ": id < " +
                       std::to_string(min_id));
    if (e.w < 0)
      throw ParseError("line " + std::to_string(line_no) + ": negative weight");
    raw.push_back(e);
  }

  LoadedBipartite out;
  std::vector<std::tuple<NodeId, NodeId, Weight>> edges;
  edges.reserve(raw.size());

  if (have_hint) {
    for (const RawEdge& e : raw) {
      if (e.i - min_id >= hint_nb || e.j - min_id >= hint_nt)
        throw ParseError("edge (" + std::to_string(e.i) + ", " +
                         std::to_string(e.j) + ") exceeds declared sizes");
      edges.emplace_back(static_cast<NodeId>(e.i - min_id),
                         static_cast<NodeId>(e.j - min_id), e.w);
    }
    out.bottom_ids.resize(static_cast<std::size_t>(hint_nb));
    out.top_ids.resize(static_cast<std::size_t>(hint_nt));
    std::iota(out.bottom_ids.begin(), out.bottom_ids.end(), min_id);
    std::iota(out.top_ids.begin(), out.top_ids.end(), min_id);
    out.graph = BipartiteGraph(static_cast<NodeId>(hint_nb),
                               static_cast<NodeId>(hint_nt), edges);
    return out;
  }

  if (one_based) {
    // Compact sparse 1-based ids in first-appearance order.
    std::unordered_map<std::int64_t, NodeId> bmap, tmap;
    for (const RawEdge& e : raw) {
      const auto [bit, bnew] =
          bmap.try_emplace(e.i, static_cast<NodeId>(bmap.size()));
      if (bnew) out.bottom_ids.push_back(e.i);
      const auto [tit, tnew] =
          tmap.try_emplace(e.j, static_cast<NodeId>(tmap.size()));
      if (tnew) out.top_ids.push_back(e.j);
      edges.emplace_back(bit->second, tit->second, e.w);
    }
    out.graph = BipartiteGraph(static_cast<NodeId>(bmap.size()),
                               static_cast<NodeId>(tmap.size()), edges);
    return out;
  }

  std::int64_t nb = 0, nt = 0;
  for (const RawEdge& e : raw) {
    nb = std::max(nb, e.i + 1);
    nt = std::max(nt, e.j + 1);
    edges.emplace_back(static_cast<NodeId>(e.i), static_cast<NodeId>(e.j), e.w);
  }
  out.bottom_ids.resize(static_cast<std::size_t>(nb));
  out.top_ids.resize(static_cast<std::size_t>(nt));
  std::iota(out.bottom_ids.begin(), out.bottom_ids.end(), 0);
  std::iota(out.top_ids.begin(), out.top_ids.end(), 0);
  out.graph = BipartiteGraph(static_cast<NodeId>(nb), static_cast<NodeId>(nt),
                             edges);
  return out;
}

void write_edge_list(std::ostream& out, const BipartiteGraph& g) {
  out << "% " << g.total_weight() << ' ' << g.n_bottom() << ' ' << g.n_top()
      << '\n';
  for (const auto& [i, j, w] : g.edge_list())
    out << i << ' ' << j << ' ' << w << '\n';
}

void write_partition(std::ostream& out, const Partition& p,
                     const std::vector<std::int64_t>* ids) {
  for (NodeId i = 0; i < p.size(); ++i) {
    if (ids)
      out << (*ids)[i];
    else
      out << i;
    out << '\t' << p.label(i) << '\n';
  }
}

void write_partition(std::ostream& out, const BipartitePartition& p,
                     const std::vector<std::int64_t>* bottom_ids,
                     const std::vector<std::int64_t>* top_ids) {
  for (NodeId i = 0; i < p.bottom_labels().size(); ++i) {
    out << 'b' << (bottom_ids ? (*bottom_ids)[i] : i) << '\t'
        << p.bottom_labels()[i] << '\n';
  }
  for (NodeId j = 0; j < p.top_labels().size(); ++j) {
    out << 't' << (top_ids ? (*top_ids)[j] : j) << '\t' << p.top_labels()[j]
        << '\n';
  }
}

LoadedPartition read_partition(std::istream& in) {
  LoadedPartition out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '%') continue;
    const auto toks = tokenize(line);
    if (toks.size() != 2)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'id<TAB>label'");
    std::string key = toks[0];
    if (!key.empty() && (key[0] == 'b' || key[0] == 't')) {
      out.bipartite = true;
      parse_int(key.substr(1), line_no, "node id");
    } else {
      parse_int(key, line_no, "node id");
    }
    const std::int64_t label = parse_int(toks[1], line_no, "label");
    if (label < 0)
      throw ParseError("line " + std::to_string(line_no) + ": negative label");
    out.entries.emplace_back(std::move(key), static_cast<Label>(label));
  }
  return out;
}

void write_projection(std::ostream& out, const WeightedGraph& g) {
  for (const auto& [i, j, w] : g.edge_list())
    out << i << ' ' << j << ' ' << w << '\n';
}

}  // namespace bipart

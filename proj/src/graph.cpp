#include "bipart/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "bipart/partition.hpp"

namespace bipart {

namespace {

inline std::uint64_t pair_key(NodeId a, NodeId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

void sort_adj(std::vector<std::vector<Edge>>& adj) {
  for (auto& row : adj)
    std::sort(row.begin(), row.end(),
              [](const Edge& a, const Edge& b) { return a.to < b.to; });
}

}  // namespace

BipartiteGraph::BipartiteGraph(
    NodeId n_bottom, NodeId n_top,
    const std::vector<std::tuple<NodeId, NodeId, Weight>>& edges)
    : n_bottom_(n_bottom),
      n_top_(n_top),
      bottom_degree_(n_bottom, 0),
      top_degree_(n_top, 0),
      bottom_adj_(n_bottom),
      top_adj_(n_top) {
  std::unordered_map<std::uint64_t, Weight> acc;
  acc.reserve(edges.size());
  for (const auto& [i, j, w] : edges) {
    if (i >= n_bottom || j >= n_top)
      throw std::invalid_argument("BipartiteGraph: edge id out of range");
    if (w < 0) throw std::invalid_argument("BipartiteGraph: negative weight");
    if (w == 0) continue;
    acc[pair_key(i, j)] += w;
  }
  for (const auto& [key, w] : acc) {
    NodeId i = static_cast<NodeId>(key >> 32);
    NodeId j = static_cast<NodeId>(key & 0xffffffffu);
    bottom_adj_[i].push_back({j, w});
    top_adj_[j].push_back({i, w});
    bottom_degree_[i] += w;
    top_degree_[j] += w;
    total_weight_ += w;
  }
  sort_adj(bottom_adj_);
  sort_adj(top_adj_);
}

std::vector<std::tuple<NodeId, NodeId, Weight>> BipartiteGraph::edge_list()
    const {
  std::vector<std::tuple<NodeId, NodeId, Weight>> out;
  for (NodeId i = 0; i < n_bottom_; ++i)
    for (const Edge& e : bottom_adj_[i]) out.emplace_back(i, e.to, e.w);
  return out;
}

WeightedGraph::WeightedGraph(
    NodeId n, const std::vector<std::tuple<NodeId, NodeId, Weight>>& edges)
    : n_(n), strength_(n, 0), self_loop_(n, 0), adj_(n) {
  std::unordered_map<std::uint64_t, Weight> acc;
  acc.reserve(edges.size());
  for (const auto& [i, j, w] : edges) {
    if (i >= n || j >= n)
      throw std::invalid_argument("WeightedGraph: edge id out of range");
    if (w < 0) throw std::invalid_argument("WeightedGraph: negative weight");
    if (w == 0) continue;
    acc[pair_key(std::min(i, j), std::max(i, j))] += w;
  }
  for (const auto& [key, w] : acc) {
    NodeId i = static_cast<NodeId>(key >> 32);
    NodeId j = static_cast<NodeId>(key & 0xffffffffu);
    if (i == j) {
      self_loop_[i] += w;
      strength_[i] += w;
      total_weight_ += w;
    } else {
      adj_[i].push_back({j, w});
      adj_[j].push_back({i, w});
      strength_[i] += w;
      strength_[j] += w;
      total_weight_ += 2 * w;
    }
  }
  sort_adj(adj_);
}

void WeightedGraph::set_sidecar(std::vector<Weight> degrees, Weight total,
                                Side side) {
  if (degrees.size() != n_)
    throw std::invalid_argument("set_sidecar: degree count mismatch");
  bipartite_degree_ = std::move(degrees);
  bipartite_total_ = total;
  side_ = side;
}

std::vector<std::tuple<NodeId, NodeId, Weight>> WeightedGraph::edge_list()
    const {
  std::vector<std::tuple<NodeId, NodeId, Weight>> out;
  for (NodeId i = 0; i < n_; ++i) {
    if (self_loop_[i] > 0) out.emplace_back(i, i, self_loop_[i]);
    for (const Edge& e : adj_[i])
      if (e.to > i) out.emplace_back(i, e.to, e.w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool WeightedGraph::operator==(const WeightedGraph& other) const {
  return n_ == other.n_ && edge_list() == other.edge_list() &&
         bipartite_degree_ == other.bipartite_degree_ &&
         bipartite_total_ == other.bipartite_total_;
}

WeightedGraph project(const BipartiteGraph& g, Side side) {
  const NodeId n = side == Side::bottom ? g.n_bottom() : g.n_top();
  const NodeId m = side == Side::bottom ? g.n_top() : g.n_bottom();
  std::unordered_map<std::uint64_t, Weight> acc;
  for (NodeId k = 0; k < m; ++k) {
    const auto& adj = side == Side::bottom ? g.top_adj(k) : g.bottom_adj(k);
    for (std::size_t a = 0; a < adj.size(); ++a)
      for (std::size_t b = a; b < adj.size(); ++b)
        acc[pair_key(adj[a].to, adj[b].to)] += adj[a].w * adj[b].w;
  }
  std::vector<std::tuple<NodeId, NodeId, Weight>> edges;
  edges.reserve(acc.size());
  for (const auto& [key, w] : acc)
    edges.emplace_back(static_cast<NodeId>(key >> 32),
                       static_cast<NodeId>(key & 0xffffffffu), w);
  WeightedGraph out(n, edges);

  std::vector<Weight> degrees(n);
  for (NodeId i = 0; i < n; ++i)
    degrees[i] =
        side == Side::bottom ? g.bottom_degree(i) : g.top_degree(i);
  out.set_sidecar(std::move(degrees), g.total_weight(), side);
  return out;
}

WeightedGraph strip_self_loops(const WeightedGraph& g) {
  std::vector<std::tuple<NodeId, NodeId, Weight>> edges;
  for (const auto& [i, j, w] : g.edge_list())
    if (i != j) edges.emplace_back(i, j, w);
  WeightedGraph out(g.node_count(), edges);
  if (g.has_bipartite_sidecar()) {
    std::vector<Weight> degrees(g.node_count());
    for (NodeId i = 0; i < g.node_count(); ++i)
      degrees[i] = g.bipartite_degree(i);
    out.set_sidecar(std::move(degrees), g.bipartite_total(), g.side());
  }
  return out;
}

namespace {

// Dense id for each label present in `labels`, assigned in ascending label
// order. Returns the number of distinct labels.
std::size_t side_label_map(const std::vector<Label>& labels,
                           std::unordered_map<Label, NodeId>& map) {
  std::vector<Label> distinct(labels);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());
  for (NodeId idx = 0; idx < distinct.size(); ++idx) map[distinct[idx]] = idx;
  return distinct.size();
}

}  // namespace

BipartiteGraph aggregate_bipartite(const BipartiteGraph& g,
                                   const BipartitePartition& p) {
  if (p.bottom_labels().size() != g.n_bottom() ||
      p.top_labels().size() != g.n_top())
    throw std::invalid_argument("aggregate_bipartite: partition size mismatch");
  std::unordered_map<Label, NodeId> bmap, tmap;
  const NodeId nb = static_cast<NodeId>(side_label_map(p.bottom_labels(), bmap));
  const NodeId nt = static_cast<NodeId>(side_label_map(p.top_labels(), tmap));

  std::vector<std::tuple<NodeId, NodeId, Weight>> edges;
  for (const auto& [i, j, w] : g.edge_list())
    edges.emplace_back(bmap.at(p.bottom_labels()[i]),
                       tmap.at(p.top_labels()[j]), w);
  return BipartiteGraph(nb, nt, edges);
}

WeightedGraph aggregate_projected(const WeightedGraph& g, const Partition& p) {
  if (p.size() != g.node_count())
    throw std::invalid_argument("aggregate_projected: partition size mismatch");
  NodeId k = 0;
  for (Label c : p.labels()) k = std::max(k, c + 1);

  std::vector<std::tuple<NodeId, NodeId, Weight>> edges;
  for (const auto& [i, j, w] : g.edge_list()) {
    Label ci = p.label(i), cj = p.label(j);
    // A merged off-diagonal pair carries both ordered entries A_ij and A_ji
    // into the community self-loop, so 2E is preserved.
    edges.emplace_back(ci, cj, (ci == cj && i != j) ? 2 * w : w);
  }
  WeightedGraph out(k, edges);

  if (g.has_bipartite_sidecar()) {
    std::vector<Weight> degrees(k, 0);
    for (NodeId i = 0; i < g.node_count(); ++i)
      degrees[p.label(i)] += g.bipartite_degree(i);
    out.set_sidecar(std::move(degrees), g.bipartite_total(), g.side());
  }
  return out;
}

}  // namespace bipart

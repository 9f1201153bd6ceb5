#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

namespace bipart {

using NodeId = std::uint32_t;
using Weight = std::int64_t;
using Label = std::uint32_t;

enum class Side { bottom, top };

struct Edge {
  NodeId to;
  Weight w;
};

/// Undirected bipartite multigraph. Edges run only between the bottom and
/// top node sets; parallel edges are stored as integer multiplicities.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  /// Duplicate (i, j) entries in `edges` accumulate; zero-weight entries are
  /// dropped. Throws std::invalid_argument on out-of-range ids or negative
  /// weights.
  BipartiteGraph(NodeId n_bottom, NodeId n_top,
                 const std::vector<std::tuple<NodeId, NodeId, Weight>>& edges);

  NodeId n_bottom() const { return n_bottom_; }
  NodeId n_top() const { return n_top_; }

  /// F: sum of all edge multiplicities.
  Weight total_weight() const { return total_weight_; }

  /// q_i
  Weight bottom_degree(NodeId i) const { return bottom_degree_[i]; }
  /// d_j
  Weight top_degree(NodeId j) const { return top_degree_[j]; }

  /// Neighbors of bottom node i, sorted by top id.
  const std::vector<Edge>& bottom_adj(NodeId i) const { return bottom_adj_[i]; }
  /// Neighbors of top node j, sorted by bottom id.
  const std::vector<Edge>& top_adj(NodeId j) const { return top_adj_[j]; }

  /// All edges as (bottom, top, multiplicity), sorted.
  std::vector<std::tuple<NodeId, NodeId, Weight>> edge_list() const;

 private:
  NodeId n_bottom_ = 0;
  NodeId n_top_ = 0;
  Weight total_weight_ = 0;
  std::vector<Weight> bottom_degree_;
  std::vector<Weight> top_degree_;
  std::vector<std::vector<Edge>> bottom_adj_;
  std::vector<std::vector<Edge>> top_adj_;
};

/// Symmetric weighted unipartite graph (adjacency matrix view). A self-loop
/// A_ii is stored once and counts once in both the node strength
/// k_i = sum_j A_ij and the total weight 2E = sum_ij A_ij; an off-diagonal
/// entry contributes to both A_ij and A_ji, i.e. twice to 2E.
///
/// Graphs produced by project() carry a bipartite sidecar (the source
/// graph's degrees q_i and total F) which the projected-modularity null
/// model needs; plain weighted graphs leave it empty.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Undirected edge list; (i, i) entries define self-loop weight. Duplicates
  /// accumulate, zero-weight entries are dropped.
  WeightedGraph(NodeId n,
                const std::vector<std::tuple<NodeId, NodeId, Weight>>& edges);

  NodeId node_count() const { return n_; }

  /// 2E
  Weight total_weight() const { return total_weight_; }

  /// k_i (self-loop counted once)
  Weight strength(NodeId i) const { return strength_[i]; }

  /// A_ii
  Weight self_loop(NodeId i) const { return self_loop_[i]; }

  /// Off-diagonal neighbors, sorted by id (self excluded).
  const std::vector<Edge>& neighbors(NodeId i) const { return adj_[i]; }

  bool has_bipartite_sidecar() const { return !bipartite_degree_.empty(); }
  /// q_i from the source bipartite graph.
  Weight bipartite_degree(NodeId i) const { return bipartite_degree_[i]; }
  /// F from the source bipartite graph.
  Weight bipartite_total() const { return bipartite_total_; }
  Side side() const { return side_; }

  void set_sidecar(std::vector<Weight> degrees, Weight total, Side side);

  /// Upper-triangle edges (i <= j) including diagonal entries, sorted.
  std::vector<std::tuple<NodeId, NodeId, Weight>> edge_list() const;

  bool operator==(const WeightedGraph& other) const;

 private:
  NodeId n_ = 0;
  Weight total_weight_ = 0;
  std::vector<Weight> strength_;
  std::vector<Weight> self_loop_;
  std::vector<std::vector<Edge>> adj_;
  std::vector<Weight> bipartite_degree_;
  Weight bipartite_total_ = 0;
  Side side_ = Side::bottom;
};

class Partition;
class BipartitePartition;

/// One-mode weighted projection: A_ij = sum_m B_im B_jm over the opposite
/// side, diagonal retained (A_ii = sum_m B_im^2), so that
/// 2E = sum_m d_m^2 holds exactly. Attaches the bipartite sidecar.
WeightedGraph project(const BipartiteGraph& g, Side side);

/// Copy of g without diagonal entries; sidecar and node count preserved.
/// Detection runs on this view of a projection: self-loops carry no
/// community information and would otherwise dominate small cliques.
WeightedGraph strip_self_loops(const WeightedGraph& g);

/// Induced bipartite graph: B'_cm = sum_{i in c} B_im. Community labels on
/// each side are collapsed to dense ids in ascending label order; F is
/// preserved.
BipartiteGraph aggregate_bipartite(const BipartiteGraph& g,
                                   const BipartitePartition& p);

/// Induced weighted graph: A'_cd = sum_{i in c, j in d} A_ij (within-community
/// mass becomes a self-loop). Sidecar degrees aggregate additively; 2E and F
/// are preserved. Community c becomes node c of the result, so labels must be
/// dense (normalized).
WeightedGraph aggregate_projected(const WeightedGraph& g, const Partition& p);

}  // namespace bipart

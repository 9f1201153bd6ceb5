#pragma once

#include <vector>

#include "bipart/graph.hpp"
#include "bipart/partition.hpp"

namespace bipart {

enum class Objective { standard, barber, projected };

/// Objective variant plus resolution parameter lambda (> 0). lambda scales
/// the null-model term; 1 reproduces the unscaled definitions.
struct ObjectiveSpec {
  Objective kind = Objective::standard;
  double resolution = 1.0;
};

/// Q = (1/2E) sum_ij (A_ij - lambda k_i k_j / 2E) delta(c_i, c_j).
/// Self-loops of g count in both terms. Throws on 2E = 0.
double modularity_standard(const WeightedGraph& g, const Partition& p,
                           double lambda = 1.0);

/// Q_P = sum_ij (A_ij / 2E - lambda q_i q_j / F^2) delta(c_i, c_j), computed
/// per community as sum_in/2E - lambda (sum_bitot/F)^2. Requires the
/// bipartite sidecar; throws on 2E = 0 or F = 0.
double modularity_projected(const WeightedGraph& g, const Partition& p,
                            double lambda = 1.0);

/// Q_B = (1/F) sum_ij (B_ij - lambda q_i d_j / F) delta(c_i, c_j) over
/// bottom x top pairs. Throws on F = 0.
double modularity_barber(const BipartiteGraph& g, const BipartitePartition& p,
                         double lambda = 1.0);

/// Dispatch for the unipartite objectives (standard | projected).
double modularity(const WeightedGraph& g, const Partition& p,
                  const ObjectiveSpec& obj);

/// Per-community running sums for the unipartite objectives, supporting the
/// single-node move cycle of a Louvain sweep: remove a node (it becomes a
/// floating singleton), query insertion gains, insert it somewhere.
///
/// Gains are modularity deltas relative to the node sitting in a singleton
/// community, so remove-then-insert deltas telescope to the true objective
/// change. value() is only meaningful when no node is floating.
class CommunityState {
 public:
  /// Starts from the singleton partition (community i = {i}).
  CommunityState(const WeightedGraph& g, const ObjectiveSpec& obj);

  Label community_of(NodeId n) const { return comm_[n]; }
  const std::vector<Label>& labels() const { return comm_; }
  /// True when n's community contains only n.
  bool is_isolated(NodeId n) const;
  std::size_t community_count() const { return live_; }

  /// Contract-checked surface. gain_on_insert requires n isolated;
  /// gain_on_remove requires n's current community to be c. Both are pure.
  double gain_on_insert(NodeId n, Label c) const;
  double gain_on_remove(NodeId n, Label c) const;

  /// Move cycle with caller-supplied w_nc = sum of edge weights from n into
  /// community c, n excluded. The optimizer computes these once per node
  /// visit; weight_to() recomputes in O(deg) for callers that don't.
  double insert_gain(NodeId n, Label c, Weight w_nc) const;
  void remove(NodeId n, Weight w_to_own);
  void insert(NodeId n, Label c, Weight w_nc);

  /// Removes n (computing the community weight itself).
  void remove(NodeId n);
  /// Inserts floating n into c.
  void insert(NodeId n, Label c);

  Weight weight_to(NodeId n, Label c) const;
  /// Objective value of the current assignment.
  double value() const;

 private:
  const WeightedGraph& g_;
  Objective kind_;
  double lambda_;
  double inv_total_;  // 1 / 2E
  double null_scale_; // 1 / (2E)^2 or 1 / F^2
  std::vector<Label> comm_;
  std::vector<Weight> w_in_;   // ordered-pair internal weight per community
  std::vector<Weight> s_tot_;  // strength sum per community
  std::vector<Weight> s_bi_;   // bipartite degree sum (projected objective)
  std::vector<NodeId> size_;
  std::size_t live_ = 0;

  static constexpr Label kFloating = 0xffffffffu;
  Weight node_null_weight(NodeId n) const;
  Weight comm_null_sum(Label c) const;
};

/// Barber-modularity counterpart of CommunityState over a joint labelling of
/// both sides. Node u is bottom u for u < n_bottom, top u - n_bottom
/// otherwise.
class BarberState {
 public:
  /// `initial` holds one dense label per node (bottom block first); pass the
  /// identity to start from singletons.
  BarberState(const BipartiteGraph& g, double lambda,
              const std::vector<Label>& initial);

  Label community_of(NodeId u) const { return comm_[u]; }
  const std::vector<Label>& labels() const { return comm_; }
  bool is_isolated(NodeId u) const;
  std::size_t community_count() const { return live_; }
  /// Number of community slots (max initial label + 1).
  std::size_t slots() const { return size_.size(); }

  double gain_on_insert(NodeId u, Label c) const;
  double gain_on_remove(NodeId u, Label c) const;

  double insert_gain(NodeId u, Label c, Weight w_uc) const;
  void remove(NodeId u, Weight w_to_own);
  void insert(NodeId u, Label c, Weight w_uc);
  void remove(NodeId u);
  void insert(NodeId u, Label c);

  /// Weight from u to opposite-side nodes of community c.
  Weight weight_to(NodeId u, Label c) const;
  double value() const;

  NodeId node_count() const { return static_cast<NodeId>(comm_.size()); }

 private:
  const BipartiteGraph& g_;
  double lambda_;
  double inv_total_;   // 1 / F
  double null_scale_;  // 1 / F^2
  std::vector<Label> comm_;
  std::vector<Weight> w_in_;
  std::vector<Weight> s_q_;
  std::vector<Weight> s_d_;
  std::vector<NodeId> size_;
  std::size_t live_ = 0;

  static constexpr Label kFloating = 0xffffffffu;
  bool is_bottom(NodeId u) const { return u < g_.n_bottom(); }
  Weight node_degree(NodeId u) const;
};

}  // namespace bipart

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bipart/graph.hpp"
#include "bipart/modularity.hpp"
#include "bipart/partition.hpp"

namespace bipart {

enum class NodeOrder { shuffled, fixed };

struct LouvainConfig {
  ObjectiveSpec objective{};
  std::uint64_t seed = 0;
  int restarts = 10;
  double min_gain = 1e-9;   // a move must beat this to be accepted
  int max_levels = 0;       // 0 = unbounded
  NodeOrder node_order = NodeOrder::shuffled;  // re-shuffled each restart
};

/// Outcome of one detection algorithm. `partition` always labels the nodes
/// the algorithm was scored on (bottom side for the bipartite detectors);
/// the bipartite detectors additionally expose the joint labelling.
/// objective_value is the algorithm's own objective, recomputed from scratch
/// on the returned partition.
struct DetectionResult {
  Partition partition;
  std::optional<BipartitePartition> joint;
  double objective_value = 0.0;
  int levels = 0;
  std::string algorithm;

  std::size_t community_count() const {
    return joint ? joint->community_count() : partition.community_count();
  }
};

/// Two-phase Louvain on a weighted unipartite graph under the Standard or
/// Projected objective. Runs cfg.restarts independent restarts and returns
/// the best (ties: fewest communities, then earliest restart). A graph with
/// nodes but no edges yields the singleton partition with value 0.
DetectionResult louvain(const WeightedGraph& g, const LouvainConfig& cfg);

/// The five algorithms. Each overrides cfg.objective.kind with its own
/// objective (cfg.objective.resolution is honoured); seed/restarts/min_gain/
/// node_order apply as given.
///
/// naive      — Standard Q on the (N+M)-node graph of the bipartite edges.
/// bilouvain  — Barber Q_B with alternating bottom/top sweeps, whole-
///              community merge moves (a community's two sides only gain by
///              moving together), and bipartite aggregation; communities may
///              mix sides.
/// dual       — Projected Q_P on both one-mode projections, then greedy
///              best-pair merging of the two community sets by delta Q_B
///              until the best merge of connected communities is negative
///              (exact zero-gain merges are taken).
/// standard   — Standard Q on the bottom projection.
/// projected  — Projected Q_P on the bottom projection.
///
/// Detection runs on self-loop-free projections (see strip_self_loops).
DetectionResult detect_naive(const BipartiteGraph& g, const LouvainConfig& cfg);
DetectionResult detect_bilouvain(const BipartiteGraph& g,
                                 const LouvainConfig& cfg);
DetectionResult detect_dual_projection(const BipartiteGraph& g,
                                       const LouvainConfig& cfg);
DetectionResult detect_standard(const BipartiteGraph& g,
                                const LouvainConfig& cfg);
DetectionResult detect_projected(const BipartiteGraph& g,
                                 const LouvainConfig& cfg);

/// Argmax by objective_value; ties broken by fewest communities, then by
/// position in `results` (seed order). All entries must share one algorithm.
DetectionResult best_of(const std::vector<DetectionResult>& results);

}  // namespace bipart

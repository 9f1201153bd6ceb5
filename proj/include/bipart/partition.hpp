#pragma once

#include <cstddef>
#include <vector>

#include "bipart/graph.hpp"

namespace bipart {

/// Node -> community label assignment. Labels are arbitrary non-negative
/// integers; normalized() remaps them to 0..k-1 in first-appearance order.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<Label> labels) : labels_(std::move(labels)) {}

  static Partition identity(std::size_t n);
  static Partition all_in_one(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  Label label(NodeId i) const { return labels_[i]; }
  const std::vector<Label>& labels() const { return labels_; }

  std::size_t community_count() const;
  Partition normalized() const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<Label> labels_;
};

/// Joint labelling of both sides of a bipartite graph. The two vectors share
/// one label namespace, so a community may span the sides.
class BipartitePartition {
 public:
  BipartitePartition() = default;
  BipartitePartition(std::vector<Label> bottom, std::vector<Label> top)
      : bottom_(std::move(bottom)), top_(std::move(top)) {}

  const std::vector<Label>& bottom_labels() const { return bottom_; }
  const std::vector<Label>& top_labels() const { return top_; }

  std::size_t community_count() const;
  /// Joint relabelling to 0..k-1, first appearance over bottom then top.
  BipartitePartition normalized() const;

  /// Bottom-side labels as a Partition (joint labels kept as-is).
  Partition bottom_partition() const { return Partition(bottom_); }

  bool operator==(const BipartitePartition&) const = default;

 private:
  std::vector<Label> bottom_;
  std::vector<Label> top_;
};

}  // namespace bipart

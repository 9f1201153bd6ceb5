#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bipart/graph.hpp"
#include "bipart/partition.hpp"

namespace bipart {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class EdgeListFormat { konect, plain };

/// A loaded graph plus the original node ids (internal id -> file id), kept
/// so partitions can be written back in the input's id space.
struct LoadedBipartite {
  BipartiteGraph graph;
  std::vector<std::int64_t> bottom_ids;
  std::vector<std::int64_t> top_ids;
};

/// Edge-list text: '%' lines are comments, data lines are "i j [w [t]]"
/// (weight defaults to 1, timestamps ignored, duplicates accumulate).
/// konect ids are 1-based; plain ids are 0-based. A comment line carrying
/// three integers "% <edges> <n_bottom> <n_top>" (the KONECT size header)
/// fixes the side sizes so isolated trailing nodes survive; without it,
/// konect ids are compacted in first-appearance order and plain sizes are
/// max id + 1. Malformed lines raise ParseError with the line number.
LoadedBipartite read_edge_list(std::istream& in, EdgeListFormat format);

/// Plain format with the size header; reload with EdgeListFormat::plain
/// reproduces the same edge multiset.
void write_edge_list(std::ostream& out, const BipartiteGraph& g);

/// One "id<TAB>label" line per node; ids come from `ids` when given (else the
/// dense internal ids).
void write_partition(std::ostream& out, const Partition& p,
                     const std::vector<std::int64_t>* ids = nullptr);

/// Bipartite flavour: ids prefixed with side markers, "b<id>" then "t<id>".
void write_partition(std::ostream& out, const BipartitePartition& p,
                     const std::vector<std::int64_t>* bottom_ids = nullptr,
                     const std::vector<std::int64_t>* top_ids = nullptr);

/// Partition file as written by write_partition. Keys keep their textual
/// form ("7" or "b7"/"t7"); `bipartite` reports whether side markers appear.
struct LoadedPartition {
  bool bipartite = false;
  std::vector<std::pair<std::string, Label>> entries;  // file order
};
LoadedPartition read_partition(std::istream& in);

/// "i j w" lines, upper triangle including diagonal entries, sorted.
void write_projection(std::ostream& out, const WeightedGraph& g);

}  // namespace bipart

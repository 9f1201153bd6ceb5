#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bipart/graph.hpp"
#include "bipart/rng.hpp"

namespace bipart {

/// Joint label counts of a (class, cluster) pairing. Labels are compacted
/// internally, so arbitrary label values are accepted.
struct ContingencyTable {
  std::unordered_map<std::uint64_t, std::int64_t> counts;  // class<<32 | cluster
  std::vector<std::int64_t> class_totals;
  std::vector<std::int64_t> cluster_totals;
  std::int64_t n = 0;

  static ContingencyTable build(const std::vector<Label>& classes,
                                const std::vector<Label>& clusters);
};

struct SimilarityScores {
  double homogeneity = 0.0;
  double completeness = 0.0;
  double v_measure = 0.0;
};

/// 1 - H(class|cluster)/H(class), natural-log entropies; 1 when H(class)=0.
double homogeneity(const std::vector<Label>& target,
                   const std::vector<Label>& found);

/// Mirror image: completeness(t, f) == homogeneity(f, t).
double completeness(const std::vector<Label>& target,
                    const std::vector<Label>& found);

/// All three scores; V = 2HC/(H+C), or 0 when H + C = 0.
SimilarityScores v_measure(const std::vector<Label>& target,
                           const std::vector<Label>& found);

/// Percentile bootstrap interval of the mean. Needs >= 2 samples; level in
/// (0, 1). Deterministic for a fixed rng state.
std::pair<double, double> bootstrap_ci(const std::vector<double>& samples,
                                       double level, int resamples, Rng& rng);

}  // namespace bipart

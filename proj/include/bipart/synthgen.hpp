#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bipart/graph.hpp"
#include "bipart/partition.hpp"
#include "bipart/rng.hpp"

namespace bipart {

struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Per-side degree distribution of a planted block.
struct DegreeSpec {
  enum class Family { poisson, power_law };
  Family family = Family::poisson;
  double lambda = 5.0;  // Poisson mean
  double mu = 3.0;      // power-law exponent, > 1
  int d_min = 1;        // power-law support
  int d_max = 0;        // 0 = automatic cutoff (see sample_degree_sequence)

  void validate() const;
  std::string to_string() const;
  /// Accepts "poisson:<lambda>" and "power:<mu>[:<d_min>[:<d_max>|auto]]".
  static DegreeSpec parse(const std::string& text);
};

struct BenchmarkSpec {
  int communities = 4;
  int n_bottom = 250;  // bottom nodes per community (before balancing)
  int n_top = 250;     // top nodes per community
  DegreeSpec bottom, top;
  double p = 0.0;  // mixing: fraction of edges cut and rewired globally
  std::uint64_t seed = 0;

  void validate() const;
};

struct Benchmark {
  BipartiteGraph graph;
  BipartitePartition target;  // planted labels, block k on both sides
};

/// n degrees >= 1. Poisson zeros are resampled; the power law is sampled by
/// discrete inverse CDF on [d_min, d_max] with P(d) proportional to d^-mu.
/// d_max = 0 resolves to ceil(sqrt(n * mean)) capped at n, with the mean
/// estimated on support [d_min, n].
std::vector<int> sample_degree_sequence(const DegreeSpec& spec, int n,
                                        Rng& rng);

/// Equalizes the two degree sums: repeatedly draws one element of the
/// larger-sum list uniformly; deletes it if that cannot overshoot, otherwise
/// decrements the drawn element by the residual (keeping it >= 1). Returns
/// false when a side would be exhausted (caller retries with a fresh seed).
bool balance_sequences(std::vector<int>& q, std::vector<int>& d, Rng& rng);

/// Configuration-model matching: stub lists expanded by degree, the top list
/// shuffled and paired positionally. Parallel pairs become multiplicities.
/// Requires equal sums.
BipartiteGraph stub_match(const std::vector<int>& q, const std::vector<int>& d,
                          Rng& rng);

/// C independent blocks (sample -> balance -> stub_match), relabelled into one
/// graph; then round(p*F) edge instances are drawn uniformly without
/// replacement, removed, and their stubs re-paired uniformly across the whole
/// graph. Every node keeps its degree exactly; F is unchanged.
Benchmark generate(const BenchmarkSpec& spec);

}  // namespace bipart

#include "bipart/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace bipart {

namespace {

constexpr std::uint64_t kSaltBlock = 0x626c6bu;
constexpr std::uint64_t kSaltRewire = 0x727765u;

int auto_cutoff(const DegreeSpec& spec, int n) {
  // Mean of P(d) ~ d^-mu estimated on [d_min, n], then the structural-style
  // cutoff sqrt(n * mean), clamped into [d_min, n].
  double norm = 0.0, mean = 0.0;
  for (int d = spec.d_min; d <= n; ++d) {
    const double w = std::pow(static_cast<double>(d), -spec.mu);
    norm += w;
    mean += d * w;
  }
  mean /= norm;
  const int cutoff = static_cast<int>(std::ceil(std::sqrt(n * mean)));
  return std::clamp(cutoff, spec.d_min, n);
}

}  // namespace

void DegreeSpec::validate() const {
  if (family == Family::poisson) {
    if (!(lambda > 0)) throw std::invalid_argument("DegreeSpec: lambda <= 0");
  } else {
    if (!(mu > 1)) throw std::invalid_argument("DegreeSpec: mu <= 1");
    if (d_min < 1) throw std::invalid_argument("DegreeSpec: d_min < 1");
    if (d_max != 0 && d_max < d_min)
      throw std::invalid_argument("DegreeSpec: d_max < d_min");
  }
}

std::string DegreeSpec::to_string() const {
  char buf[64];
  if (family == Family::poisson) {
    std::snprintf(buf, sizeof buf, "poisson:%g", lambda);
    return buf;
  }
  if (d_max == 0) {
    std::snprintf(buf, sizeof buf, "power:%g:%d:auto", mu, d_min);
  } else {
    std::snprintf(buf, sizeof buf, "power:%g:%d:%d", mu, d_min, d_max);
  }
  return buf;
}

DegreeSpec DegreeSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  auto num = [&](std::size_t idx) {
    std::size_t used = 0;
    double v = std::stod(parts[idx], &used);
    if (used != parts[idx].size())
      throw std::invalid_argument("DegreeSpec: bad number in '" + text + "'");
    return v;
  };

  DegreeSpec spec;
  try {
    if (parts[0] == "poisson") {
      if (parts.size() != 2)
        throw std::invalid_argument("DegreeSpec: expected poisson:<lambda>");
      spec.family = Family::poisson;
      spec.lambda = num(1);
    } else if (parts[0] == "power") {
      if (parts.size() < 2 || parts.size() > 4)
        throw std::invalid_argument(
            "DegreeSpec: expected power:<mu>[:<d_min>[:<d_max>]]");
      spec.family = Family::power_law;
      spec.mu = num(1);
      if (parts.size() >= 3) spec.d_min = static_cast<int>(num(2));
      if (parts.size() == 4)
        spec.d_max = parts[3] == "auto" ? 0 : static_cast<int>(num(3));
    } else {
      throw std::invalid_argument("DegreeSpec: unknown family '" + parts[0] +
                                  "'");
    }
  } catch (const std::logic_error&) {
    throw std::invalid_argument("DegreeSpec: cannot parse '" + text + "'");
  }
  spec.validate();
  return spec;
}

void BenchmarkSpec::validate() const {
  if (communities < 1) throw std::invalid_argument("BenchmarkSpec: C < 1");
  if (n_bottom < 1 || n_top < 1)
    throw std::invalid_argument("BenchmarkSpec: empty side");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("BenchmarkSpec: p outside [0,1]");
  bottom.validate();
  top.validate();
}

std::vector<int> sample_degree_sequence(const DegreeSpec& spec, int n,
                                        Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample_degree_sequence: n < 1");
  spec.validate();
  std::vector<int> out(n);
  if (spec.family == DegreeSpec::Family::poisson) {
    for (int& d : out) {
      long k;
      do {
        k = poisson_sample(rng, spec.lambda);
      } while (k == 0);
      d = static_cast<int>(k);
    }
    return out;
  }

  const int hi = spec.d_max == 0 ? auto_cutoff(spec, n) : spec.d_max;
  const int lo = std::min(spec.d_min, hi);
  std::vector<double> cdf(hi - lo + 1);
  double acc = 0.0;
  for (int d = lo; d <= hi; ++d) {
    acc += std::pow(static_cast<double>(d), -spec.mu);
    cdf[d - lo] = acc;
  }
  for (int& d : out) {
    const double x = uniform_real(rng) * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
    d = lo + static_cast<int>(std::min<std::ptrdiff_t>(
                 it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
  }
  return out;
}

bool balance_sequences(std::vector<int>& q, std::vector<int>& d, Rng& rng) {
  if (q.empty() || d.empty())
    throw std::invalid_argument("balance_sequences: empty list");
  auto sum = [](const std::vector<int>& v) {
    return std::accumulate(v.begin(), v.end(), std::int64_t{0});
  };
  std::int64_t sq = sum(q), sd = sum(d);
  while (sq != sd) {
    std::vector<int>& larger = sq > sd ? q : d;
    std::int64_t& larger_sum = sq > sd ? sq : sd;
    const std::int64_t diff = sq > sd ? sq - sd : sd - sq;
    if (larger.empty()) return false;
    const std::size_t idx =
        static_cast<std::size_t>(uniform_below(rng, larger.size()));
    if (larger[idx] <= diff) {
      larger_sum -= larger[idx];
      larger.erase(larger.begin() + static_cast<std::ptrdiff_t>(idx));
    } else {
      // Deleting the drawn node would overshoot; shave the residual off it
      // instead (result stays >= 1 because degree > diff).
      larger[idx] -= static_cast<int>(diff);
      larger_sum -= diff;
    }
  }
  return !q.empty() && !d.empty();
}

BipartiteGraph stub_match(const std::vector<int>& q, const std::vector<int>& d,
                          Rng& rng) {
  std::int64_t sq = std::accumulate(q.begin(), q.end(), std::int64_t{0});
  std::int64_t sd = std::accumulate(d.begin(), d.end(), std::int64_t{0});
  if (sq != sd) throw std::invalid_argument("stub_match: unbalanced sums");

  std::vector<NodeId> bottom_stubs, top_stubs;
  bottom_stubs.reserve(static_cast<std::size_t>(sq));
  top_stubs.reserve(static_cast<std::size_t>(sq));
  for (NodeId i = 0; i < q.size(); ++i)
    bottom_stubs.insert(bottom_stubs.end(), q[i], i);
  for (NodeId j = 0; j < d.size(); ++j)
    top_stubs.insert(top_stubs.end(), d[j], j);
  shuffle_vec(top_stubs, rng);

  std::vector<std::tuple<NodeId, NodeId, Weight>> edges;
  edges.reserve(bottom_stubs.size());
  for (std::size_t t = 0; t < bottom_stubs.size(); ++t)
    edges.emplace_back(bottom_stubs[t], top_stubs[t], 1);
  return BipartiteGraph(static_cast<NodeId>(q.size()),
                        static_cast<NodeId>(d.size()), edges);
}

Benchmark generate(const BenchmarkSpec& spec) {
  spec.validate();

  std::vector<std::tuple<NodeId, NodeId, Weight>> edges;
  std::vector<Label> bottom_labels, top_labels;
  NodeId nb = 0, nt = 0;

  for (int k = 0; k < spec.communities; ++k) {
    BipartiteGraph block;
    bool ok = false;
    for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
      Rng rng = make_rng(seed_stream(spec.seed, kSaltBlock,
                                     static_cast<std::uint64_t>(k),
                                     static_cast<std::uint64_t>(attempt)));
      std::vector<int> q = sample_degree_sequence(spec.bottom, spec.n_bottom, rng);
      std::vector<int> d = sample_degree_sequence(spec.top, spec.n_top, rng);
      if (!balance_sequences(q, d, rng)) continue;
      block = stub_match(q, d, rng);
      ok = true;
    }
    if (!ok)
      throw GenerationError("generate: block " + std::to_string(k) +
                            " could not be balanced");
    for (const auto& [i, j, w] : block.edge_list())
      edges.emplace_back(nb + i, nt + j, w);
    nb += block.n_bottom();
    nt += block.n_top();
    bottom_labels.insert(bottom_labels.end(), block.n_bottom(),
                         static_cast<Label>(k));
    top_labels.insert(top_labels.end(), block.n_top(), static_cast<Label>(k));
  }

  Weight f = 0;
  for (const auto& [i, j, w] : edges) f += w;
  const auto cut_target = std::llround(spec.p * static_cast<double>(f));

  if (cut_target > 0) {
    Rng rng = make_rng(seed_stream(spec.seed, kSaltRewire));
    std::vector<std::uint32_t> instances;
    instances.reserve(static_cast<std::size_t>(f));
    for (std::uint32_t e = 0; e < edges.size(); ++e)
      instances.insert(instances.end(),
                       static_cast<std::size_t>(std::get<2>(edges[e])), e);

    const std::size_t r = static_cast<std::size_t>(cut_target);
    for (std::size_t t = 0; t < r; ++t) {
      const std::size_t pick =
          t + static_cast<std::size_t>(uniform_below(rng, instances.size() - t));
      std::swap(instances[t], instances[pick]);
    }

    std::vector<NodeId> bottom_stubs, top_stubs;
    bottom_stubs.reserve(r);
    top_stubs.reserve(r);
    for (std::size_t t = 0; t < r; ++t) {
      auto& [i, j, w] = edges[instances[t]];
      --w;
      bottom_stubs.push_back(i);
      top_stubs.push_back(j);
    }
    shuffle_vec(top_stubs, rng);
    for (std::size_t t = 0; t < r; ++t)
      edges.emplace_back(bottom_stubs[t], top_stubs[t], 1);
  }

  Benchmark bench;
  bench.graph = BipartiteGraph(nb, nt, edges);
  bench.target =
      BipartitePartition(std::move(bottom_labels), std::move(top_labels));
  return bench;
}

}  // namespace bipart

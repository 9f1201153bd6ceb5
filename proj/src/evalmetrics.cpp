#include "bipart/evalmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bipart {

namespace {

std::vector<Label> compact(const std::vector<Label>& labels) {
  std::unordered_map<Label, Label> map;
  std::vector<Label> out;
  out.reserve(labels.size());
  for (Label l : labels) {
    auto [it, ignored] = map.try_emplace(l, static_cast<Label>(map.size()));
    out.push_back(it->second);
  }
  return out;
}

double entropy(const std::vector<std::int64_t>& totals, std::int64_t n) {
  double h = 0.0;
  for (std::int64_t t : totals) {
    if (t == 0) continue;
    const double p = static_cast<double>(t) / static_cast<double>(n);
    h -= p * std::log(p);
  }
  return h;
}

// H(class | cluster) from the joint counts.
double conditional_entropy(const ContingencyTable& table) {
  double h = 0.0;
  for (const auto& [key, count] : table.counts) {
    const std::int64_t cluster_total =
        table.cluster_totals[key & 0xffffffffu];
    h -= static_cast<double>(count) / static_cast<double>(table.n) *
         std::log(static_cast<double>(count) /
                  static_cast<double>(cluster_total));
  }
  return h;
}

}  // namespace

ContingencyTable ContingencyTable::build(const std::vector<Label>& classes,
                                         const std::vector<Label>& clusters) {
  if (classes.size() != clusters.size())
    throw std::invalid_argument("ContingencyTable: length mismatch");
  if (classes.empty())
    throw std::invalid_argument("ContingencyTable: empty labelling");
  const std::vector<Label> cls = compact(classes);
  const std::vector<Label> clu = compact(clusters);

  ContingencyTable t;
  t.n = static_cast<std::int64_t>(cls.size());
  t.class_totals.assign(1 + *std::max_element(cls.begin(), cls.end()), 0);
  t.cluster_totals.assign(1 + *std::max_element(clu.begin(), clu.end()), 0);
  for (std::size_t i = 0; i < cls.size(); ++i) {
    ++t.class_totals[cls[i]];
    ++t.cluster_totals[clu[i]];
    ++t.counts[(static_cast<std::uint64_t>(cls[i]) << 32) | clu[i]];
  }
  return t;
}

double homogeneity(const std::vector<Label>& target,
                   const std::vector<Label>& found) {
  const ContingencyTable t = ContingencyTable::build(target, found);
  const double h_class = entropy(t.class_totals, t.n);
  if (h_class == 0.0) return 1.0;
  return 1.0 - conditional_entropy(t) / h_class;
}

double completeness(const std::vector<Label>& target,
                    const std::vector<Label>& found) {
  return homogeneity(found, target);
}

SimilarityScores v_measure(const std::vector<Label>& target,
                           const std::vector<Label>& found) {
  SimilarityScores s;
  s.homogeneity = homogeneity(target, found);
  s.completeness = completeness(target, found);
  s.v_measure = s.homogeneity + s.completeness > 0.0
                    ? 2.0 * s.homogeneity * s.completeness /
                          (s.homogeneity + s.completeness)
                    : 0.0;
  return s;
}

std::pair<double, double> bootstrap_ci(const std::vector<double>& samples,
                                       double level, int resamples, Rng& rng) {
  if (samples.size() < 2)
    throw std::invalid_argument("bootstrap_ci: need at least 2 samples");
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("bootstrap_ci: level outside (0,1)");
  if (resamples < 1)
    throw std::invalid_argument("bootstrap_ci: resamples < 1");

  const std::size_t n = samples.size();
  std::vector<double> means(static_cast<std::size_t>(resamples));
  for (double& m : means) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      sum += samples[static_cast<std::size_t>(uniform_below(rng, n))];
    m = sum / static_cast<double>(n);
  }
  std::sort(means.begin(), means.end());

  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(means.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, means.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return means[lo] + frac * (means[hi] - means[lo]);
  };
  const double alpha = (1.0 - level) / 2.0;
  return {quantile(alpha), quantile(1.0 - alpha)};
}

}  // namespace bipart

#include "bipart/partition.hpp"

#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace bipart {

namespace {

// First-appearance dense relabelling shared by both partition flavours.
std::vector<Label> remap(const std::vector<Label>& labels,
                         std::unordered_map<Label, Label>& map) {
  std::vector<Label> out;
  out.reserve(labels.size());
  for (Label l : labels) {
    auto [it, inserted] = map.try_emplace(l, static_cast<Label>(map.size()));
    out.push_back(it->second);
  }
  return out;
}

}  // namespace

Partition Partition::identity(std::size_t n) {
  std::vector<Label> labels(n);
  std::iota(labels.begin(), labels.end(), 0u);
  return Partition(std::move(labels));
}

Partition Partition::all_in_one(std::size_t n) {
  return Partition(std::vector<Label>(n, 0));
}

std::size_t Partition::community_count() const {
  std::unordered_set<Label> distinct(labels_.begin(), labels_.end());
  return distinct.size();
}

Partition Partition::normalized() const {
  std::unordered_map<Label, Label> map;
  return Partition(remap(labels_, map));
}

std::size_t BipartitePartition::community_count() const {
  std::unordered_set<Label> distinct(bottom_.begin(), bottom_.end());
  distinct.insert(top_.begin(), top_.end());
  return distinct.size();
}

BipartitePartition BipartitePartition::normalized() const {
  std::unordered_map<Label, Label> map;
  std::vector<Label> nb = remap(bottom_, map);
  std::vector<Label> nt = remap(top_, map);
  return BipartitePartition(std::move(nb), std::move(nt));
}

}  // namespace bipart

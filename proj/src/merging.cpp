#include "sortclust/merging.hpp"

#include "sortclust/disjoint_set.hpp"

#include <map>
#include <numeric>

namespace sortclust {

GroupClusterMap canonical_cluster_map(const std::vector<int>& key_of_group,
                                      const std::vector<Index>& group_sizes) {
  if (key_of_group.size() != group_sizes.size())
    throw ParameterError("group sizes and component keys disagree in length");

  struct Component {
    Index size = 0;
    std::size_t first_group = 0;
    int id = kOutlier;
  };
  std::map<int, Component> components;
  for (std::size_t g = 0; g < key_of_group.size(); ++g) {
    if (key_of_group[g] == kOutlier) continue;
    auto [it, inserted] = components.try_emplace(key_of_group[g]);
    if (inserted) it->second.first_group = g;
    it->second.size += group_sizes[g];
  }

  std::vector<Component*> order;
  order.reserve(components.size());
  for (auto& [key, comp] : components) order.push_back(&comp);
  std::sort(order.begin(), order.end(), [](const Component* a, const Component* b) {
    if (a->size != b->size) return a->size > b->size;
    return a->first_group < b->first_group;
  });

  GroupClusterMap out;
  out.k = static_cast<int>(order.size());
  out.sizes.reserve(order.size());
  for (std::size_t c = 0; c < order.size(); ++c) {
    order[c]->id = static_cast<int>(c);
    out.sizes.push_back(order[c]->size);
  }
  out.cluster_of_group.resize(key_of_group.size(), kOutlier);
  for (std::size_t g = 0; g < key_of_group.size(); ++g)
    if (key_of_group[g] != kOutlier) out.cluster_of_group[g] = components.at(key_of_group[g]).id;
  return out;
}

GroupClusterMap connected_components(const MergeGraph& graph,
                                     const std::vector<Index>& group_sizes) {
  const auto l = static_cast<std::size_t>(graph.num_groups);
  if (group_sizes.size() != l) throw ParameterError("one size per group required");
  DisjointSet sets(l);
  for (const auto& [i, j] : graph.edges) {
    if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= l || static_cast<std::size_t>(j) >= l)
      throw ParameterError("merge edge refers to a nonexistent group");
    sets.unite(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  std::vector<int> root(l);
  for (std::size_t g = 0; g < l; ++g) root[g] = static_cast<int>(sets.find(g));
  return canonical_cluster_map(root, group_sizes);
}

}  // namespace sortclust

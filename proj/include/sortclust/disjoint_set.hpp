#pragma once

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace sortclust {

/// Union-find with path compression and union by size.
class DisjointSet {
public:
  explicit DisjointSet(std::size_t size) : parent_(size), size_(size, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) x = std::exchange(parent_[x], root);
    return root;
  }

  /// Returns false when x and y were already connected.
  bool unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (size_[x] < size_[y]) std::swap(x, y);
    parent_[y] = x;
    size_[x] += size_[y];
    return true;
  }

  std::size_t size() const { return parent_.size(); }

private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace sortclust

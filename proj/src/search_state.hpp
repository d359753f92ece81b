#pragma once

#include <cstdint>
#include <vector>

#include "nervelab/kernels.hpp"

namespace nervelab::kernels::detail {

/// Partial family assignment with a union-find over monochromatic
/// components. Each root carries the intersection of allowed masks of its
/// component; undo reverts the most recent successful assign().
class SearchState {
 public:
  explicit SearchState(const ColoringProblem& problem)
      : problem_(&problem),
        family_(problem.allowed.size(), -1),
        parent_(problem.allowed.size()),
        size_(problem.allowed.size(), 1),
        mask_(problem.allowed.size(), 0) {
    for (std::size_t v = 0; v < parent_.size(); ++v) parent_[v] = static_cast<int>(v);
  }

  int vertex_count() const { return static_cast<int>(family_.size()); }
  int families() const { return problem_->families; }

  bool assign(int v, int k) {
    std::uint64_t m = problem_->allowed[static_cast<std::size_t>(v)][static_cast<std::size_t>(k)];
    if (m == 0) return false;
    roots_.clear();
    for (int u : problem_->neighbors[static_cast<std::size_t>(v)]) {
      if (family_[static_cast<std::size_t>(u)] != k) continue;
      const int r = find(u);
      bool seen = false;
      for (int x : roots_) seen |= x == r;
      if (seen) continue;
      roots_.push_back(r);
      m &= mask_[static_cast<std::size_t>(r)];
      if (m == 0) return false;
    }

    Frame frame;
    frame.vertex = v;
    int root = v;
    std::int64_t total = 1;
    for (int r : roots_) {
      total += size_[static_cast<std::size_t>(r)];
      if (size_[static_cast<std::size_t>(r)] > size_[static_cast<std::size_t>(root)]) root = r;
    }
    frame.root = root;
    frame.old_mask = mask_[static_cast<std::size_t>(root)];
    frame.old_size = size_[static_cast<std::size_t>(root)];
    if (root != v) frame.attached.push_back(v);
    for (int r : roots_)
      if (r != root) frame.attached.push_back(r);
    for (int a : frame.attached) parent_[static_cast<std::size_t>(a)] = root;
    family_[static_cast<std::size_t>(v)] = k;
    mask_[static_cast<std::size_t>(root)] = m;
    size_[static_cast<std::size_t>(root)] = total;
    frames_.push_back(std::move(frame));
    return true;
  }

  void undo() {
    Frame f = std::move(frames_.back());
    frames_.pop_back();
    for (int a : f.attached) parent_[static_cast<std::size_t>(a)] = a;
    mask_[static_cast<std::size_t>(f.root)] = f.old_mask;
    size_[static_cast<std::size_t>(f.root)] = f.old_size;
    family_[static_cast<std::size_t>(f.vertex)] = -1;
    parent_[static_cast<std::size_t>(f.vertex)] = f.vertex;
    size_[static_cast<std::size_t>(f.vertex)] = 1;
  }

  std::vector<int> families_of_vertices() const { return family_; }

 private:
  struct Frame {
    int vertex = 0;
    int root = 0;
    std::uint64_t old_mask = 0;
    std::int64_t old_size = 1;
    std::vector<int> attached;
  };

  int find(int v) const {
    while (parent_[static_cast<std::size_t>(v)] != v) v = parent_[static_cast<std::size_t>(v)];
    return v;
  }

  const ColoringProblem* problem_;
  std::vector<int> family_;
  std::vector<int> parent_;
  std::vector<std::int64_t> size_;
  std::vector<std::uint64_t> mask_;
  std::vector<Frame> frames_;
  std::vector<int> roots_;
};

}  // namespace nervelab::kernels::detail

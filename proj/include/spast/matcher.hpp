#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace spast {

// Many-to-one bipartite matching under right-vertex capacities and optional
// capacities on groups of right vertices (projects grouped by lecturer).
// Augmenting paths run over the residual network, so a path may shift load
// between projects of one group to free room at the group level.
class CapacitatedMatcher {
 public:
  CapacitatedMatcher(std::size_t num_left, std::vector<int> right_caps);
  CapacitatedMatcher(std::size_t num_left, std::vector<int> right_caps, std::vector<int> right_group,
                     std::vector<int> group_caps);

  void add_edge(std::size_t left, std::size_t right);

  // Assign directly when both the right vertex and its group have room.
  bool try_assign(std::size_t left, std::size_t right);
  // One BFS from a free left vertex; true if the matching grew.
  bool augment(std::size_t left);
  // Repeated passes over free left vertices until none augments. Returns the
  // number of vertices newly matched.
  std::size_t augment_all();
  std::size_t augment_all(const std::vector<std::size_t>& candidates);

  // Augmenting paths never reduce the load of a protected right vertex.
  void protect(std::size_t right) { protected_[right] = true; }

  std::optional<std::size_t> mate(std::size_t left) const;
  int load(std::size_t right) const { return load_[right]; }
  int group_load(std::size_t group) const { return group_load_[group]; }
  std::size_t size() const { return matched_; }
  std::size_t num_left() const { return adj_.size(); }
  std::size_t num_right() const { return cap_.size(); }
  const std::vector<std::size_t>& neighbours(std::size_t left) const { return adj_[left]; }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  bool has_room(std::size_t right) const;
  void move(std::size_t left, std::size_t right);

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<int> cap_;
  std::vector<int> group_;  // empty when ungrouped
  std::vector<int> group_cap_;
  std::vector<std::vector<std::size_t>> group_members_;
  std::vector<std::size_t> mate_;
  std::vector<std::vector<std::size_t>> assigned_;
  std::vector<int> load_;
  std::vector<int> group_load_;
  std::vector<bool> protected_;
  std::size_t matched_ = 0;

  // BFS scratch, reused across calls.
  std::vector<std::size_t> parent_;
  std::vector<unsigned> seen_;
  unsigned stamp_ = 0;
};

}  // namespace spast

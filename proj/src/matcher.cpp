#include "spast/matcher.hpp"

#include <algorithm>
#include <cassert>

namespace spast {

CapacitatedMatcher::CapacitatedMatcher(std::size_t num_left, std::vector<int> right_caps)
    : CapacitatedMatcher(num_left, std::move(right_caps), {}, {}) {}

CapacitatedMatcher::CapacitatedMatcher(std::size_t num_left, std::vector<int> right_caps,
                                       std::vector<int> right_group, std::vector<int> group_caps)
    : adj_(num_left),
      cap_(std::move(right_caps)),
      group_(std::move(right_group)),
      group_cap_(std::move(group_caps)),
      group_members_(group_cap_.size()),
      mate_(num_left, kNone),
      assigned_(cap_.size()),
      load_(cap_.size(), 0),
      group_load_(group_cap_.size(), 0),
      protected_(cap_.size(), false) {
  assert(group_.empty() || group_.size() == cap_.size());
  for (std::size_t r = 0; r < group_.size(); ++r) group_members_[static_cast<std::size_t>(group_[r])].push_back(r);
  const std::size_t nodes = num_left + cap_.size() + group_cap_.size();
  parent_.assign(nodes, kNone);
  seen_.assign(nodes, 0);
}

void CapacitatedMatcher::add_edge(std::size_t left, std::size_t right) { adj_[left].push_back(right); }

std::optional<std::size_t> CapacitatedMatcher::mate(std::size_t left) const {
  if (mate_[left] == kNone) return std::nullopt;
  return mate_[left];
}

bool CapacitatedMatcher::has_room(std::size_t right) const {
  if (load_[right] >= cap_[right]) return false;
  if (group_.empty()) return true;
  const auto g = static_cast<std::size_t>(group_[right]);
  return group_load_[g] < group_cap_[g];
}

void CapacitatedMatcher::move(std::size_t left, std::size_t right) {
  const std::size_t old = mate_[left];
  if (old != kNone) {
    auto& v = assigned_[old];
    v.erase(std::find(v.begin(), v.end(), left));
    --load_[old];
    if (!group_.empty()) --group_load_[static_cast<std::size_t>(group_[old])];
  } else {
    ++matched_;
  }
  mate_[left] = right;
  assigned_[right].push_back(left);
  ++load_[right];
  if (!group_.empty()) ++group_load_[static_cast<std::size_t>(group_[right])];
}

bool CapacitatedMatcher::try_assign(std::size_t left, std::size_t right) {
  if (mate_[left] != kNone || !has_room(right)) return false;
  move(left, right);
  return true;
}

bool CapacitatedMatcher::augment(std::size_t start) {
  if (mate_[start] != kNone) return false;
  const std::size_t L = adj_.size();
  const std::size_t R = cap_.size();
  const auto right_node = [L](std::size_t r) { return L + r; };
  const auto group_node = [L, R](std::size_t g) { return L + R + g; };

  if (++stamp_ == 0) {
    std::fill(seen_.begin(), seen_.end(), 0);
    stamp_ = 1;
  }
  std::vector<std::size_t> queue{start};
  seen_[start] = stamp_;
  parent_[start] = kNone;
  std::size_t terminal = kNone;

  auto visit = [&](std::size_t node, std::size_t from) {
    if (seen_[node] == stamp_) return false;
    seen_[node] = stamp_;
    parent_[node] = from;
    queue.push_back(node);
    return true;
  };

  for (std::size_t head = 0; head < queue.size() && terminal == kNone; ++head) {
    const std::size_t node = queue[head];
    if (node < L) {
      for (std::size_t r : adj_[node]) {
        if (r == mate_[node]) continue;
        visit(right_node(r), node);
      }
    } else if (node < L + R) {
      const std::size_t r = node - L;
      if (load_[r] < cap_[r]) {
        if (group_.empty()) {
          terminal = node;
          break;
        }
        const auto g = static_cast<std::size_t>(group_[r]);
        if (visit(group_node(g), node) && group_load_[g] < group_cap_[g]) {
          terminal = group_node(g);
          break;
        }
      }
      for (std::size_t y : assigned_[r]) visit(y, node);
    } else {
      const std::size_t g = node - L - R;
      for (std::size_t r : group_members_[g]) {
        if (load_[r] == 0 || protected_[r]) continue;
        visit(right_node(r), node);
      }
    }
  }
  if (terminal == kNone) return false;

  // Walk back, reassigning every left vertex to the right vertex after it.
  std::size_t node = terminal;
  std::size_t next_right = kNone;
  while (node != kNone) {
    if (node < L) {
      move(node, next_right);
      next_right = kNone;
    } else if (node < L + R) {
      next_right = node - L;
    }
    node = parent_[node];
  }
  return true;
}

std::size_t CapacitatedMatcher::augment_all() {
  std::vector<std::size_t> all(adj_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return augment_all(all);
}

std::size_t CapacitatedMatcher::augment_all(const std::vector<std::size_t>& candidates) {
  const std::size_t before = matched_;
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t u : candidates) {
      if (mate_[u] == kNone && augment(u)) grew = true;
    }
  }
  return matched_ - before;
}

}  // namespace spast

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spast/instance.hpp"
#include "spast/matching.hpp"

namespace spast {

enum class Notion { Weak, Strong, Super };

std::string_view to_string(Notion n);
std::optional<Notion> parse_notion(std::string_view s);

struct BlockingPair {
  StudentId student;
  ProjectId project;
  // Which clause fired, e.g. "2a+2b(iii)" for strong, "(a)+(b)(i)" otherwise.
  std::string clause;

  friend bool operator==(const BlockingPair&, const BlockingPair&) = default;
};

struct BlockingReport {
  Notion notion = Notion::Strong;
  std::vector<BlockingPair> pairs;

  bool empty() const { return pairs.empty(); }
};

struct MatchingViolation {
  std::string code;
  std::string message;
};

// Every capacity or acceptability breach; empty iff M is a matching.
std::vector<MatchingViolation> check_valid(const Instance& inst, const Matching& m);

// Exhaustive scan over acceptable pairs outside M. M must be valid.
BlockingReport blocking_pairs(const Instance& inst, const RankTable& ranks, const Matching& m, Notion notion);
BlockingReport blocking_pairs(const Instance& inst, const Matching& m, Notion notion);

bool is_stable(const Instance& inst, const RankTable& ranks, const Matching& m, Notion notion);

}  // namespace spast

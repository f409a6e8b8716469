#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spast/instance.hpp"
#include "spast/matching.hpp"
#include "spast/solver.hpp"

namespace spast {

class InstanceTooLarge : public std::runtime_error {
 public:
  InstanceTooLarge(double space, std::uint64_t bound);
  std::uint64_t bound() const { return bound_; }

 private:
  std::uint64_t bound_;
};

struct OracleOptions {
  // Refuse when the product over students of (|A_i| + 1) exceeds this.
  std::uint64_t max_enum = 10'000'000;
  bool keep_all = true;  // store every valid matching, not just the stable ones
};

struct OracleResult {
  std::vector<Matching> all_matchings;
  std::size_t num_matchings = 0;
  std::vector<Matching> stable;
  // Best tie index each student gets across `stable`; empty if unassigned
  // in all of them.
  std::vector<std::optional<int>> best_rank;

  bool solvable() const { return !stable.empty(); }
};

// Exhaustive: each student takes one acceptable project (in list order) or
// stays unassigned; capacity-infeasible branches are pruned.
OracleResult enumerate_strongly_stable(const Instance& inst, const OracleOptions& options = {});

struct AgreementReport {
  std::vector<std::string> issues;

  bool ok() const { return issues.empty(); }
};

AgreementReport assert_agreement(const Instance& inst, const SolveResult& result, const OracleResult& oracle);
// Same checks against a bare candidate (nullopt = "no matching exists").
AgreementReport assert_agreement(const Instance& inst, const std::optional<Matching>& candidate,
                                 const OracleResult& oracle);

}  // namespace spast

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "spast/instance.hpp"
#include "spast/matching.hpp"
#include "spast/provisional_graph.hpp"
#include "spast/reduced_graph.hpp"

namespace spast {

struct ApplyEvent {
  int iteration = 0;
  StudentId student;
  ProjectId project;
};

struct DeleteEvent {
  int iteration = 0;
  StudentId student;
  ProjectId project;
  DeletionReason reason;
};

struct CriticalSetEvent {
  int iteration = 0;
  std::vector<StudentId> members;
  std::vector<ProjectId> neighbourhood;
  std::size_t reduced_students = 0;  // |S_r| including dummies
  std::size_t dummies = 0;
  std::size_t matching_size = 0;
};

struct PRStarEvent {
  std::vector<ProjectId> projects;
};

using TraceEvent = std::variant<ApplyEvent, DeleteEvent, CriticalSetEvent, PRStarEvent>;

struct SolveStats {
  std::size_t m = 0;  // total length of the students' lists
  int inner_iterations = 0;
  int outer_iterations = 0;
  std::size_t applications = 0;
  std::size_t deletions = 0;
};

struct SolveResult {
  // Set iff the feasible matching is strongly stable.
  std::optional<Matching> matching;
  Matching feasible;
  std::vector<ProjectId> pr_star;
  std::vector<TraceEvent> trace;
  SolveStats stats;

  bool solvable() const { return matching.has_value(); }
  std::vector<DeleteEvent> deletions() const;
};

// Hooks for property tests. Called synchronously from inside the solver.
class SolveObserver {
 public:
  virtual ~SolveObserver() = default;
  virtual void on_graph_changed(const ProvisionalGraph&) {}
  virtual void on_critical_set(const ProvisionalGraph&, const ReducedGraph&, const ReducedMatching&,
                               const CriticalSet&) {}
};

struct SolveOptions {
  // Priority order for the while loop; empty means s1, s2, ...
  std::vector<StudentId> student_order;
  SolveObserver* observer = nullptr;
};

// Runs the algorithm in phases. solve() drives a StrongSolver end to end;
// tests call the phases one at a time.
class StrongSolver {
 public:
  explicit StrongSolver(const Instance& inst, SolveOptions options = {});
  // Holds a reference to the instance, so temporaries are refused.
  explicit StrongSolver(Instance&&, SolveOptions = {}) = delete;
  StrongSolver(const StrongSolver&) = delete;
  StrongSolver& operator=(const StrongSolver&) = delete;

  // One pending student applies to their head tie. False when no
  // unassigned student has a non-empty list.
  bool apply_round();
  void run_applications();

  // Dominance deletions for a single project or lecturer.
  std::size_t delete_dominated_project(ProjectId p);
  std::size_t delete_dominated_lecturer(LecturerId l);

  ReducedGraph build_reduced_graph() const;
  // Maximum matching seeded with the previous iteration's pairs.
  std::pair<ReducedMatching, CriticalSet> find_critical_set(const ReducedGraph& gr);
  std::size_t delete_critical_tails(const CriticalSet& z);
  // Applications, dominance and critical-set deletions once; returns Z.
  CriticalSet inner_iteration();

  std::size_t process_replete_undersubscribed();
  std::size_t prune_cross_lecturer_unbound();
  std::vector<ProjectId> compute_pr_star() const;
  Matching feasible_matching(const std::vector<ProjectId>& pr_star) const;
  // Fallback when the feasible matching is blocked: a bounded search over
  // the other matchings of the final graph that cover every student with an
  // edge. True with m set to the first strongly stable one found.
  bool repair_feasible(Matching& m) const;
  static constexpr std::size_t kRepairBudget = 20000;

  SolveResult run();

  const ProvisionalGraph& graph() const { return graph_; }
  const std::vector<TraceEvent>& trace() const { return trace_; }
  int iteration() const { return iteration_; }

 private:
  bool remove(std::size_t pair_id, DeletionReason reason);
  void add(std::size_t pair_id);
  void changed();
  bool pending(StudentId s) const;

  const Instance& inst_;
  RankTable ranks_;
  ProvisionalGraph graph_;
  SolveOptions options_;
  std::vector<std::size_t> priority_;  // priority_[student] = position in order
  std::vector<std::size_t> queue_;     // min-heap over priorities
  std::vector<TraceEvent> trace_;
  std::vector<std::pair<StudentId, ProjectId>> last_mr_;
  SolveStats stats_;
  int iteration_ = 0;
};

SolveResult solve(const Instance& inst, const SolveOptions& options = {});

// "# "-prefixed human readable event lines.
std::string format_trace(const std::vector<TraceEvent>& trace);
nlohmann::json trace_to_json(const std::vector<TraceEvent>& trace);

}  // namespace spast

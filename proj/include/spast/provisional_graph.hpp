#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "spast/instance.hpp"

namespace spast {

enum class DeletionReason {
  ProjectDominance,
  LecturerDominance,
  CriticalSet,
  RepleteUndersubscribed,
  CrossLecturerUnbound,
};

std::string_view to_string(DeletionReason r);

// The provisional assignment graph G together with the shrinking preference
// lists. Every acceptable (student, project) combination is a pair; a pair
// may be an edge of G, deleted, or neither. Quotas, degrees and heads/tails
// are kept current on every mutation.
class ProvisionalGraph {
 public:
  struct Pair {
    StudentId student;
    ProjectId project;
    LecturerId lecturer;
    int srank = 0;  // tie index in the student's list
    int lrank = 0;  // tie index of the student in the lecturer's list
    std::size_t entry = 0;
    bool deleted = false;
    bool edge = false;
    bool ever = false;  // was an edge at some point
  };

  // A student's place in some lecturer list L_k.
  struct Entry {
    StudentId student;
    LecturerId lecturer;
    int lrank = 0;
    int live = 0;   // undeleted pairs into P_k
    int edges = 0;  // edges into P_k
  };

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  ProvisionalGraph(const Instance& inst, const RankTable& ranks);

  const Instance& instance() const { return *inst_; }
  const RankTable& ranks() const { return *ranks_; }

  std::size_t find_pair(StudentId s, ProjectId p) const;
  const Pair& pair(std::size_t id) const { return pairs_[id]; }
  std::size_t num_pairs() const { return pairs_.size(); }
  const Entry& entry(std::size_t id) const { return entries_[id]; }

  // Pair ids of L_k^j in lecturer rank order, including deleted ones.
  const std::vector<std::size_t>& projected_pairs(ProjectId p) const { return project_pairs_[p.index()]; }
  // Entry ids of L_k in rank order, including exhausted ones.
  const std::vector<std::size_t>& lecturer_entries(LecturerId l) const { return lecturer_entries_[l.index()]; }
  // Pair ids of s in preference order.
  const std::vector<std::size_t>& student_pairs(StudentId s) const { return student_pairs_[s.index()]; }

  bool has_edge(StudentId s, ProjectId p) const;
  bool is_deleted(StudentId s, ProjectId p) const;
  bool was_assigned(StudentId s, ProjectId p) const;

  bool assigned(StudentId s) const { return student_edges_[s.index()] > 0; }
  bool list_empty(StudentId s) const { return student_live_[s.index()] == 0; }
  // Pair ids in the head tie of s (after deletions).
  std::vector<std::size_t> head(StudentId s) const;
  // Edge pair ids of s. Edges always lie in the head tie.
  std::vector<std::size_t> edges_of(StudentId s) const;
  std::vector<StudentId> assignees(ProjectId p) const;
  std::vector<StudentId> assignees(LecturerId l) const;

  int degree(ProjectId p) const { return project_degree_[p.index()]; }
  // Number of distinct students with an edge into P_k.
  int degree(LecturerId l) const { return lecturer_degree_[l.index()]; }
  int quota(ProjectId p) const;
  int alpha(LecturerId l) const { return alpha_[l.index()]; }
  int quota(LecturerId l) const;
  bool oversubscribed(ProjectId p) const { return degree(p) > instance().capacity(p); }

  bool replete(ProjectId p) const { return replete_p_[p.index()]; }
  bool replete(LecturerId l) const { return replete_l_[l.index()]; }

  // Lecturer rank of the tail tie of L_k^j / L_k after deletions.
  std::optional<int> tail_rank(ProjectId p) const;
  std::optional<int> tail_rank(LecturerId l) const;
  bool in_tail(std::size_t pair_id) const;
  bool in_lecturer_tail(std::size_t pair_id) const;

  bool is_lower_rank(std::size_t pair_id) const;
  bool is_bound(std::size_t pair_id) const;
  bool is_bound(StudentId s, ProjectId p) const { return is_bound(find_pair(s, p)); }
  bool is_lower_rank(StudentId s, ProjectId p) const { return is_lower_rank(find_pair(s, p)); }

  std::size_t num_edges() const { return num_edges_; }
  std::vector<std::pair<StudentId, ProjectId>> edges() const;
  std::vector<std::pair<StudentId, ProjectId>> deleted_pairs() const;

  // Mutations. add_edge sets replete flags; delete_pair is a no-op on an
  // already deleted pair and returns whether anything changed.
  void add_edge(std::size_t pair_id);
  bool delete_pair(std::size_t pair_id);

 private:
  void drop_edge(std::size_t pair_id);

  const Instance* inst_;
  const RankTable* ranks_;

  std::vector<Pair> pairs_;
  std::vector<Entry> entries_;
  std::vector<std::vector<std::size_t>> student_pairs_;
  std::vector<std::vector<std::size_t>> project_pairs_;
  std::vector<std::vector<std::size_t>> lecturer_entries_;

  std::vector<int> student_live_;
  std::vector<int> student_edges_;
  mutable std::vector<std::size_t> student_head_;
  // One past the last live position; only ever moves towards the front.
  mutable std::vector<std::size_t> project_tail_;
  mutable std::vector<std::size_t> lecturer_tail_;

  std::vector<int> project_degree_;
  std::vector<int> lecturer_degree_;
  std::vector<int> alpha_;
  std::vector<bool> replete_p_;
  std::vector<bool> replete_l_;
  std::size_t num_edges_ = 0;
};

}  // namespace spast

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "spast/ids.hpp"

namespace spast {

class ProvisionalGraph;

// G_r: unbound edges of G with revised quotas, plus dummy students that
// soak up lecturer quota shortfall.
struct ReducedGraph {
  struct Student {
    std::optional<StudentId> real;  // empty for a dummy
    LecturerId dummy_of;            // meaningful for dummies only
    std::vector<std::size_t> adj;   // indices into edges
  };
  struct Project {
    ProjectId id;
    LecturerId lecturer;
    int quota = 0;  // q_j*
  };
  struct Edge {
    std::size_t student;
    std::size_t project;
    bool lower_rank = false;
  };

  std::vector<Student> students;
  std::vector<Project> projects;
  std::vector<Edge> edges;
  // q_k* for every lecturer offering a project of P_r.
  std::vector<std::pair<LecturerId, int>> lecturer_quota;

  std::size_t num_real() const;
  std::size_t num_dummies() const { return students.size() - num_real(); }
  bool empty() const { return students.empty(); }

  std::size_t add_student(std::optional<StudentId> real, LecturerId dummy_of = LecturerId{});
  std::size_t add_project(ProjectId id, LecturerId lecturer, int quota);
  void add_edge(std::size_t student, std::size_t project, bool lower_rank = false);
};

// mate[i] is a project index into ReducedGraph::projects.
struct ReducedMatching {
  std::vector<std::optional<std::size_t>> mate;

  std::size_t size() const;
};

struct CriticalSet {
  std::vector<std::size_t> members;       // student indices, dummies included
  std::vector<StudentId> real;            // members that are real students
  std::vector<ProjectId> neighbourhood;   // N(Z) over the real members
};

ReducedGraph build_reduced_graph(const ProvisionalGraph& g);

// Dummies first, then seeded pairs that are still edges, then augmenting
// paths over everything.
ReducedMatching max_matching_reduced(const ReducedGraph& gr,
                                     const std::vector<std::pair<StudentId, ProjectId>>& seed = {});

// Free students plus everything reachable from them by alternating paths.
CriticalSet critical_set(const ReducedGraph& gr, const ReducedMatching& mr);

// |X| minus the total revised quota of N(X).
long deficiency(const ReducedGraph& gr, const std::vector<std::size_t>& subset);

}  // namespace spast

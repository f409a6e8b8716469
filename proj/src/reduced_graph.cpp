#include "spast/reduced_graph.hpp"

#include <algorithm>

#include "spast/matcher.hpp"
#include "spast/provisional_graph.hpp"

namespace spast {

std::size_t ReducedGraph::num_real() const {
  return static_cast<std::size_t>(
      std::count_if(students.begin(), students.end(), [](const Student& s) { return s.real.has_value(); }));
}

std::size_t ReducedGraph::add_student(std::optional<StudentId> real, LecturerId dummy_of) {
  students.push_back({real, dummy_of, {}});
  return students.size() - 1;
}

std::size_t ReducedGraph::add_project(ProjectId id, LecturerId lecturer, int quota) {
  projects.push_back({id, lecturer, quota});
  return projects.size() - 1;
}

void ReducedGraph::add_edge(std::size_t student, std::size_t project, bool lower_rank) {
  students[student].adj.push_back(edges.size());
  edges.push_back({student, project, lower_rank});
}

std::size_t ReducedMatching::size() const {
  return static_cast<std::size_t>(std::count_if(mate.begin(), mate.end(), [](const auto& m) { return m.has_value(); }));
}

ReducedGraph build_reduced_graph(const ProvisionalGraph& g) {
  const Instance& inst = g.instance();
  const std::size_t n1 = inst.num_students();
  const std::size_t n2 = inst.num_projects();
  const std::size_t n3 = inst.num_lecturers();

  std::vector<int> bound_p(n2, 0);
  std::vector<int> bound_l(n3, 0);
  // Unbound-only students and their edges.
  std::vector<std::pair<StudentId, std::vector<std::size_t>>> free_students;
  std::vector<int> last_lecturer_mark(n3, -1);

  for (std::size_t i = 0; i < n1; ++i) {
    const StudentId s{i};
    const auto edges = g.edges_of(s);
    if (edges.empty()) continue;
    bool any_bound = false;
    for (std::size_t id : edges) {
      if (!g.is_bound(id)) continue;
      any_bound = true;
      const auto& pr = g.pair(id);
      ++bound_p[pr.project.index()];
      // Count each student once per lecturer.
      if (last_lecturer_mark[pr.lecturer.index()] != static_cast<int>(i)) {
        last_lecturer_mark[pr.lecturer.index()] = static_cast<int>(i);
        ++bound_l[pr.lecturer.index()];
      }
    }
    if (!any_bound) free_students.emplace_back(s, edges);
  }

  ReducedGraph gr;
  std::vector<std::size_t> pidx(n2, ProvisionalGraph::npos);
  std::vector<int> revised(n2, 0);
  for (std::size_t j = 0; j < n2; ++j) revised[j] = g.quota(ProjectId{j}) - bound_p[j];

  for (auto& [s, edges] : free_students) {
    std::vector<std::size_t> usable;
    for (std::size_t id : edges) {
      if (revised[g.pair(id).project.index()] > 0) usable.push_back(id);
    }
    if (usable.empty()) continue;
    const std::size_t si = gr.add_student(s);
    for (std::size_t id : usable) {
      const auto& pr = g.pair(id);
      const std::size_t j = pr.project.index();
      if (pidx[j] == ProvisionalGraph::npos) pidx[j] = gr.add_project(pr.project, pr.lecturer, revised[j]);
      gr.add_edge(si, pidx[j], g.is_lower_rank(id));
    }
  }

  // Lecturer quotas and dummy students.
  std::vector<int> quota_sum(n3, 0);
  std::vector<bool> present(n3, false);
  std::vector<std::vector<std::size_t>> dummy_targets(n3);
  for (std::size_t pj = 0; pj < gr.projects.size(); ++pj) {
    const auto k = gr.projects[pj].lecturer.index();
    present[k] = true;
    quota_sum[k] += gr.projects[pj].quota;
  }
  std::vector<bool> targeted(gr.projects.size(), false);
  for (const auto& e : gr.edges) {
    if (e.lower_rank && !targeted[e.project]) {
      targeted[e.project] = true;
      dummy_targets[gr.projects[e.project].lecturer.index()].push_back(e.project);
    }
  }
  for (std::size_t k = 0; k < n3; ++k) {
    if (!present[k]) continue;
    const LecturerId l{k};
    const int qk = g.quota(l) - bound_l[k];
    gr.lecturer_quota.emplace_back(l, qk);
    const int n = quota_sum[k] - qk;
    if (n <= 0 || dummy_targets[k].empty()) continue;
    std::sort(dummy_targets[k].begin(), dummy_targets[k].end());
    for (int d = 0; d < n; ++d) {
      const std::size_t si = gr.add_student(std::nullopt, l);
      for (std::size_t pj : dummy_targets[k]) gr.add_edge(si, pj, false);
    }
  }
  return gr;
}

namespace {

CapacitatedMatcher make_matcher(const ReducedGraph& gr) {
  std::vector<int> caps;
  caps.reserve(gr.projects.size());
  for (const auto& p : gr.projects) caps.push_back(p.quota);
  CapacitatedMatcher m(gr.students.size(), std::move(caps));
  for (const auto& e : gr.edges) m.add_edge(e.student, e.project);
  return m;
}

}  // namespace

ReducedMatching max_matching_reduced(const ReducedGraph& gr, const std::vector<std::pair<StudentId, ProjectId>>& seed) {
  CapacitatedMatcher m = make_matcher(gr);
  std::vector<std::size_t> dummies;
  std::vector<std::size_t> everyone;
  for (std::size_t i = 0; i < gr.students.size(); ++i) {
    everyone.push_back(i);
    if (!gr.students[i].real) dummies.push_back(i);
  }
  m.augment_all(dummies);

  if (!seed.empty()) {
    std::vector<std::pair<StudentId, ProjectId>> sorted = seed;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < gr.students.size(); ++i) {
      const auto& st = gr.students[i];
      if (!st.real) continue;
      auto it = std::lower_bound(sorted.begin(), sorted.end(), std::pair{*st.real, ProjectId{}});
      if (it == sorted.end() || it->first != *st.real) continue;
      for (std::size_t e : st.adj) {
        if (gr.projects[gr.edges[e].project].id == it->second) {
          m.try_assign(i, gr.edges[e].project);
          break;
        }
      }
    }
  }
  m.augment_all(everyone);

  ReducedMatching out;
  out.mate.resize(gr.students.size());
  for (std::size_t i = 0; i < gr.students.size(); ++i) out.mate[i] = m.mate(i);
  return out;
}

CriticalSet critical_set(const ReducedGraph& gr, const ReducedMatching& mr) {
  const std::size_t ns = gr.students.size();
  std::vector<std::vector<std::size_t>> matched_to(gr.projects.size());
  for (std::size_t i = 0; i < ns; ++i) {
    if (mr.mate[i]) matched_to[*mr.mate[i]].push_back(i);
  }
  std::vector<bool> seen_s(ns, false), seen_p(gr.projects.size(), false);
  std::vector<std::size_t> queue;
  for (std::size_t i = 0; i < ns; ++i) {
    if (!mr.mate[i]) {
      seen_s[i] = true;
      queue.push_back(i);
    }
  }
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const std::size_t s = queue[h];
    for (std::size_t e : gr.students[s].adj) {
      const std::size_t p = gr.edges[e].project;
      if (mr.mate[s] == p || seen_p[p]) continue;
      seen_p[p] = true;
      for (std::size_t t : matched_to[p]) {
        if (!seen_s[t]) {
          seen_s[t] = true;
          queue.push_back(t);
        }
      }
    }
  }

  CriticalSet z;
  std::vector<bool> in_n(gr.projects.size(), false);
  for (std::size_t i = 0; i < ns; ++i) {
    if (!seen_s[i]) continue;
    z.members.push_back(i);
    if (!gr.students[i].real) continue;
    z.real.push_back(*gr.students[i].real);
    for (std::size_t e : gr.students[i].adj) in_n[gr.edges[e].project] = true;
  }
  for (std::size_t p = 0; p < gr.projects.size(); ++p) {
    if (in_n[p]) z.neighbourhood.push_back(gr.projects[p].id);
  }
  std::sort(z.neighbourhood.begin(), z.neighbourhood.end());
  return z;
}

long deficiency(const ReducedGraph& gr, const std::vector<std::size_t>& subset) {
  std::vector<bool> in_n(gr.projects.size(), false);
  for (std::size_t s : subset) {
    for (std::size_t e : gr.students[s].adj) in_n[gr.edges[e].project] = true;
  }
  long quota = 0;
  for (std::size_t p = 0; p < gr.projects.size(); ++p) {
    if (in_n[p]) quota += gr.projects[p].quota;
  }
  return static_cast<long>(subset.size()) - quota;
}

}  // namespace spast

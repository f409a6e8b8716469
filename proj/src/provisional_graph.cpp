#include "spast/provisional_graph.hpp"

#include <algorithm>
#include <limits>

namespace spast {

std::string_view to_string(DeletionReason r) {
  switch (r) {
    case DeletionReason::ProjectDominance:
      return "project-dominance";
    case DeletionReason::LecturerDominance:
      return "lecturer-dominance";
    case DeletionReason::CriticalSet:
      return "critical-set";
    case DeletionReason::RepleteUndersubscribed:
      return "replete-undersubscribed";
    case DeletionReason::CrossLecturerUnbound:
      return "cross-lecturer-unbound";
  }
  return "?";
}

ProvisionalGraph::ProvisionalGraph(const Instance& inst, const RankTable& ranks)
    : inst_(&inst),
      ranks_(&ranks),
      student_pairs_(inst.num_students()),
      project_pairs_(inst.num_projects()),
      lecturer_entries_(inst.num_lecturers()),
      student_live_(inst.num_students(), 0),
      student_edges_(inst.num_students(), 0),
      student_head_(inst.num_students(), 0),
      project_tail_(inst.num_projects(), 0),
      lecturer_tail_(inst.num_lecturers(), 0),
      project_degree_(inst.num_projects(), 0),
      lecturer_degree_(inst.num_lecturers(), 0),
      alpha_(inst.num_lecturers(), 0),
      replete_p_(inst.num_projects(), false),
      replete_l_(inst.num_lecturers(), false) {
  // entry_of[s] lists (lecturer, entry id) for the lecturers ranking s.
  std::vector<std::vector<std::pair<std::int32_t, std::size_t>>> entry_of(inst.num_students());
  for (std::size_t k = 0; k < inst.num_lecturers(); ++k) {
    const auto& list = inst.lecturer_prefs[k];
    for (std::size_t r = 0; r < list.size(); ++r) {
      for (StudentId s : list[r]) {
        entry_of[s.index()].emplace_back(static_cast<std::int32_t>(k), entries_.size());
        lecturer_entries_[k].push_back(entries_.size());
        entries_.push_back({s, LecturerId{k}, static_cast<int>(r), 0, 0});
      }
    }
  }

  for (std::size_t i = 0; i < inst.num_students(); ++i) {
    const StudentId s{i};
    const auto& list = inst.student_prefs[i];
    for (std::size_t r = 0; r < list.size(); ++r) {
      for (ProjectId p : list[r]) {
        const LecturerId l = inst.owner(p);
        Pair pr;
        pr.student = s;
        pr.project = p;
        pr.lecturer = l;
        pr.srank = static_cast<int>(r);
        auto it = std::find_if(entry_of[i].begin(), entry_of[i].end(),
                               [&](const auto& e) { return e.first == l.value; });
        if (it == entry_of[i].end()) {
          // Invalid instance: s missing from L_k. Treat as last-ranked.
          pr.lrank = std::numeric_limits<int>::max() / 2;
          lecturer_entries_[l.index()].push_back(entries_.size());
          entry_of[i].emplace_back(l.value, entries_.size());
          entries_.push_back({s, l, pr.lrank, 0, 0});
          pr.entry = entries_.size() - 1;
        } else {
          pr.entry = it->second;
          pr.lrank = entries_[pr.entry].lrank;
        }
        ++entries_[pr.entry].live;
        student_pairs_[i].push_back(pairs_.size());
        project_pairs_[p.index()].push_back(pairs_.size());
        pairs_.push_back(pr);
        ++student_live_[i];
      }
    }
  }
  for (auto& pp : project_pairs_) {
    std::stable_sort(pp.begin(), pp.end(), [&](std::size_t a, std::size_t b) {
      if (pairs_[a].lrank != pairs_[b].lrank) return pairs_[a].lrank < pairs_[b].lrank;
      return pairs_[a].student < pairs_[b].student;
    });
  }
  for (std::size_t j = 0; j < project_pairs_.size(); ++j) project_tail_[j] = project_pairs_[j].size();
  for (std::size_t k = 0; k < lecturer_entries_.size(); ++k) lecturer_tail_[k] = lecturer_entries_[k].size();
}

std::size_t ProvisionalGraph::find_pair(StudentId s, ProjectId p) const {
  for (std::size_t id : student_pairs_[s.index()]) {
    if (pairs_[id].project == p) return id;
  }
  return npos;
}

bool ProvisionalGraph::has_edge(StudentId s, ProjectId p) const {
  const auto id = find_pair(s, p);
  return id != npos && pairs_[id].edge;
}

bool ProvisionalGraph::is_deleted(StudentId s, ProjectId p) const {
  const auto id = find_pair(s, p);
  return id != npos && pairs_[id].deleted;
}

bool ProvisionalGraph::was_assigned(StudentId s, ProjectId p) const {
  const auto id = find_pair(s, p);
  return id != npos && pairs_[id].ever;
}

std::vector<std::size_t> ProvisionalGraph::head(StudentId s) const {
  const auto& list = student_pairs_[s.index()];
  auto& h = student_head_[s.index()];
  while (h < list.size() && pairs_[list[h]].deleted) ++h;
  std::vector<std::size_t> out;
  if (h == list.size()) return out;
  const int rank = pairs_[list[h]].srank;
  for (std::size_t t = h; t < list.size() && pairs_[list[t]].srank == rank; ++t) {
    if (!pairs_[list[t]].deleted) out.push_back(list[t]);
  }
  return out;
}

std::vector<std::size_t> ProvisionalGraph::edges_of(StudentId s) const {
  std::vector<std::size_t> out;
  if (student_edges_[s.index()] == 0) return out;
  for (std::size_t id : head(s)) {
    if (pairs_[id].edge) out.push_back(id);
  }
  return out;
}

std::vector<StudentId> ProvisionalGraph::assignees(ProjectId p) const {
  std::vector<StudentId> out;
  for (std::size_t id : project_pairs_[p.index()]) {
    if (pairs_[id].edge) out.push_back(pairs_[id].student);
  }
  return out;
}

std::vector<StudentId> ProvisionalGraph::assignees(LecturerId l) const {
  std::vector<StudentId> out;
  for (std::size_t e : lecturer_entries_[l.index()]) {
    if (entries_[e].edges > 0) out.push_back(entries_[e].student);
  }
  return out;
}

int ProvisionalGraph::quota(ProjectId p) const { return std::min(instance().capacity(p), degree(p)); }

int ProvisionalGraph::quota(LecturerId l) const {
  return std::min({instance().capacity(l), degree(l), alpha(l)});
}

std::optional<int> ProvisionalGraph::tail_rank(ProjectId p) const {
  const auto& list = project_pairs_[p.index()];
  auto& t = project_tail_[p.index()];
  while (t > 0 && pairs_[list[t - 1]].deleted) --t;
  if (t == 0) return std::nullopt;
  return pairs_[list[t - 1]].lrank;
}

std::optional<int> ProvisionalGraph::tail_rank(LecturerId l) const {
  const auto& list = lecturer_entries_[l.index()];
  auto& t = lecturer_tail_[l.index()];
  while (t > 0 && entries_[list[t - 1]].live == 0) --t;
  if (t == 0) return std::nullopt;
  return entries_[list[t - 1]].lrank;
}

bool ProvisionalGraph::in_tail(std::size_t id) const {
  const Pair& pr = pairs_[id];
  if (pr.deleted) return false;
  return tail_rank(pr.project) == pr.lrank;
}

bool ProvisionalGraph::in_lecturer_tail(std::size_t id) const {
  const Pair& pr = pairs_[id];
  if (entries_[pr.entry].live == 0) return false;
  return tail_rank(pr.lecturer) == pr.lrank;
}

bool ProvisionalGraph::is_lower_rank(std::size_t id) const {
  const Pair& pr = pairs_[id];
  if (!pr.edge) return false;
  const LecturerId l = pr.lecturer;
  return in_lecturer_tail(id) && std::min(degree(l), alpha(l)) > instance().capacity(l);
}

bool ProvisionalGraph::is_bound(std::size_t id) const {
  const Pair& pr = pairs_[id];
  if (!pr.edge) return false;
  const bool cond_i = !oversubscribed(pr.project) || !in_tail(id);
  const bool cond_ii = !is_lower_rank(id);
  return cond_i && cond_ii;
}

std::vector<std::pair<StudentId, ProjectId>> ProvisionalGraph::edges() const {
  std::vector<std::pair<StudentId, ProjectId>> out;
  for (const Pair& pr : pairs_) {
    if (pr.edge) out.emplace_back(pr.student, pr.project);
  }
  return out;
}

std::vector<std::pair<StudentId, ProjectId>> ProvisionalGraph::deleted_pairs() const {
  std::vector<std::pair<StudentId, ProjectId>> out;
  for (const Pair& pr : pairs_) {
    if (pr.deleted) out.emplace_back(pr.student, pr.project);
  }
  return out;
}

void ProvisionalGraph::add_edge(std::size_t id) {
  Pair& pr = pairs_[id];
  if (pr.edge || pr.deleted) return;
  pr.edge = true;
  pr.ever = true;
  const std::size_t j = pr.project.index();
  const std::size_t k = pr.lecturer.index();
  const int c = instance().capacity(pr.project);
  if (project_degree_[j] < c) ++alpha_[k];
  ++project_degree_[j];
  if (entries_[pr.entry].edges++ == 0) ++lecturer_degree_[k];
  ++student_edges_[pr.student.index()];
  ++num_edges_;
  if (project_degree_[j] >= c) replete_p_[j] = true;
  if (lecturer_degree_[k] >= instance().capacity(pr.lecturer)) replete_l_[k] = true;
}

void ProvisionalGraph::drop_edge(std::size_t id) {
  Pair& pr = pairs_[id];
  pr.edge = false;
  const std::size_t j = pr.project.index();
  const std::size_t k = pr.lecturer.index();
  --project_degree_[j];
  if (project_degree_[j] < instance().capacity(pr.project)) --alpha_[k];
  if (--entries_[pr.entry].edges == 0) --lecturer_degree_[k];
  --student_edges_[pr.student.index()];
  --num_edges_;
}

bool ProvisionalGraph::delete_pair(std::size_t id) {
  Pair& pr = pairs_[id];
  if (pr.deleted) return false;
  if (pr.edge) drop_edge(id);
  pr.deleted = true;
  --entries_[pr.entry].live;
  --student_live_[pr.student.index()];
  return true;
}

}  // namespace spast

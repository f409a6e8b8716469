#include "spast/solver.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "spast/matcher.hpp"
#include "spast/stability.hpp"

namespace spast {

std::vector<DeleteEvent> SolveResult::deletions() const {
  std::vector<DeleteEvent> out;
  for (const auto& ev : trace) {
    if (const auto* d = std::get_if<DeleteEvent>(&ev)) out.push_back(*d);
  }
  return out;
}

StrongSolver::StrongSolver(const Instance& inst, SolveOptions options)
    : inst_(inst), ranks_(inst), graph_(inst, ranks_), options_(std::move(options)) {
  const std::size_t n1 = inst.num_students();
  priority_.assign(n1, 0);
  if (options_.student_order.empty()) {
    for (std::size_t i = 0; i < n1; ++i) priority_[i] = i;
  } else {
    if (options_.student_order.size() != n1) throw std::invalid_argument("student_order is not a permutation");
    std::vector<bool> seen(n1, false);
    for (std::size_t pos = 0; pos < n1; ++pos) {
      const auto s = options_.student_order[pos].index();
      if (s >= n1 || seen[s]) throw std::invalid_argument("student_order is not a permutation");
      seen[s] = true;
      priority_[s] = pos;
    }
  }
  stats_.m = inst.total_preference_length();
  for (std::size_t i = 0; i < n1; ++i) queue_.push_back(i);
  const auto cmp = [this](std::size_t a, std::size_t b) { return priority_[a] > priority_[b]; };
  std::make_heap(queue_.begin(), queue_.end(), cmp);
}

bool StrongSolver::pending(StudentId s) const { return !graph_.assigned(s) && !graph_.list_empty(s); }

void StrongSolver::changed() {
  if (options_.observer) options_.observer->on_graph_changed(graph_);
}

void StrongSolver::add(std::size_t id) {
  graph_.add_edge(id);
  const auto& pr = graph_.pair(id);
  trace_.push_back(ApplyEvent{iteration_, pr.student, pr.project});
  ++stats_.applications;
  changed();
}

bool StrongSolver::remove(std::size_t id, DeletionReason reason) {
  if (!graph_.delete_pair(id)) return false;
  const auto& pr = graph_.pair(id);
  trace_.push_back(DeleteEvent{iteration_, pr.student, pr.project, reason});
  ++stats_.deletions;
  if (pending(pr.student)) {
    queue_.push_back(pr.student.index());
    std::push_heap(queue_.begin(), queue_.end(),
                   [this](std::size_t a, std::size_t b) { return priority_[a] > priority_[b]; });
  }
  changed();
  return true;
}

std::size_t StrongSolver::delete_dominated_project(ProjectId p) {
  const auto& list = graph_.projected_pairs(p);
  const int c = inst_.capacity(p);
  int better = 0;
  std::size_t cut = list.size();
  for (std::size_t t = 0; t < list.size();) {
    const int rank = graph_.pair(list[t]).lrank;
    if (better >= c) {
      cut = t;
      break;
    }
    std::size_t u = t;
    for (; u < list.size() && graph_.pair(list[u]).lrank == rank; ++u) better += graph_.pair(list[u]).edge;
    t = u;
  }
  std::size_t n = 0;
  for (std::size_t t = cut; t < list.size(); ++t) n += remove(list[t], DeletionReason::ProjectDominance);
  return n;
}

std::size_t StrongSolver::delete_dominated_lecturer(LecturerId l) {
  const int d = inst_.capacity(l);
  if (std::min(graph_.degree(l), graph_.alpha(l)) < d) return 0;

  // s_t is dominated once the strictly better provisional assignees could
  // fill d_k places of l_k at the same time.
  const auto& offered = ranks_.offered_by(l);
  std::vector<int> caps;
  for (ProjectId p : offered) caps.push_back(inst_.capacity(p));
  const auto& entries = graph_.lecturer_entries(l);
  CapacitatedMatcher better(entries.size(), caps);
  auto local = [&](ProjectId p) {
    return static_cast<std::size_t>(std::find(offered.begin(), offered.end(), p) - offered.begin());
  };

  std::size_t cut = entries.size();
  for (std::size_t t = 0; t < entries.size();) {
    const int rank = graph_.entry(entries[t]).lrank;
    if (static_cast<int>(better.size()) >= d) {
      cut = t;
      break;
    }
    std::size_t u = t;
    for (; u < entries.size() && graph_.entry(entries[u]).lrank == rank; ++u) {
      const auto& e = graph_.entry(entries[u]);
      if (e.edges == 0) continue;
      for (std::size_t id : graph_.edges_of(e.student)) {
        if (graph_.pair(id).lecturer == l) better.add_edge(u, local(graph_.pair(id).project));
      }
    }
    for (std::size_t v = t; v < u; ++v) better.augment(v);
    t = u;
  }

  std::size_t n = 0;
  for (std::size_t t = cut; t < entries.size(); ++t) {
    const auto& e = graph_.entry(entries[t]);
    if (e.live == 0) continue;
    for (std::size_t id : graph_.student_pairs(e.student)) {
      if (graph_.pair(id).lecturer == l) n += remove(id, DeletionReason::LecturerDominance);
    }
  }
  return n;
}

bool StrongSolver::apply_round() {
  const auto cmp = [this](std::size_t a, std::size_t b) { return priority_[a] > priority_[b]; };
  while (!queue_.empty()) {
    std::pop_heap(queue_.begin(), queue_.end(), cmp);
    const StudentId s{queue_.back()};
    queue_.pop_back();
    if (!pending(s)) continue;
    for (std::size_t id : graph_.head(s)) {
      if (graph_.pair(id).deleted) continue;
      add(id);
      const ProjectId p = graph_.pair(id).project;
      const LecturerId l = graph_.pair(id).lecturer;
      if (graph_.degree(p) >= inst_.capacity(p)) delete_dominated_project(p);
      if (graph_.degree(l) >= inst_.capacity(l)) delete_dominated_lecturer(l);
    }
    return true;
  }
  return false;
}

void StrongSolver::run_applications() {
  while (apply_round()) {
  }
}

ReducedGraph StrongSolver::build_reduced_graph() const { return spast::build_reduced_graph(graph_); }

std::pair<ReducedMatching, CriticalSet> StrongSolver::find_critical_set(const ReducedGraph& gr) {
  ReducedMatching mr = max_matching_reduced(gr, last_mr_);
  CriticalSet z = critical_set(gr, mr);
  last_mr_.clear();
  for (std::size_t i = 0; i < gr.students.size(); ++i) {
    if (gr.students[i].real && mr.mate[i]) last_mr_.emplace_back(*gr.students[i].real, gr.projects[*mr.mate[i]].id);
  }
  return {std::move(mr), std::move(z)};
}

std::size_t StrongSolver::delete_critical_tails(const CriticalSet& z) {
  std::vector<std::size_t> doomed;
  for (ProjectId p : z.neighbourhood) {
    const auto tail = graph_.tail_rank(p);
    if (!tail) continue;
    for (std::size_t id : graph_.projected_pairs(p)) {
      const auto& pr = graph_.pair(id);
      if (!pr.deleted && pr.lrank == *tail) doomed.push_back(id);
    }
  }
  std::size_t n = 0;
  for (std::size_t id : doomed) n += remove(id, DeletionReason::CriticalSet);
  return n;
}

CriticalSet StrongSolver::inner_iteration() {
  ++iteration_;
  ++stats_.inner_iterations;
  run_applications();
  const ReducedGraph gr = build_reduced_graph();
  auto [mr, z] = find_critical_set(gr);
  trace_.push_back(CriticalSetEvent{iteration_, z.real, z.neighbourhood, gr.students.size(), gr.num_dummies(),
                                    mr.size()});
  if (options_.observer) options_.observer->on_critical_set(graph_, gr, mr, z);
  if (!z.real.empty()) delete_critical_tails(z);
  return std::move(z);
}

std::size_t StrongSolver::process_replete_undersubscribed() {
  std::size_t n = 0;
  for (std::size_t j = 0; j < inst_.num_projects(); ++j) {
    const ProjectId p{j};
    if (!graph_.replete(p) || graph_.degree(p) >= inst_.capacity(p)) continue;
    const LecturerId l = inst_.owner(p);
    // Most preferred student rejected from p; in rank order the first hit
    // is also the lowest index within its tie.
    std::optional<int> rejected;
    for (std::size_t id : graph_.projected_pairs(p)) {
      const auto& pr = graph_.pair(id);
      if (pr.ever && !pr.edge) {
        rejected = pr.lrank;
        break;
      }
    }
    if (!rejected) continue;
    const auto tail = graph_.tail_rank(l);
    if (!tail || *tail < *rejected) continue;
    std::vector<std::size_t> doomed;
    for (std::size_t e : graph_.lecturer_entries(l)) {
      const auto& en = graph_.entry(e);
      if (en.live == 0 || en.lrank != *tail) continue;
      for (std::size_t id : graph_.student_pairs(en.student)) {
        if (graph_.pair(id).lecturer == l && !graph_.pair(id).deleted) doomed.push_back(id);
      }
    }
    for (std::size_t id : doomed) n += remove(id, DeletionReason::RepleteUndersubscribed);
  }
  return n;
}

std::size_t StrongSolver::prune_cross_lecturer_unbound() {
  std::size_t n = 0;
  for (std::size_t i = 0; i < inst_.num_students(); ++i) {
    const auto edges = graph_.edges_of(StudentId{i});
    std::optional<LecturerId> anchor;
    for (std::size_t id : edges) {
      if (!graph_.is_bound(id)) continue;
      const LecturerId l = graph_.pair(id).lecturer;
      if (!anchor || l < *anchor) anchor = l;
    }
    if (!anchor) continue;
    std::vector<std::size_t> doomed;
    for (std::size_t id : edges) {
      if (!graph_.is_bound(id) && graph_.pair(id).lecturer != *anchor) doomed.push_back(id);
    }
    for (std::size_t id : doomed) n += remove(id, DeletionReason::CrossLecturerUnbound);
  }
  return n;
}

std::vector<ProjectId> StrongSolver::compute_pr_star() const {
  std::vector<ProjectId> out;
  for (std::size_t j = 0; j < inst_.num_projects(); ++j) {
    const ProjectId p{j};
    if (!graph_.replete(p)) continue;
    const LecturerId l = inst_.owner(p);
    const int dG = graph_.degree(l);
    const int d = inst_.capacity(l);
    int worst = -1;
    for (StudentId t : graph_.assignees(l)) worst = std::max(worst, *ranks_.lecturer_rank(l, t));

    bool qualifies = false;
    for (std::size_t id : graph_.projected_pairs(p)) {
      const auto& pr = graph_.pair(id);
      if (!pr.deleted) continue;
      const auto edges = graph_.edges_of(pr.student);
      bool cond_i = edges.empty();
      for (std::size_t e : edges) {
        const auto& other = graph_.pair(e);
        if (pr.srank < other.srank || (pr.srank == other.srank && other.lecturer != l)) cond_i = true;
      }
      const bool in_gl = graph_.entry(pr.entry).edges > 0;
      const bool cond_ii = dG < d || in_gl || pr.lrank < worst;
      if (cond_i && cond_ii) {
        qualifies = true;
        break;
      }
    }
    if (!qualifies) continue;

    // A project already filled by students with no alternative is full in
    // every feasible matching; it needs no protection.
    int locked = 0;
    for (StudentId t : graph_.assignees(p)) locked += graph_.edges_of(t).size() == 1;
    if (locked >= inst_.capacity(p)) continue;
    out.push_back(p);
  }
  return out;
}

Matching StrongSolver::feasible_matching(const std::vector<ProjectId>& pr_star) const {
  const std::size_t n1 = inst_.num_students();
  const std::size_t n2 = inst_.num_projects();
  std::vector<int> caps(n2), group(n2);
  for (std::size_t j = 0; j < n2; ++j) {
    caps[j] = inst_.project_capacity[j];
    group[j] = inst_.project_owner[j].value;
  }
  std::vector<bool> starred(n2, false);
  for (ProjectId p : pr_star) starred[p.index()] = true;

  CapacitatedMatcher phase1(n1, caps, group, inst_.lecturer_capacity);
  CapacitatedMatcher phase2(n1, caps, group, inst_.lecturer_capacity);
  std::vector<std::pair<std::size_t, std::size_t>> unbound;
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t id : graph_.edges_of(StudentId{i})) {
      const std::size_t j = graph_.pair(id).project.index();
      if (graph_.is_bound(id)) {
        phase2.add_edge(i, j);
      } else {
        unbound.emplace_back(i, j);
      }
      if (starred[j]) phase1.add_edge(i, j);
    }
  }
  phase1.augment_all();
  for (std::size_t i = 0; i < n1; ++i) {
    if (auto r = phase1.mate(i)) phase2.try_assign(i, *r);
  }
  for (ProjectId p : pr_star) phase2.protect(p.index());
  // Bound edges first: a bound student moved onto an unbound edge can take
  // tail capacity meant for a better student.
  phase2.augment_all();
  for (auto [i, j] : unbound) phase2.add_edge(i, j);
  phase2.augment_all();

  Matching m(n1);
  for (std::size_t i = 0; i < n1; ++i) {
    if (auto r = phase2.mate(i)) m.assign(StudentId{i}, ProjectId{*r});
  }
  return m;
}

bool StrongSolver::repair_feasible(Matching& m) const {
  // Students with an edge must be assigned (a feasible matching covers them
  // all), so each one picks among its edges; others stay unassigned.
  std::vector<std::size_t> order;
  std::vector<std::vector<ProjectId>> options(inst_.num_students());
  for (std::size_t i = 0; i < inst_.num_students(); ++i) {
    for (std::size_t id : graph_.edges_of(StudentId{i})) options[i].push_back(graph_.pair(id).project);
    if (!options[i].empty()) order.push_back(i);
  }
  // Most constrained first keeps the tree narrow.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return options[a].size() < options[b].size(); });

  std::vector<int> load_p(inst_.num_projects(), 0), load_l(inst_.num_lecturers(), 0);
  Matching cur(inst_.num_students());
  std::size_t budget = kRepairBudget;
  const std::function<bool(std::size_t)> dfs = [&](std::size_t depth) -> bool {
    if (budget == 0) return false;
    --budget;
    if (depth == order.size()) {
      if (!is_stable(inst_, ranks_, cur, Notion::Strong)) return false;
      m = cur;
      return true;
    }
    const StudentId s{order[depth]};
    for (ProjectId p : options[s.index()]) {
      const auto l = inst_.owner(p).index();
      if (load_p[p.index()] >= inst_.capacity(p) || load_l[l] >= inst_.lecturer_capacity[l]) continue;
      ++load_p[p.index()];
      ++load_l[l];
      cur.assign(s, p);
      if (dfs(depth + 1)) return true;
      cur.unassign(s);
      --load_p[p.index()];
      --load_l[l];
    }
    return false;
  };
  return dfs(0);
}

SolveResult StrongSolver::run() {
  bool again = true;
  while (again) {
    ++stats_.outer_iterations;
    while (!inner_iteration().real.empty()) {
    }
    process_replete_undersubscribed();
    again = false;
    for (std::size_t i = 0; i < inst_.num_students() && !again; ++i) again = pending(StudentId{i});
  }
  prune_cross_lecturer_unbound();

  SolveResult result;
  result.pr_star = compute_pr_star();
  trace_.push_back(PRStarEvent{result.pr_star});
  result.feasible = feasible_matching(result.pr_star);
  if (is_stable(inst_, ranks_, result.feasible, Notion::Strong)) {
    result.matching = result.feasible;
  } else {
    Matching m;
    if (repair_feasible(m)) result.matching = std::move(m);
  }
  result.trace = trace_;
  result.stats = stats_;
  return result;
}

SolveResult solve(const Instance& inst, const SolveOptions& options) {
  StrongSolver solver(inst, options);
  return solver.run();
}

// ---------------------------------------------------------------------------
// Trace rendering

namespace {

template <class IdT>
std::string set_string(const std::vector<IdT>& ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ", ";
    out += to_string(ids[i]);
  }
  return out + "}";
}

template <class IdT>
nlohmann::json id_array(const std::vector<IdT>& ids) {
  nlohmann::json a = nlohmann::json::array();
  for (IdT id : ids) a.push_back(to_string(id));
  return a;
}

}  // namespace

std::string format_trace(const std::vector<TraceEvent>& trace) {
  std::ostringstream os;
  for (const auto& ev : trace) {
    std::visit(
        [&](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, ApplyEvent>) {
            os << "# iteration " << e.iteration << ": apply " << to_string(e.student) << ' ' << to_string(e.project)
               << '\n';
          } else if constexpr (std::is_same_v<T, DeleteEvent>) {
            os << "# iteration " << e.iteration << ": delete " << to_string(e.student) << ' ' << to_string(e.project)
               << " (" << to_string(e.reason) << ")\n";
          } else if constexpr (std::is_same_v<T, CriticalSetEvent>) {
            os << "# iteration " << e.iteration << ": critical set " << set_string(e.members) << ", neighbourhood "
               << set_string(e.neighbourhood) << ", |S_r| " << e.reduced_students << " (" << e.dummies
               << " dummy), |M_r| " << e.matching_size << '\n';
          } else {
            os << "# pr_star " << set_string(e.projects) << '\n';
          }
        },
        ev);
  }
  return os.str();
}

nlohmann::json trace_to_json(const std::vector<TraceEvent>& trace) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& ev : trace) {
    std::visit(
        [&](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, ApplyEvent>) {
            out.push_back({{"event", "apply"},
                           {"iteration", e.iteration},
                           {"student", to_string(e.student)},
                           {"project", to_string(e.project)}});
          } else if constexpr (std::is_same_v<T, DeleteEvent>) {
            out.push_back({{"event", "delete"},
                           {"iteration", e.iteration},
                           {"student", to_string(e.student)},
                           {"project", to_string(e.project)},
                           {"reason", std::string(to_string(e.reason))}});
          } else if constexpr (std::is_same_v<T, CriticalSetEvent>) {
            out.push_back({{"event", "critical_set"},
                           {"iteration", e.iteration},
                           {"members", id_array(e.members)},
                           {"neighbourhood", id_array(e.neighbourhood)},
                           {"reduced_students", e.reduced_students},
                           {"dummies", e.dummies},
                           {"matching_size", e.matching_size}});
          } else {
            out.push_back({{"event", "pr_star"}, {"projects", id_array(e.projects)}});
          }
        },
        ev);
  }
  return out;
}

}  // namespace spast

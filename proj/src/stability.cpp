#include "spast/stability.hpp"

#include <algorithm>

namespace spast {

std::string_view to_string(Notion n) {
  switch (n) {
    case Notion::Weak:
      return "weak";
    case Notion::Strong:
      return "strong";
    case Notion::Super:
      return "super";
  }
  return "?";
}

std::optional<Notion> parse_notion(std::string_view s) {
  if (s == "weak") return Notion::Weak;
  if (s == "strong") return Notion::Strong;
  if (s == "super") return Notion::Super;
  return std::nullopt;
}

std::vector<MatchingViolation> check_valid(const Instance& inst, const Matching& m) {
  std::vector<MatchingViolation> out;
  if (m.num_students() != inst.num_students()) {
    out.push_back({"shape", "matching covers " + std::to_string(m.num_students()) + " students, instance has " +
                                std::to_string(inst.num_students())});
    return out;
  }
  RankTable ranks(inst);
  std::vector<int> load_p(inst.num_projects(), 0);
  std::vector<int> load_l(inst.num_lecturers(), 0);
  for (auto [s, p] : m.pairs()) {
    if (p.index() >= inst.num_projects()) {
      out.push_back({"unknown-project", to_string(s) + " assigned to unknown project"});
      continue;
    }
    if (!ranks.student_rank(s, p)) {
      out.push_back({"unacceptable-pair", to_string(s) + " does not find " + to_string(p) + " acceptable"});
    }
    ++load_p[p.index()];
    ++load_l[inst.owner(p).index()];
  }
  for (std::size_t j = 0; j < inst.num_projects(); ++j) {
    if (load_p[j] > inst.project_capacity[j]) {
      out.push_back({"project-capacity", to_string(ProjectId{j}) + " has " + std::to_string(load_p[j]) +
                                             " assignees, capacity " + std::to_string(inst.project_capacity[j])});
    }
  }
  for (std::size_t k = 0; k < inst.num_lecturers(); ++k) {
    if (load_l[k] > inst.lecturer_capacity[k]) {
      out.push_back({"lecturer-capacity", to_string(LecturerId{k}) + " has " + std::to_string(load_l[k]) +
                                              " assignees, capacity " + std::to_string(inst.lecturer_capacity[k])});
    }
  }
  return out;
}

namespace {

// Calls visit(s, p, clause) for each blocking pair until it returns false.
template <class Visit>
void scan(const Instance& inst, const RankTable& ranks, const Matching& m, Notion notion, Visit&& visit) {
  const std::size_t n2 = inst.num_projects();
  const std::size_t n3 = inst.num_lecturers();
  std::vector<int> load_p(n2, 0), load_l(n3, 0);
  // Largest lecturer rank among assignees: the worst student/s.
  std::vector<int> worst_p(n2, -1), worst_l(n3, -1);
  for (auto [s, p] : m.pairs()) {
    const LecturerId l = inst.owner(p);
    const int r = ranks.lecturer_rank(l, s).value_or(-1);
    ++load_p[p.index()];
    ++load_l[l.index()];
    worst_p[p.index()] = std::max(worst_p[p.index()], r);
    worst_l[l.index()] = std::max(worst_l[l.index()], r);
  }

  for (std::size_t i = 0; i < inst.num_students(); ++i) {
    const StudentId s{i};
    const auto current = m.project_of(s);
    const std::optional<int> current_rank = current ? ranks.student_rank(s, *current) : std::nullopt;
    for (const auto& tie : inst.student_prefs[i]) {
      for (ProjectId p : tie) {
        if (current && *current == p) continue;
        const LecturerId l = inst.owner(p);
        const int srank = *ranks.student_rank(s, p);
        const bool improves = !current || srank < *current_rank;
        const bool indifferent = current && srank == *current_rank;
        const int lrank = ranks.lecturer_rank(l, s).value_or(0);
        const bool p_under = load_p[p.index()] < inst.capacity(p);
        const bool l_under = load_l[l.index()] < inst.capacity(l);
        const bool in_ml = current && inst.owner(*current) == l;
        const int wl = worst_l[l.index()];
        const int wp = worst_p[p.index()];

        const char* clause = nullptr;
        switch (notion) {
          case Notion::Strong:
            if (improves) {
              if (p_under && l_under) clause = "1a+1b(i)";
              else if (p_under && (in_ml || lrank <= wl)) clause = "1a+1b(ii)";
              else if (!p_under && lrank <= wp) clause = "1a+1b(iii)";
            } else if (indifferent) {
              if (p_under && l_under && !in_ml) clause = "2a+2b(i)";
              else if (p_under && !l_under && !in_ml && lrank < wl) clause = "2a+2b(ii)";
              else if (!p_under && lrank < wp) clause = "2a+2b(iii)";
            }
            break;
          case Notion::Weak:
            if (improves) {
              if (p_under && l_under) clause = "(a)+(b)(i)";
              else if (p_under && (in_ml || lrank < wl)) clause = "(a)+(b)(ii)";
              else if (!p_under && lrank < wp) clause = "(a)+(b)(iii)";
            }
            break;
          case Notion::Super:
            if (improves || indifferent) {
              if (p_under && l_under) clause = "(a)+(b)(i)";
              else if (p_under && (in_ml || lrank <= wl)) clause = "(a)+(b)(ii)";
              else if (!p_under && lrank <= wp) clause = "(a)+(b)(iii)";
            }
            break;
        }
        if (clause && !visit(s, p, clause)) return;
      }
    }
  }
}

}  // namespace

BlockingReport blocking_pairs(const Instance& inst, const RankTable& ranks, const Matching& m, Notion notion) {
  BlockingReport report;
  report.notion = notion;
  scan(inst, ranks, m, notion, [&](StudentId s, ProjectId p, const char* clause) {
    report.pairs.push_back({s, p, clause});
    return true;
  });
  return report;
}

BlockingReport blocking_pairs(const Instance& inst, const Matching& m, Notion notion) {
  return blocking_pairs(inst, RankTable(inst), m, notion);
}

bool is_stable(const Instance& inst, const RankTable& ranks, const Matching& m, Notion notion) {
  bool stable = true;
  scan(inst, ranks, m, notion, [&](StudentId, ProjectId, const char*) { return stable = false; });
  return stable;
}

}  // namespace spast

#include "spast/oracle.hpp"

#include <functional>
#include <set>

#include "spast/stability.hpp"

namespace spast {

InstanceTooLarge::InstanceTooLarge(double space, std::uint64_t bound)
    : std::runtime_error("instance too large for enumeration: search space " + std::to_string(space) +
                         " exceeds bound " + std::to_string(bound)),
      bound_(bound) {}

OracleResult enumerate_strongly_stable(const Instance& inst, const OracleOptions& options) {
  const std::size_t n1 = inst.num_students();
  double space = 1;
  for (const auto& list : inst.student_prefs) {
    std::size_t len = 0;
    for (const auto& tie : list) len += tie.size();
    space *= static_cast<double>(len + 1);
  }
  if (space > static_cast<double>(options.max_enum)) throw InstanceTooLarge(space, options.max_enum);

  const RankTable ranks(inst);
  std::vector<std::vector<ProjectId>> choices(n1);
  for (std::size_t i = 0; i < n1; ++i) {
    for (const auto& tie : inst.student_prefs[i]) choices[i].insert(choices[i].end(), tie.begin(), tie.end());
  }

  OracleResult out;
  out.best_rank.assign(n1, std::nullopt);
  std::vector<int> load_p(inst.num_projects(), 0), load_l(inst.num_lecturers(), 0);
  Matching current(n1);

  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n1) {
      ++out.num_matchings;
      if (options.keep_all) out.all_matchings.push_back(current);
      if (is_stable(inst, ranks, current, Notion::Strong)) out.stable.push_back(current);
      return;
    }
    const StudentId s{i};
    for (ProjectId p : choices[i]) {
      const auto l = inst.owner(p).index();
      if (load_p[p.index()] >= inst.capacity(p) || load_l[l] >= inst.lecturer_capacity[l]) continue;
      ++load_p[p.index()];
      ++load_l[l];
      current.assign(s, p);
      rec(i + 1);
      current.unassign(s);
      --load_p[p.index()];
      --load_l[l];
    }
    rec(i + 1);
  };
  rec(0);

  for (const auto& m : out.stable) {
    for (auto [s, p] : m.pairs()) {
      const int r = *ranks.student_rank(s, p);
      auto& best = out.best_rank[s.index()];
      if (!best || r < *best) best = r;
    }
  }
  return out;
}

AgreementReport assert_agreement(const Instance& inst, const std::optional<Matching>& candidate,
                                 const OracleResult& oracle) {
  AgreementReport rep;
  if (candidate.has_value() != oracle.solvable()) {
    rep.issues.push_back(candidate ? "solver found a matching but the oracle finds none"
                                   : "solver reports no matching but the oracle finds " +
                                         std::to_string(oracle.stable.size()));
    return rep;
  }
  if (!candidate) return rep;

  const Matching& m = *candidate;
  for (const auto& v : check_valid(inst, m)) rep.issues.push_back("invalid matching: " + v.message);
  if (!rep.issues.empty()) return rep;
  const RankTable ranks(inst);
  for (const auto& bp : blocking_pairs(inst, ranks, m, Notion::Strong).pairs) {
    rep.issues.push_back("blocking pair (" + to_string(bp.student) + ", " + to_string(bp.project) + ") [" +
                         bp.clause + "]");
  }
  for (std::size_t i = 0; i < inst.num_students(); ++i) {
    const StudentId s{i};
    const auto mine = m.project_of(s);
    const auto best = oracle.best_rank[i];
    const std::optional<int> rank = mine ? ranks.student_rank(s, *mine) : std::nullopt;
    if (rank != best) {
      rep.issues.push_back(to_string(s) + " has rank " + (rank ? std::to_string(*rank) : "none") +
                           ", oracle best is " + (best ? std::to_string(*best) : "none"));
    }
    for (const auto& other : oracle.stable) {
      if (mine.has_value() != other.assigned(s)) {
        rep.issues.push_back(to_string(s) + " assignment status differs from an oracle matching");
        break;
      }
    }
  }
  return rep;
}

AgreementReport assert_agreement(const Instance& inst, const SolveResult& result, const OracleResult& oracle) {
  return assert_agreement(inst, result.matching, oracle);
}

}  // namespace spast

// Acceptance suite: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "spast/bench.hpp"
#include "spast/generator.hpp"
#include "spast/instance.hpp"
#include "spast/oracle.hpp"
#include "spast/reduced_graph.hpp"
#include "spast/solver.hpp"
#include "spast/stability.hpp"

using namespace spast;

namespace {

using PairSet = std::set<std::pair<int, int>>;  // 1-based (student, project)

Instance load(const std::string& name) {
  std::ifstream f(std::string(SPAST_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_instance(ss.str());
}

PairSet pairs_of(const Matching& m) {
  PairSet out;
  for (auto [s, p] : m.pairs()) out.emplace(s.value + 1, p.value + 1);
  return out;
}

std::string show(const PairSet& s) {
  std::string out = "{";
  for (auto [a, b] : s) out += (out.size() > 1 ? ", " : "") + ("(s" + std::to_string(a) + ",p" + std::to_string(b) + ")");
  return out + "}";
}

int failures = 0;

// The first line of detail goes on the verdict line; any further lines are
// printed indented underneath.
void report(int id, bool pass, const std::string& what, const std::string& detail) {
  const auto cut = detail.find('\n');
  std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.substr(0, cut).c_str());
  if (cut != std::string::npos) {
    std::istringstream rest(detail.substr(cut + 1));
    for (std::string line; std::getline(rest, line);) std::printf("    %s\n", line.c_str());
  }
  std::fflush(stdout);
  failures += !pass;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

void golden_trace() {
  const Instance inst = load("i3.txt");
  const auto t0 = std::chrono::steady_clock::now();
  const SolveResult res = solve(inst);
  const double elapsed = seconds_since(t0);

  std::map<int, PairSet> before_cs, after_cs;
  std::map<int, std::vector<int>> z;
  std::set<int> cs_seen;
  std::vector<int> pr_star;
  for (const auto& ev : res.trace) {
    if (const auto* d = std::get_if<DeleteEvent>(&ev)) {
      auto& bucket = cs_seen.count(d->iteration) ? after_cs : before_cs;
      bucket[d->iteration].emplace(d->student.value + 1, d->project.value + 1);
    } else if (const auto* c = std::get_if<CriticalSetEvent>(&ev)) {
      cs_seen.insert(c->iteration);
      for (StudentId s : c->members) z[c->iteration].push_back(s.value + 1);
    } else if (const auto* p = std::get_if<PRStarEvent>(&ev)) {
      for (ProjectId q : p->projects) pr_star.push_back(q.value + 1);
    }
  }

  std::vector<std::string> wrong;
  auto expect = [&](bool ok, const std::string& msg) {
    if (!ok) wrong.push_back(msg);
  };
  expect(before_cs[1] == PairSet{{3, 4}, {6, 2}, {7, 3}}, "iteration 1 dominance deletions " + show(before_cs[1]));
  expect(z[1] == std::vector<int>{1, 2, 3}, "Z(1)");
  expect(after_cs[1] == PairSet{{1, 1}, {2, 1}, {3, 1}}, "iteration 1 critical-set deletions " + show(after_cs[1]));
  PairSet it2 = before_cs[2];
  it2.insert(after_cs[2].begin(), after_cs[2].end());
  expect(it2 == PairSet{{4, 2}, {5, 2}}, "iteration 2 deletions " + show(it2));
  PairSet it3 = before_cs[3];
  it3.insert(after_cs[3].begin(), after_cs[3].end());
  expect(it3 == PairSet{{8, 5}}, "iteration 3 deletions " + show(it3));
  expect(res.deletions().size() == 9, "total deletions " + std::to_string(res.deletions().size()));
  expect(pr_star == std::vector<int>{5}, "P_R*");
  expect(res.solvable() && pairs_of(*res.matching) == PairSet{{1, 6}, {2, 2}, {4, 5}, {5, 3}, {6, 4}, {7, 1}, {8, 1}},
         "final matching");
  expect(elapsed < 0.010, "runtime");

  std::ostringstream detail;
  detail << "runtime " << elapsed * 1e3 << " ms";
  for (const auto& w : wrong) detail << "; mismatch: " << w;
  report(1, wrong.empty(), "golden trace on the 8-student worked example", detail.str());
}

void small_verdicts() {
  const SolveResult i2 = solve(load("i2.txt"));
  const SolveResult none = solve(load("unsolvable.txt"));
  const bool ok_i2 = i2.solvable() && pairs_of(*i2.matching) == PairSet{{1, 1}};
  const bool ok_none = !none.solvable();
  report(2, ok_i2 && ok_none, "two-lecturer instance gives {(s1,p1)}; two-student instance has no matching",
         std::string("I2 ") + (i2.solvable() ? show(pairs_of(*i2.matching)) : "none") + ", unsolvable " +
             (none.solvable() ? "found a matching" : "none"));
}

struct CorpusStats {
  int instances = 0;
  int solvable = 0;
  int verdict_ok = 0;
  int sound_ok = 0;
  int same_size_ok = 0;
  int same_size_checked = 0;
  double seconds = 0;
  std::vector<std::string> first_failures;
  std::vector<std::string> unsound;
  std::vector<std::string> uneven;
  int disagree_without_unsound = 0;
  std::map<std::string, int> unsound_reasons;
};

CorpusStats corpus_check(int count) {
  CorpusStats st;
  std::mt19937_64 rng(20240601);
  const double ties[] = {0.0, 0.3, 0.7};
  const auto t0 = std::chrono::steady_clock::now();
  for (int t = 0; t < count; ++t) {
    GenParams g;
    g.n2 = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    g.n3 = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(3, g.n2))(rng);
    g.n1 = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    g.pref_len_min = 1;
    g.pref_len_max = std::min<std::size_t>(g.n2, 4);
    g.tie_probability = ties[t % 3];
    g.capacity_min = 1;
    g.capacity_max = std::uniform_int_distribution<int>(1, 3)(rng);
    g.seed = rng();
    const Instance inst = generate(g);

    const SolveResult res = solve(inst);
    const OracleResult oracle = enumerate_strongly_stable(inst, {10'000'000, false});
    ++st.instances;
    st.solvable += oracle.solvable();

    const AgreementReport agree = assert_agreement(inst, res, oracle);
    st.verdict_ok += agree.ok();

    PairSet in_stable;
    for (const auto& m : oracle.stable) {
      const PairSet ps = pairs_of(m);
      in_stable.insert(ps.begin(), ps.end());
    }
    bool sound = true;
    for (const auto& d : res.deletions()) {
      if (sound && in_stable.count({d.student.value + 1, d.project.value + 1})) {
        sound = false;
        const std::string reason(to_string(d.reason));
        if (st.unsound_reasons[reason]++ == 0) {
          st.unsound.push_back(reason + " deletion of (" + to_string(d.student) + "," + to_string(d.project) + ")\n" +
                               to_text(inst));
        }
      }
    }
    st.sound_ok += sound;
    st.disagree_without_unsound += sound && !agree.ok();
    if (sound && !agree.ok() && st.first_failures.size() < 3) {
      st.first_failures.push_back(agree.issues.front() + "\n" + to_text(inst));
    }

    if (oracle.solvable()) {
      ++st.same_size_checked;
      bool same = true;
      const Matching& first = oracle.stable.front();
      for (const auto& m : oracle.stable) {
        same &= m.size() == first.size();
        for (std::size_t i = 0; i < inst.num_students(); ++i) same &= m.assigned(StudentId{i}) == first.assigned(StudentId{i});
      }
      st.same_size_ok += same;
      if (!same && st.uneven.size() < 2) st.uneven.push_back(to_text(inst));
    }
  }
  st.seconds = seconds_since(t0);
  return st;
}

void oracle_criteria() {
  const CorpusStats st = corpus_check(10'000);
  std::ostringstream d3;
  d3 << st.verdict_ok << "/" << st.instances << " agree, " << st.solvable << " solvable, " << st.seconds << " s";
  d3 << ", " << st.disagree_without_unsound << " disagreements without an unsound deletion";
  for (const auto& f : st.first_failures) d3 << "\n" << f;
  report(3, st.verdict_ok == st.instances && st.seconds < 300, "oracle equivalence on 10000 small instances", d3.str());

  std::string d4 = std::to_string(st.sound_ok) + "/" + std::to_string(st.instances);
  d4 += "; first unsound deletion by reason:";
  for (const auto& [reason, n] : st.unsound_reasons) d4 += " " + reason + " " + std::to_string(n);
  for (const auto& f : st.unsound) d4 += "\n" + f;
  report(4, st.sound_ok == st.instances, "no strongly stable pair is ever deleted", d4);
  std::string d5 = std::to_string(st.same_size_ok) + "/" + std::to_string(st.same_size_checked) + " solvable instances";
  for (const auto& f : st.uneven) d5 += "\n" + f;
  report(5, st.same_size_ok == st.same_size_checked,
         "all strongly stable matchings share size and assigned students", d5);
}

Matching random_matching(const Instance& inst, std::mt19937_64& rng) {
  Matching m(inst.num_students());
  std::vector<int> lp(inst.num_projects(), 0), ll(inst.num_lecturers(), 0);
  std::vector<std::size_t> order(inst.num_students());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i : order) {
    std::vector<ProjectId> opts;
    for (const auto& tie : inst.student_prefs[i]) opts.insert(opts.end(), tie.begin(), tie.end());
    const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, opts.size())(rng);
    if (pick == opts.size()) continue;
    const ProjectId p = opts[pick];
    const auto l = inst.owner(p).index();
    if (lp[p.index()] < inst.capacity(p) && ll[l] < inst.lecturer_capacity[l]) {
      ++lp[p.index()];
      ++ll[l];
      m.assign(StudentId{i}, p);
    }
  }
  return m;
}

void nesting() {
  std::mt19937_64 rng(77);
  int ok = 0, strict_ok = 0, strict = 0;
  const int total = 1000;
  for (int t = 0; t < total; ++t) {
    GenParams g;
    g.n1 = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    g.n2 = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    g.n3 = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(3, g.n2))(rng);
    g.pref_len_max = std::min<std::size_t>(g.n2, 4);
    g.tie_probability = t % 3 == 0 ? 0.0 : 0.5;
    g.capacity_max = 3;
    g.seed = rng();
    const Instance inst = generate(g);
    const RankTable ranks(inst);
    const Matching m = random_matching(inst, rng);
    auto as_set = [&](Notion n) {
      PairSet s;
      for (const auto& bp : blocking_pairs(inst, ranks, m, n).pairs) s.emplace(bp.student.value, bp.project.value);
      return s;
    };
    const PairSet weak = as_set(Notion::Weak), strong = as_set(Notion::Strong), super = as_set(Notion::Super);
    const bool nested = std::includes(strong.begin(), strong.end(), weak.begin(), weak.end()) &&
                        std::includes(super.begin(), super.end(), strong.begin(), strong.end());
    ok += nested;
    if (g.tie_probability == 0.0) {
      ++strict;
      strict_ok += weak == strong && strong == super;
    }
  }
  report(6, ok == total && strict_ok == strict, "weak-blocking implies strong-blocking implies super-blocking",
         std::to_string(ok) + "/" + std::to_string(total) + " nested, " + std::to_string(strict_ok) + "/" +
             std::to_string(strict) + " tie-free identical");
}

void complexity() {
  BenchParams params;
  params.repeats = 5;
  const auto rows = run_bench(params);
  const double slope = loglog_slope(rows);
  std::ostringstream d;
  d << "slope " << slope;
  bool fast = false;
  for (const auto& r : rows) {
    d << "; m=" << r.m << " median " << r.median_seconds << " s max " << r.max_seconds << " s";
    if (r.m == 8000) fast = r.max_seconds < 5.0;
  }
  report(7, slope <= 2.3 && fast, "runtime grows at most like m^2.3 and m=8000 solves in under 5 s", d.str());
}

ReducedGraph random_reduced(std::mt19937_64& rng) {
  ReducedGraph gr;
  const int ns = std::uniform_int_distribution<int>(1, 8)(rng);
  const int np = std::uniform_int_distribution<int>(1, 5)(rng);
  for (int j = 0; j < np; ++j) {
    gr.add_project(ProjectId{j}, LecturerId{j % 2}, std::uniform_int_distribution<int>(1, 3)(rng));
  }
  std::bernoulli_distribution dummy(0.2), edge(0.35);
  for (int i = 0; i < ns; ++i) {
    const bool is_dummy = dummy(rng);
    const std::size_t s = gr.add_student(is_dummy ? std::nullopt : std::optional<StudentId>(StudentId{i}), LecturerId{0});
    bool any = false;
    for (int j = 0; j < np; ++j) {
      if (edge(rng)) {
        gr.add_edge(s, static_cast<std::size_t>(j));
        any = true;
      }
    }
    if (!any) gr.add_edge(s, std::uniform_int_distribution<std::size_t>(0, static_cast<std::size_t>(np) - 1)(rng));
  }
  return gr;
}

void deficiency_identity() {
  std::mt19937_64 rng(4242);
  int ok = 0;
  const int total = 1000;
  for (int t = 0; t < total; ++t) {
    const ReducedGraph gr = random_reduced(rng);
    const ReducedMatching mr = max_matching_reduced(gr);
    const std::size_t n = gr.students.size();
    long delta = 0;  // the empty set has deficiency 0
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<std::size_t> x;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1u) x.push_back(i);
      }
      delta = std::max(delta, deficiency(gr, x));
    }
    const CriticalSet z = critical_set(gr, mr);
    const bool identity = static_cast<long>(mr.size()) == static_cast<long>(n) - delta;
    const bool critical = deficiency(gr, z.members) == delta;
    ok += identity && critical;
  }
  report(8, ok == total, "maximum matching size equals |S_r| minus the deficiency",
         std::to_string(ok) + "/" + std::to_string(total) + " random reduced graphs");
}

}  // namespace

int main() {
  golden_trace();
  small_verdicts();
  oracle_criteria();
  nesting();
  complexity();
  deficiency_identity();
  return failures == 0 ? 0 : 1;
}

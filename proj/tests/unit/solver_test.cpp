#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "spast/solver.hpp"
#include "spast/stability.hpp"

using namespace spast;
using test::L;
using test::P;
using test::Pairs;
using test::S;

namespace {

Pairs deleted_by(const StrongSolver& s, DeletionReason reason) {
  Pairs out;
  for (const auto& ev : s.trace()) {
    if (const auto* d = std::get_if<DeleteEvent>(&ev); d && d->reason == reason) {
      out.emplace(to_string(d->student), to_string(d->project));
    }
  }
  return out;
}

std::vector<std::string> real_names(const ReducedGraph& gr) {
  std::vector<std::string> out;
  for (const auto& st : gr.students) {
    if (st.real) out.push_back(to_string(*st.real));
  }
  return out;
}

}  // namespace

TEST_CASE("worked example, first iteration step by step") {
  const Instance inst = test::load("i3.txt");
  StrongSolver solver(inst);

  // s1 applies first.
  REQUIRE(solver.apply_round());
  CHECK(solver.graph().has_edge(S(1), P(1)));
  CHECK(solver.graph().num_edges() == 1);

  // Rounds for s2, s3, s4: the lecturer check fires when s4 reaches p2.
  for (int round = 0; round < 3; ++round) REQUIRE(solver.apply_round());
  CHECK(solver.graph().degree(L(1)) == 4);
  CHECK(solver.graph().alpha(L(1)) == 3);
  CHECK(solver.graph().is_deleted(S(6), P(2)));

  solver.run_applications();
  const ProvisionalGraph& g = solver.graph();
  CHECK(test::pairs_of(g.deleted_pairs()) == Pairs{{"s3", "p4"}, {"s6", "p2"}, {"s7", "p3"}});
  CHECK(deleted_by(solver, DeletionReason::ProjectDominance) == Pairs{{"s3", "p4"}, {"s7", "p3"}});
  CHECK(deleted_by(solver, DeletionReason::LecturerDominance) == Pairs{{"s6", "p2"}});

  CHECK(g.is_bound(S(5), P(3)));
  CHECK(g.is_bound(S(6), P(4)));
  CHECK(g.is_bound(S(7), P(1)));
  CHECK(g.is_bound(S(8), P(5)));
  CHECK(g.is_lower_rank(S(4), P(2)));
  CHECK(g.is_lower_rank(S(5), P(2)));
  CHECK_FALSE(g.is_bound(S(4), P(2)));
  CHECK_FALSE(g.is_bound(S(5), P(2)));
  CHECK(g.oversubscribed(P(1)));
  CHECK_FALSE(g.is_bound(S(1), P(1)));

  const ReducedGraph gr = solver.build_reduced_graph();
  CHECK(real_names(gr) == std::vector<std::string>{"s1", "s2", "s3", "s4"});
  REQUIRE(gr.num_dummies() == 1);
  std::vector<std::string> dummy_adj;
  for (const auto& st : gr.students) {
    if (st.real) continue;
    for (std::size_t e : st.adj) dummy_adj.push_back(to_string(gr.projects[gr.edges[e].project].id));
  }
  CHECK(dummy_adj == std::vector<std::string>{"p2"});
  for (const auto& p : gr.projects) {
    if (p.id == P(1)) CHECK(p.quota == 1);
    if (p.id == P(2)) CHECK(p.quota == 2);
  }

  auto [mr, z] = solver.find_critical_set(gr);
  CHECK(mr.size() == 3);
  // The dummy is saturated onto p2 before the real students are placed.
  for (std::size_t i = 0; i < gr.students.size(); ++i) {
    if (!gr.students[i].real) CHECK(gr.projects[*mr.mate[i]].id == P(2));
  }
  CHECK(test::names(z.real) == std::vector<std::string>{"s1", "s2", "s3"});
  CHECK(test::names(z.neighbourhood) == std::vector<std::string>{"p1"});
  CHECK(deficiency(gr, z.members) == 2);  // |S_r| - |M_r|

  CHECK(solver.delete_critical_tails(z) == 3);
  CHECK(deleted_by(solver, DeletionReason::CriticalSet) == Pairs{{"s1", "p1"}, {"s2", "p1"}, {"s3", "p1"}});
}

TEST_CASE("worked example, later iterations") {
  const Instance inst = test::load("i3.txt");
  StrongSolver solver(inst);

  CHECK_FALSE(solver.inner_iteration().real.empty());
  CHECK(solver.inner_iteration().real.empty());  // iteration 2: Z empty
  CHECK(solver.graph().replete(P(1)));
  CHECK(solver.graph().degree(P(1)) < inst.capacity(P(1)));
  CHECK(solver.process_replete_undersubscribed() == 2);
  CHECK(deleted_by(solver, DeletionReason::RepleteUndersubscribed) == Pairs{{"s4", "p2"}, {"s5", "p2"}});

  CHECK(solver.inner_iteration().real.empty());  // iteration 3
  CHECK(solver.build_reduced_graph().empty());
  CHECK(test::pairs_of(solver.graph().deleted_pairs()).count({"s8", "p5"}) == 1);
  // p2 is replete and undersubscribed, but its rejected students are worse
  // than the tail of L1.
  CHECK(solver.process_replete_undersubscribed() == 0);
  CHECK(solver.prune_cross_lecturer_unbound() == 0);

  const auto pr_star = solver.compute_pr_star();
  CHECK(test::names(pr_star) == std::vector<std::string>{"p5"});
  const Matching m = solver.feasible_matching(pr_star);
  CHECK(test::pairs_of(m) == Pairs{{"s1", "p6"}, {"s2", "p2"}, {"s4", "p5"}, {"s5", "p3"},
                                   {"s6", "p4"}, {"s7", "p1"}, {"s8", "p1"}});
}

TEST_CASE("end-to-end verdicts on the small examples") {
  const SolveResult i3 = solve(test::load("i3.txt"));
  REQUIRE(i3.solvable());
  CHECK(test::pairs_of(*i3.matching) == Pairs{{"s1", "p6"}, {"s2", "p2"}, {"s4", "p5"}, {"s5", "p3"},
                                              {"s6", "p4"}, {"s7", "p1"}, {"s8", "p1"}});
  CHECK(i3.deletions().size() == 9);
  CHECK(i3.stats.m == 17);

  const SolveResult i2 = solve(test::load("i2.txt"));
  REQUIRE(i2.solvable());
  CHECK(test::pairs_of(*i2.matching) == Pairs{{"s1", "p1"}});

  CHECK_FALSE(solve(test::load("unsolvable.txt")).solvable());

  const SolveResult i1 = solve(test::load("i1.txt"));
  REQUIRE(i1.solvable());
  CHECK(is_stable(test::load("i1.txt"), RankTable(test::load("i1.txt")), *i1.matching, Notion::Strong));
}

TEST_CASE("a tied head is applied to in one round") {
  const Instance inst = test::load("i1.txt");
  StrongSolver solver(inst);
  REQUIRE(solver.apply_round());
  CHECK(solver.graph().has_edge(S(1), P(1)));
  CHECK(solver.graph().has_edge(S(1), P(2)));
  CHECK(solver.graph().num_edges() == 2);
}

TEST_CASE("a student with an empty list never applies") {
  const Instance inst = parse_instance("2 1 1\ns1 :\ns2 : p1\np1 : 1 : l1\nl1 : 1 : s2\n");
  StrongSolver solver(inst);
  solver.run_applications();
  CHECK_FALSE(solver.graph().assigned(S(1)));
  CHECK(solver.graph().assigned(S(2)));
}

TEST_CASE("project below capacity triggers no deletion") {
  const Instance inst = parse_instance("2 1 1\ns1 : p1\ns2 : p1\np1 : 2 : l1\nl1 : 2 : s1 s2\n");
  StrongSolver solver(inst);
  solver.run_applications();
  CHECK(solver.graph().deleted_pairs().empty());
}

TEST_CASE("lecturer dominance removes every pair of the dominated student") {
  // s3 is worse than s1 and s2 who fill l1; it loses both p1 and p2.
  const Instance inst = parse_instance(
      "3 2 1\ns1 : p1\ns2 : p2\ns3 : p1 p2\np1 : 2 : l1\np2 : 2 : l1\nl1 : 2 : s1 s2 s3\n");
  StrongSolver solver(inst);
  solver.run_applications();
  CHECK(deleted_by(solver, DeletionReason::LecturerDominance) == Pairs{{"s3", "p1"}, {"s3", "p2"}});
  CHECK(solver.graph().list_empty(S(3)));
}

TEST_CASE("lecturer below capacity triggers no lecturer deletion") {
  const Instance inst = parse_instance("2 2 1\ns1 : p1\ns2 : p2\np1 : 1 : l1\np2 : 1 : l1\nl1 : 2 : s1 s2\n");
  StrongSolver solver(inst);
  REQUIRE(solver.apply_round());
  CHECK(solver.delete_dominated_lecturer(L(1)) == 0);
}

TEST_CASE("critical-set deletion clears a tail tie of three") {
  const Instance inst =
      parse_instance("3 1 1\ns1 : p1\ns2 : p1\ns3 : p1\np1 : 1 : l1\nl1 : 1 : (s1 s2 s3)\n");
  StrongSolver solver(inst);
  solver.run_applications();
  const ReducedGraph gr = solver.build_reduced_graph();
  auto [mr, z] = solver.find_critical_set(gr);
  CHECK(mr.size() == 1);
  CHECK(z.real.size() == 3);
  CHECK(solver.delete_critical_tails(z) == 3);
  CHECK_FALSE(solve(inst).solvable());
}

TEST_CASE("reduced graph of a single bound edge is empty") {
  const Instance inst = parse_instance("1 1 1\ns1 : p1\np1 : 1 : l1\nl1 : 1 : s1\n");
  StrongSolver solver(inst);
  solver.run_applications();
  CHECK(solver.graph().is_bound(S(1), P(1)));
  CHECK(solver.build_reduced_graph().empty());
  const auto mr = max_matching_reduced(solver.build_reduced_graph());
  CHECK(mr.size() == 0);
}

TEST_CASE("a perfect reduced matching leaves the critical set empty") {
  ReducedGraph gr;
  const auto a = gr.add_student(S(1));
  const auto b = gr.add_student(S(2));
  const auto p = gr.add_project(P(1), L(1), 1);
  const auto q = gr.add_project(P(2), L(1), 1);
  gr.add_edge(a, p);
  gr.add_edge(a, q);
  gr.add_edge(b, p);
  const auto mr = max_matching_reduced(gr);
  CHECK(mr.size() == 2);
  CHECK(critical_set(gr, mr).members.empty());

  ReducedGraph one;
  one.add_edge(one.add_student(S(1)), one.add_project(P(1), L(1), 1));
  CHECK(critical_set(one, max_matching_reduced(one)).members.empty());
}

TEST_CASE("bound student loses its unbound edge to another lecturer") {
  // s1 is bound to p1 (l1) and unbound to p2 (l2), where p2 is
  // oversubscribed and s1 sits in the tail.
  const Instance inst = parse_instance(
      "2 2 2\ns1 : (p1 p2)\ns2 : p2\np1 : 1 : l1\np2 : 1 : l2\nl1 : 1 : s1\nl2 : 1 : (s1 s2)\n");
  StrongSolver solver(inst);
  while (!solver.inner_iteration().real.empty()) {
  }
  CHECK(solver.graph().is_bound(S(1), P(1)));
  CHECK_FALSE(solver.graph().is_bound(S(1), P(2)));
  CHECK(solver.prune_cross_lecturer_unbound() == 1);
  CHECK(deleted_by(solver, DeletionReason::CrossLecturerUnbound) == Pairs{{"s1", "p2"}});

  const SolveResult r = solve(inst);
  REQUIRE(r.solvable());
  CHECK(test::pairs_of(*r.matching) == Pairs{{"s1", "p1"}, {"s2", "p2"}});
}

TEST_CASE("a student with only unbound edges keeps them") {
  const Instance inst =
      parse_instance("2 1 1\ns1 : p1\ns2 : p1\np1 : 1 : l1\nl1 : 1 : (s1 s2)\n");
  StrongSolver solver(inst);
  solver.run_applications();
  CHECK(solver.prune_cross_lecturer_unbound() == 0);
}

TEST_CASE("P_R* excludes rejections of students holding something better") {
  // (s2,p1) is deleted when s1 fills p1, but s2 already holds p2, which it
  // prefers.
  const Instance inst = parse_instance(
      "2 2 2\ns1 : p1\ns2 : p2 p1\np1 : 1 : l1\np2 : 1 : l2\nl1 : 1 : s1 s2\nl2 : 1 : s2\n");
  StrongSolver solver(inst);
  while (!solver.inner_iteration().real.empty()) {
  }
  CHECK(solver.graph().is_deleted(S(2), P(1)));
  CHECK(solver.graph().replete(P(1)));
  CHECK(solver.compute_pr_star().empty());

  const Instance single = parse_instance("1 1 1\ns1 : p1\np1 : 1 : l1\nl1 : 1 : s1\n");
  StrongSolver none(single);
  none.run_applications();
  CHECK(none.compute_pr_star().empty());
}

TEST_CASE("feasible matching of an empty graph") {
  const Instance inst = parse_instance("1 1 1\ns1 :\np1 : 1 : l1\nl1 : 1 :\n");
  StrongSolver solver(inst);
  CHECK(solver.feasible_matching({}).size() == 0);
}

TEST_CASE("custom student order must be a permutation") {
  const Instance inst = test::load("i2.txt");
  SolveOptions bad;
  bad.student_order = {S(1), S(1)};
  CHECK_THROWS_AS(StrongSolver(inst, bad), std::invalid_argument);
  SolveOptions rev;
  rev.student_order = {S(2), S(1)};
  const SolveResult r = solve(inst, rev);
  REQUIRE(r.solvable());
  CHECK(test::pairs_of(*r.matching) == Pairs{{"s1", "p1"}});
}

TEST_CASE("trace rendering") {
  const SolveResult r = solve(test::load("i3.txt"));
  const std::string text = format_trace(r.trace);
  CHECK(text.find("# iteration 1: delete s3 p4 (project-dominance)") != std::string::npos);
  CHECK(text.find("# iteration 1: critical set {s1, s2, s3}, neighbourhood {p1}") != std::string::npos);
  CHECK(text.find("# iteration 2: delete s4 p2 (replete-undersubscribed)") != std::string::npos);
  CHECK(text.find("# pr_star {p5}") != std::string::npos);
  const auto js = trace_to_json(r.trace);
  CHECK(js.is_array());
  CHECK(js.size() == r.trace.size());
}

#include "doctest.h"
#include "helpers.hpp"
#include "spast/stability.hpp"

using namespace spast;
using test::P;
using test::S;

TEST_CASE("check_valid") {
  const Instance i2 = test::load("i2.txt");
  Matching m(2);
  m.assign(S(1), P(1));
  m.assign(S(2), P(1));
  const auto v = check_valid(i2, m);
  REQUIRE(v.size() == 1);
  CHECK(v[0].code == "project-capacity");

  Matching bad(2);
  bad.assign(S(2), P(2));
  CHECK(check_valid(i2, bad).front().code == "unacceptable-pair");

  const Instance i3 = test::load("i3.txt");
  Matching out(8);
  const int pairs[][2] = {{1, 6}, {2, 2}, {4, 5}, {5, 3}, {6, 4}, {7, 1}, {8, 1}};
  for (auto [s, p] : pairs) out.assign(S(s), P(p));
  CHECK(check_valid(i3, out).empty());
  CHECK(is_stable(i3, RankTable(i3), out, Notion::Strong));
}

TEST_CASE("the two-lecturer example under each notion") {
  const Instance i2 = test::load("i2.txt");
  const Matching m1 = parse_matching(test::read_data("i2_m1.txt"), i2);

  const auto strong = blocking_pairs(i2, m1, Notion::Strong);
  REQUIRE(strong.pairs.size() == 1);
  CHECK(strong.pairs[0].student == S(1));
  CHECK(strong.pairs[0].project == P(1));
  CHECK(strong.pairs[0].clause == "2a+2b(iii)");

  CHECK(blocking_pairs(i2, m1, Notion::Weak).pairs.empty());
  CHECK_FALSE(blocking_pairs(i2, m1, Notion::Super).pairs.empty());

  Matching m2(2);
  m2.assign(S(1), P(1));
  CHECK(blocking_pairs(i2, m2, Notion::Strong).pairs.empty());
}

TEST_CASE("same-lecturer carve-out") {
  // s1 is indifferent between p1 and p2 of the same lecturer; both are
  // undersubscribed. Moving within l1 does not block.
  const Instance inst = parse_instance("1 2 1\ns1 : (p1 p2)\np1 : 1 : l1\np2 : 1 : l1\nl1 : 2 : s1\n");
  Matching m(1);
  m.assign(S(1), P(1));
  CHECK(blocking_pairs(inst, m, Notion::Strong).pairs.empty());
  // Simply unassigned does block, via 1a+1b(i).
  const auto r = blocking_pairs(inst, Matching(1), Notion::Strong);
  REQUIRE_FALSE(r.pairs.empty());
  CHECK(r.pairs[0].clause == "1a+1b(i)");
}

TEST_CASE("full lecturer, undersubscribed project") {
  // l1 is full with s2 on p2; s1 is preferred and wants p1.
  const Instance inst = parse_instance(
      "2 2 1\ns1 : p1\ns2 : p2\np1 : 1 : l1\np2 : 1 : l1\nl1 : 1 : s1 s2\n");
  Matching m(2);
  m.assign(S(2), P(2));
  const auto r = blocking_pairs(inst, m, Notion::Strong);
  REQUIRE(r.pairs.size() == 1);
  CHECK(r.pairs[0].clause == "1a+1b(ii)");
}

TEST_CASE("notion parsing") {
  CHECK(parse_notion("weak") == Notion::Weak);
  CHECK(parse_notion("super") == Notion::Super);
  CHECK(to_string(Notion::Strong) == "strong");
  CHECK_FALSE(parse_notion("medium"));
}

#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "relnet/region.hpp"
#include "relnet/sweep.hpp"

using namespace relnet;

TEST_CASE("all-zero gains admit only the all-zero tuple") {
  GainVector g({0, 0, 0, 0});
  auto region = enumerate_region(g);
  REQUIRE(region.size() == 1);
  CHECK(region[0] == RateTuple());
}

TEST_CASE("pruned enumeration equals the unpruned reference at (1,1,1,1)") {
  GainVector g({1, 1, 1, 1});
  auto pruned = enumerate_region(g);
  auto brute = enumerate_region_brute(g);
  std::set<RateTuple> a(pruned.begin(), pruned.end()), b(brute.begin(), brute.end());
  CHECK(pruned.size() == brute.size());
  CHECK(a == b);
  // Single-exchange tuples sit inside the region at unit gains.
  RateTuple ex;
  ex.at(1, 2) = 1;
  ex.at(2, 1) = 1;
  CHECK(a.count(ex) == 1);
}

TEST_CASE("pruned enumeration equals the unpruned reference at (2,2,1,1)") {
  GainVector g({2, 2, 1, 1});
  auto pruned = enumerate_region(g);
  auto brute = enumerate_region_brute(g);
  std::set<RateTuple> a(pruned.begin(), pruned.end()), b(brute.begin(), brute.end());
  CHECK(a == b);
  for (const RateTuple& r : pruned) CHECK(capacity_member(r, g));
}

TEST_CASE("the size guard refuses gains whose box explodes") {
  GainVector g = fixtures::gains7654();
  CHECK_THROWS_AS(enumerate_region(g, 10'000), TooLarge);
}

TEST_CASE("boundary witnesses sit one bit outside, one per condition") {
  GainVector g = fixtures::gains7654();
  auto witnesses = boundary_witnesses(g);
  REQUIRE(witnesses.size() == capacity_conditions().size());
  for (size_t i = 0; i < witnesses.size(); ++i) {
    const Condition& c = capacity_conditions()[i];
    CHECK(c.lhs(witnesses[i]) == g.of(c.bound_node) + 1);
    CHECK_FALSE(capacity_member(witnesses[i], g));
  }
}

TEST_CASE("sampling is seeded, deterministic and force-includes the worked examples") {
  GainVector g = fixtures::gains7654();
  CHECK(sample_region(g, 0, 1).empty());
  auto s1 = sample_region(g, 40, 123);
  auto s2 = sample_region(g, 40, 123);
  CHECK(s1 == s2);
  REQUIRE(s1.size() == 40);
  CHECK(s1[0] == fixtures::example1());
  CHECK(s1[1] == fixtures::example2());
  for (const RateTuple& r : s1) CHECK(capacity_member(r, g));
  auto s3 = sample_region(g, 40, 124);
  CHECK(s1 != s3);
}

TEST_CASE("exhaustive pipeline at (2,1,1,1) is clean") {
  GainVector g({2, 1, 1, 1});
  SweepReport rep = achievability_sweep(g);
  CHECK(rep.clean());
  CHECK(rep.plan_failures == 0);
  CHECK(rep.in_region == rep.tuples_examined);
  CHECK(rep.sos_direct + rep.detoured() == rep.in_region);
  CHECK(rep.equivalence_disagreements == 0);
  CHECK(rep.in_region > 0);
}

TEST_CASE("random pipeline matches its seed and stays clean") {
  GainVector g({3, 2, 2, 1});
  SweepReport a = random_sweep(g, 60, 7);
  SweepReport b = random_sweep(g, 60, 7);
  CHECK(a.clean());
  CHECK(a.in_region == 60);
  CHECK(a.sos_direct == b.sos_direct);
  CHECK(a.detoured_ds1 == b.detoured_ds1);
  CHECK(a.detoured_ds2 == b.detoured_ds2);
  CHECK(a.detoured_search == b.detoured_search);
  CHECK(a.equivalence_disagreements == 0);
}

TEST_CASE("threaded sweeps aggregate to the same counts") {
  GainVector g({2, 2, 1, 1});
  SweepReport one = achievability_sweep(g, 4, 1);
  SweepReport four = achievability_sweep(g, 4, 4);
  CHECK(one.in_region == four.in_region);
  CHECK(one.sos_direct == four.sos_direct);
  CHECK(one.detoured_ds1 == four.detoured_ds1);
  CHECK(one.detoured_ds2 == four.detoured_ds2);
  CHECK(one.detoured_search == four.detoured_search);
  CHECK(one.clean());
  CHECK(four.clean());
}

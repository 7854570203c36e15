#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "relnet/genie.hpp"
#include "relnet/sweep.hpp"

using namespace relnet;

namespace {

std::multiset<int> atom_set(const GenieBound& b) {
  std::multiset<int> out;
  for (StreamId s : b.atoms) out.insert(stream_index(s));
  return out;
}

std::multiset<int> streams(std::initializer_list<std::pair<int, int>> list) {
  std::multiset<int> out;
  for (auto [a, b] : list) out.insert(stream_index(a, b));
  return out;
}

}  // namespace

TEST_CASE("pair cut, downlink: in-rates plus the later-to-earlier intra rate") {
  GainVector g = fixtures::gains7654();
  CutSpec cut{Phase::Downlink, {3, 4}, {3, 4}};
  GenieBound b = generate_bound(cut, g);
  CHECK(atom_set(b) == streams({{1, 3}, {2, 3}, {1, 4}, {2, 4}, {4, 3}}));
  CHECK(b.rhs_node == 3);
  CHECK(b.rhs == 5);

  cut.order = {4, 3};
  GenieBound b2 = generate_bound(cut, g);
  CHECK(atom_set(b2) == streams({{1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 4}}));
}

TEST_CASE("relay cut: six intra rates bounded by the strongest gain") {
  GainVector g = fixtures::gains7654();
  CutSpec cut{Phase::Downlink, {1, 2, 3, 4}, {1, 2, 3, 4}};
  GenieBound b = generate_bound(cut, g);
  CHECK(atom_set(b) ==
        streams({{2, 1}, {3, 1}, {4, 1}, {3, 2}, {4, 2}, {4, 3}}));
  CHECK(b.rhs == 7);
}

TEST_CASE("singleton uplink cut coincides with the plain cut bound") {
  GainVector g = fixtures::gains7654();
  CutSpec cut{Phase::Uplink, {2}, {2}};
  GenieBound b = generate_bound(cut, g);
  CHECK(atom_set(b) == streams({{2, 1}, {2, 3}, {2, 4}}));
  CHECK(b.rhs == 6);
}

TEST_CASE("empty side and bad orders are rejected") {
  GainVector g = fixtures::gains7654();
  CHECK_THROWS_AS(generate_bound(CutSpec{Phase::Downlink, {}, {}}, g), std::invalid_argument);
  CHECK_THROWS_AS(generate_bound(CutSpec{Phase::Downlink, {1, 2}, {1, 3}}, g),
                  std::invalid_argument);
}

TEST_CASE("bound list: 8 singleton bounds and 24 distinct relay-cut forms") {
  GainVector g = fixtures::gains7654();
  std::vector<GenieBound> bounds = all_bounds(g);

  int singletons = 0, relay_forms = 0;
  for (const GenieBound& b : bounds) {
    if (b.atoms.size() == 3) ++singletons;
    if (b.atoms.size() == 6 && b.rhs_node == 1) ++relay_forms;
  }
  CHECK(singletons == 8);
  // 24 orders per phase; the uplink orders duplicate the downlink ones.
  CHECK(relay_forms == 24);

  // Dedupe left no repeated canonical form.
  std::set<std::pair<std::vector<int>, int>> keys;
  for (const GenieBound& b : bounds) {
    std::vector<int> k;
    for (StreamId s : b.atoms) k.push_back(stream_index(s));
    std::sort(k.begin(), k.end());
    CHECK(keys.insert({k, b.rhs}).second);
  }
}

TEST_CASE("pointwise max over pair-cut orders equals the max-pair form") {
  GainVector g = fixtures::gains7654();
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> rd(0, 6);
  for (int trial = 0; trial < 200; ++trial) {
    RateTuple r;
    for (int& x : r.v) x = rd(rng);
    for (int i = 1; i <= 4; ++i)
      for (int j = i + 1; j <= 4; ++j) {
        for (Phase phase : {Phase::Downlink, Phase::Uplink}) {
          GenieBound bij = generate_bound({phase, {i, j}, {i, j}}, g);
          GenieBound bji = generate_bound({phase, {i, j}, {j, i}}, g);
          // The two orders differ exactly in the intra term, so their
          // pointwise max carries max(R_ij, R_ji) on top of the cross rates.
          int cross = 0;
          for (StreamId s : bij.atoms)
            if (s != StreamId(j, i)) cross += r.at(s);
          CHECK(std::max(bij.lhs(r), bji.lhs(r)) ==
                cross + std::max(r.at(i, j), r.at(j, i)));
        }
      }
  }
}

TEST_CASE("one-sided bounds tighten their two-sided counterparts") {
  GainVector g = fixtures::gains7654();
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> rd(0, 6);
  std::vector<GenieBound> bounds = all_bounds(g);
  for (int trial = 0; trial < 100; ++trial) {
    RateTuple r;
    for (int& x : r.v) x = rd(rng);
    for (const GenieBound& b : bounds) {
      int cross_only = 0;
      std::set<int> side(b.cut.side.begin(), b.cut.side.end());
      for (StreamId s : b.atoms)
        if (!(side.count(s.src) && side.count(s.dst))) cross_only += r.at(s);
      CHECK(b.lhs(r) >= cross_only);
    }
  }
}

TEST_CASE("integer membership agrees with the 13 conditions on a small box") {
  GainVector g({2, 1, 1, 1});
  std::vector<RateTuple> box;
  const auto caps = stream_caps(g);
  RateTuple r;
  std::function<void(int)> walk = [&](int idx) {
    if (idx == kStreamCount) {
      box.push_back(r);
      return;
    }
    for (int v = 0; v <= caps[static_cast<size_t>(idx)]; ++v) {
      r.v[static_cast<size_t>(idx)] = v;
      walk(idx + 1);
    }
    r.v[static_cast<size_t>(idx)] = 0;
  };
  walk(0);
  CHECK(box.size() == 4096);

  EquivalenceReport rep = equivalence_check(g, box);
  CHECK(rep.tuples_checked == 4096);
  CHECK(rep.agree());
}

TEST_CASE("the bound list is closed under gain-preserving relabelings") {
  // Unlike the compressed catalog, the expanded cut enumeration is
  // permutation-symmetric: its gap multiset cannot change when equal-gain
  // nodes swap labels.
  const GainVector g({5, 5, 3, 3});
  auto bounds = all_bounds(g);
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> rd(0, 4);
  const std::vector<std::array<int, 4>> perms = {{2, 1, 3, 4}, {1, 2, 4, 3}, {2, 1, 4, 3}};
  for (int trial = 0; trial < 300; ++trial) {
    RateTuple r;
    for (int& x : r.v) x = rd(rng);
    std::multiset<int> base;
    for (const GenieBound& b : bounds) base.insert(b.lhs(r) - b.rhs);
    for (const auto& p : perms) {
      RateTuple q = permute_rates(r, p);
      std::multiset<int> got;
      for (const GenieBound& b : bounds) got.insert(b.lhs(q) - b.rhs);
      CHECK(got == base);
    }
  }
}

TEST_CASE("the all-zero tuple is a member under both descriptions") {
  GainVector g = fixtures::gains7654();
  RateTuple zero;
  CHECK(capacity_member(zero, g));
  CHECK(bounds_member(all_bounds(g), zero));
}

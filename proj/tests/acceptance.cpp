// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria 3 and 4 are the heavy sweeps; everything else is
// sub-second.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fixtures.hpp"
#include "relnet/detour.hpp"
#include "relnet/genie.hpp"
#include "relnet/region.hpp"
#include "relnet/scheduler.hpp"
#include "relnet/sim.hpp"
#include "relnet/sweep.hpp"

using namespace relnet;

namespace {

int failures = 0;

struct Criterion {
  std::string label;
  std::vector<std::string> problems;
  double ms = 0;

  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
  template <typename A, typename B>
  void expect_eq(const A& got, const B& want, const std::string& what) {
    if (!(got == static_cast<A>(want))) {
      std::ostringstream os;
      os << what << " (got " << got << ", want " << want << ")";
      problems.push_back(os.str());
    }
  }
};

void run(const std::string& label, const std::function<void(Criterion&)>& body,
         double budget_ms = 0) {
  Criterion c;
  c.label = label;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.problems.push_back(std::string("exception: ") + e.what());
  }
  c.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (budget_ms > 0 && c.ms > budget_ms) {
    std::ostringstream os;
    os << "took " << c.ms << " ms, budget " << budget_ms << " ms";
    c.problems.push_back(os.str());
  }
  if (c.problems.empty()) {
    std::printf("PASS  %s  (%.0f ms)\n", c.label.c_str(), c.ms);
  } else {
    ++failures;
    std::printf("FAIL  %s  (%.0f ms)\n", c.label.c_str(), c.ms);
    for (const std::string& p : c.problems) std::printf("      - %s\n", p.c_str());
  }
  std::fflush(stdout);
}

int hw_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 2 : static_cast<int>(n);
}

std::map<std::string, int> delta_map(const DetourPlan& p) {
  std::map<std::string, int> m;
  for (const RateDelta& d : p.deltas) m[stream_key(d.stream)] = d.delta;
  return m;
}

}  // namespace

int main() {
  const GainVector g7654 = fixtures::gains7654();

  run("criterion 1: first worked example golden path", [&](Criterion& c) {
    const RateTuple r = fixtures::example1();
    MembershipReport rep = check(r, g7654);
    c.expect(rep.in_region, "tuple must satisfy all 13 capacity conditions");
    c.expect(!rep.sos_feasible, "tuple must need a detour");
    c.expect(rep.mgc.has_value(), "a maximum-gap condition must exist");
    if (rep.mgc) {
      const Condition& mgc = condition_by_id(rep.mgc->condition_id);
      c.expect_eq(mgc.name, std::string("sos_tri124_l3"), "MGC is the (1,2,4)-cycle, l=3 condition");
      c.expect_eq(rep.mgc->lhs, 8, "MGC lhs");
      c.expect_eq(rep.mgc->rhs, 7, "MGC rhs");
      c.expect_eq(rep.mgc->gap, 1, "MGC gap");
    }

    DetourPlan p = plan(r, g7654);
    c.expect_eq(scheme_name(p.scheme), std::string("ds1"), "scheme");
    c.expect(delta_map(p) == std::map<std::string, int>{{"r24", -1}, {"r21", 1}, {"r14", 1}},
             "deltas must be r24-1, r21+1, r14+1");
    c.expect(p.equivalent == fixtures::example1_equivalent(), "equivalent tuple");

    Schedule s = build_schedule(p.equivalent, g7654);
    DeliveryReport d = run_session(p, s, g7654, 10, 42);
    c.expect(d.success, "simulation must deliver every bit");
    for (int i = 0; i < kStreamCount; ++i)
      c.expect_eq(d.streams[static_cast<size_t>(i)].delivered, 9 * r.v[static_cast<size_t>(i)],
                  "stream " + stream_key(stream_at(i)) + " throughput over rounds 1..9");
    c.expect_eq(d.streams[static_cast<size_t>(stream_index(2, 4))].latency2, 9,
                "rerouted bit of 2->4 arrives with latency 2 every round");
  }, 1000);

  run("criterion 2: second worked example golden path", [&](Criterion& c) {
    const RateTuple r = fixtures::example2();
    MembershipReport rep = check(r, g7654);
    c.expect(rep.in_region, "tuple must satisfy all 13 capacity conditions");
    c.expect(rep.mgc.has_value(), "a maximum-gap condition must exist");
    if (rep.mgc) {
      const Condition& mgc = condition_by_id(rep.mgc->condition_id);
      c.expect_eq(family_name(mgc.family), std::string("SOS_QUAD"), "MGC family");
      c.expect_eq(mgc.name, std::string("sos_quad1432"), "MGC is the 1->4->3->2 cycle condition");
      c.expect_eq(rep.mgc->lhs, 9, "MGC lhs");
      c.expect_eq(rep.mgc->gap, 2, "MGC gap");
    }

    DetourPlan p = plan(r, g7654);
    c.expect_eq(scheme_name(p.scheme), std::string("ds2"), "scheme");
    c.expect_eq(p.lambda, 2, "lambda");
    c.expect_eq(p.beta, 1, "beta");
    c.expect_eq(p.gamma, 1, "gamma");
    c.expect(delta_map(p) == std::map<std::string, int>{
                                 {"r43", -2}, {"r41", 1}, {"r42", 1}, {"r13", 1}, {"r23", 1}},
             "deltas must be r43-2, r41+1, r42+1, r13+1, r23+1");
    c.expect(p.equivalent == fixtures::example2_equivalent(), "equivalent tuple");

    Schedule s = build_schedule(p.equivalent, g7654);
    DeliveryReport d = run_session(p, s, g7654, 10, 42);
    c.expect(d.success, "simulation must deliver every bit");
    for (int i = 0; i < kStreamCount; ++i)
      c.expect_eq(d.streams[static_cast<size_t>(i)].delivered, 9 * r.v[static_cast<size_t>(i)],
                  "stream " + stream_key(stream_at(i)) + " throughput over rounds 1..9");
  }, 1000);

  run("criterion 3: exhaustive achievability at gains (3,2,2,1)", [&](Criterion& c) {
    SweepReport rep = achievability_sweep(GainVector({3, 2, 2, 1}), 4, hw_threads());
    c.expect(rep.in_region > 0, "region must be non-empty");
    c.expect_eq(rep.plan_failures, 0LL, "no tuple may be left without a plan");
    for (const std::string& f : rep.failures) c.expect(false, f);
    c.expect_eq(rep.sos_direct + rep.detoured(), rep.in_region,
                "every in-region tuple is scheduled directly or after a detour");
    std::printf("      region size %lld: %lld direct, %lld ds1, %lld ds2, %lld search\n",
                rep.in_region, rep.sos_direct, rep.detoured_ds1, rep.detoured_ds2,
                rep.detoured_search);
  });

  run("criterion 4: 10,000 random in-region tuples at gains (7,6,5,4)", [&](Criterion& c) {
    SweepReport rep = random_sweep(g7654, 10'000, 20240601, 4, hw_threads());
    c.expect_eq(rep.in_region, 10'000LL, "sample count");
    c.expect_eq(rep.plan_failures, 0LL, "no tuple may be left without a plan");
    for (const std::string& f : rep.failures) c.expect(false, f);
    c.expect(rep.wall_ms < 300'000, "must finish inside 5 minutes");
    std::printf("      %lld direct, %lld ds1, %lld ds2, %lld search in %.1f s\n", rep.sos_direct,
                rep.detoured_ds1, rep.detoured_ds2, rep.detoured_search, rep.wall_ms / 1000.0);
  }, 300000);

  run("criterion 5: genie bound list carves out the same integer region", [&](Criterion& c) {
    for (const GainVector& g : {GainVector({3, 2, 2, 1}), GainVector({2, 2, 1, 1})}) {
      // Exhaustive over the whole box: members and non-members both agree.
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
      EquivalenceReport rep = equivalence_check(g, box);
      c.expect_eq(rep.witnesses.size(), size_t{0},
                  "exhaustive equivalence at n1=" + std::to_string(g.strongest()));
    }
    std::vector<RateTuple> tuples = sample_region(g7654, 10'000, 20240601);
    auto witnesses = boundary_witnesses(g7654);
    c.expect_eq(witnesses.size(), size_t{13}, "one just-outside witness per condition");
    tuples.insert(tuples.end(), witnesses.begin(), witnesses.end());
    EquivalenceReport rep = equivalence_check(g7654, tuples);
    c.expect_eq(rep.witnesses.size(), size_t{0}, "sampled equivalence at (7,6,5,4)");
    for (const RateTuple& w : witnesses)
      c.expect(!bounds_member(all_bounds(g7654), w), "witnesses rejected by the bound list too");
  });

  run("criterion 6: property suites", [&](Criterion& c) {
    // Relay transparency on every simulated round of both worked examples.
    for (const RateTuple& r : {fixtures::example1(), fixtures::example2()}) {
      DetourPlan p = plan(r, g7654);
      Schedule s = build_schedule(p.equivalent, g7654);
      DeliveryReport d = run_session(p, s, g7654, 6, 11, true);
      for (const RoundTrace& t : d.trace) {
        std::multiset<int> rx, tx;
        for (const auto& [u, dl] : s.relay_perm) {
          rx.insert(t.relay_rx.at(u));
          tx.insert(t.relay_tx.at(dl));
        }
        c.expect(rx == tx, "relay transparency in round " + std::to_string(t.round));
      }
    }

    // Constructive feasibility coincides with the condition check over the
    // whole (3,2,2,1) box.
    {
      GainVector g({3, 2, 2, 1});
      const auto caps = stream_caps(g);
      RateTuple r;
      long long checked = 0, mismatches = 0;
      std::function<void(int)> walk = [&](int idx) {
        if (idx == kStreamCount) {
          ++checked;
          if (sos_feasible(r, g) != check(r, g).sos_feasible) ++mismatches;
          return;
        }
        for (int v = 0; v <= caps[static_cast<size_t>(idx)]; ++v) {
          r.v[static_cast<size_t>(idx)] = v;
          walk(idx + 1);
        }
        r.v[static_cast<size_t>(idx)] = 0;
      };
      walk(0);
      c.expect_eq(mismatches, 0LL, "scheduler/conditions agreement over the box");
      c.expect_eq(checked, 46656LL, "box size at (3,2,2,1)");
    }

    // Canonicalization idempotence + relabel invariance, 1000 random
    // instances.
    {
      uint64_t state = 99;
      auto rnd = [&](int hi) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<int>((state >> 33) % static_cast<uint64_t>(hi + 1));
      };
      std::map<std::array<int, 4>, std::vector<GenieBound>> bound_cache;
      for (int trial = 0; trial < 1000; ++trial) {
        std::array<int, 4> gains{rnd(7), rnd(7), rnd(7), rnd(7)};
        RateTuple r;
        for (int& x : r.v) x = rnd(4);
        Canonicalized once = canonicalize(gains, r);
        Canonicalized twice = canonicalize(once.gains.n, once.rates);
        c.expect(twice.is_identity() && twice.rates == once.rates, "idempotence");

        // A random gain-preserving relabeling must leave membership, the
        // constructive feasibility and the expanded bound-list gap multiset
        // unchanged.
        std::array<int, 4> perm{1, 2, 3, 4};
        for (int i = 0; i < 4; ++i) {
          int j = rnd(3);
          if (once.gains.n[static_cast<size_t>(i)] == once.gains.n[static_cast<size_t>(j)])
            std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]);
        }
        RateTuple pr = permute_rates(once.rates, perm);
        MembershipReport a = check(once.rates, once.gains);
        MembershipReport b = check(pr, once.gains);
        c.expect(a.in_region == b.in_region && a.sos_feasible == b.sos_feasible,
                 "relabel invariance of membership");
        auto& bounds = bound_cache[once.gains.n];
        if (bounds.empty()) bounds = all_bounds(once.gains);
        std::multiset<int> base, relabeled;
        for (const GenieBound& bnd : bounds) {
          base.insert(bnd.lhs(once.rates) - bnd.rhs);
          relabeled.insert(bnd.lhs(pr) - bnd.rhs);
        }
        c.expect(base == relabeled, "relabel invariance of the bound-list gaps");
      }
    }

    // Pruned enumerator against the unpruned reference at (2,2,1,1).
    {
      GainVector g({2, 2, 1, 1});
      auto pruned = enumerate_region(g);
      auto brute = enumerate_region_brute(g);
      std::set<RateTuple> a(pruned.begin(), pruned.end()), b(brute.begin(), brute.end());
      c.expect(a == b, "enumerator equals unpruned brute force at (2,2,1,1)");
    }
  });

  run("criterion 7: no unplannable tuple anywhere in the sweeps", [&](Criterion& c) {
    SweepReport small = achievability_sweep(GainVector({3, 2, 2, 1}), 4, hw_threads());
    SweepReport sampled = random_sweep(g7654, 10'000, 987654321, 4, hw_threads());
    long long total = small.plan_failures + sampled.plan_failures;
    c.expect_eq(total, 0LL, "NoPlanFound count across sweeps");
    for (const std::string& f : small.failures) c.expect(false, "counterexample: " + f);
    for (const std::string& f : sampled.failures) c.expect(false, "counterexample: " + f);
  });

  if (failures == 0)
    std::printf("all acceptance criteria passed\n");
  else
    std::printf("%d acceptance criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}

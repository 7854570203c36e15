#include "relnet/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <sstream>
#include <thread>

#include "relnet/detour.hpp"
#include "relnet/region.hpp"
#include "relnet/scheduler.hpp"
#include "relnet/sim.hpp"

namespace relnet {

namespace {

// Assignment order for the depth-first walk: streams in the tightest sum
// bounds (the n4-bounded ones) first, for early cutoff.
constexpr std::array<int, kStreamCount> kDfsOrder = {
    stream_index(1, 4), stream_index(2, 4), stream_index(3, 4),  // dl_4
    stream_index(4, 1), stream_index(4, 2), stream_index(4, 3),  // ul_4
    stream_index(1, 3), stream_index(2, 3),                      // rest of dl_34
    stream_index(3, 1), stream_index(3, 2),                      // rest of ul_34
    stream_index(1, 2), stream_index(2, 1)};

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t tuple_hash(const RateTuple& r) {
  uint64_t h = 0x243f6a8885a308d3ULL;
  for (int x : r.v) h = splitmix64(h ^ static_cast<uint64_t>(x));
  return h;
}

std::string tuple_str(const RateTuple& r) {
  std::string out = "{";
  for (int i = 0; i < kStreamCount; ++i) {
    if (i) out += ",";
    out += std::to_string(r.v[i]);
  }
  return out + "}";
}

}  // namespace

std::array<int, kStreamCount> stream_caps(const GainVector& g) {
  std::array<int, kStreamCount> caps{};
  for (int i = 0; i < kStreamCount; ++i) {
    StreamId s = stream_at(i);
    caps[i] = std::min(g.of(s.src), g.of(s.dst));
  }
  return caps;
}

long long box_estimate(const GainVector& g) {
  long long n = 1;
  for (int c : stream_caps(g)) {
    n *= (c + 1);
    if (n > (1LL << 62) / 8) return 1LL << 62;
  }
  return n;
}

void enumerate_region(const GainVector& g, long long cap,
                      const std::function<bool(const RateTuple&)>& fn) {
  if (box_estimate(g) > cap)
    throw TooLarge("enumeration box holds about " + std::to_string(box_estimate(g)) +
                   " tuples, above the cap of " + std::to_string(cap));

  const auto caps = stream_caps(g);
  const auto& conds = capacity_conditions();
  RateTuple r;
  bool keep_going = true;

  // Partial assignments lower-bound every condition LHS (atoms are monotone
  // and unassigned rates sit at zero), so a violated prefix prunes.
  std::function<void(int)> walk = [&](int depth) {
    if (!keep_going) return;
    for (const Condition& c : conds)
      if (c.lhs(r) > g.of(c.bound_node)) return;
    if (depth == kStreamCount) {
      keep_going = fn(r);
      return;
    }
    int idx = kDfsOrder[static_cast<size_t>(depth)];
    for (int v = 0; v <= caps[static_cast<size_t>(idx)] && keep_going; ++v) {
      r.v[static_cast<size_t>(idx)] = v;
      walk(depth + 1);
    }
    r.v[static_cast<size_t>(idx)] = 0;
  };
  walk(0);
}

std::vector<RateTuple> enumerate_region(const GainVector& g, long long cap) {
  std::vector<RateTuple> out;
  enumerate_region(g, cap, [&](const RateTuple& r) {
    out.push_back(r);
    return true;
  });
  return out;
}

std::vector<RateTuple> enumerate_region_brute(const GainVector& g) {
  const auto caps = stream_caps(g);
  std::vector<RateTuple> out;
  RateTuple r;
  std::function<void(int)> walk = [&](int idx) {
    if (idx == kStreamCount) {
      if (capacity_member(r, g)) out.push_back(r);
      return;
    }
    for (int v = 0; v <= caps[static_cast<size_t>(idx)]; ++v) {
      r.v[static_cast<size_t>(idx)] = v;
      walk(idx + 1);
    }
    r.v[static_cast<size_t>(idx)] = 0;
  };
  walk(0);
  return out;
}

std::vector<RateTuple> boundary_witnesses(const GainVector& g) {
  std::vector<RateTuple> out;
  for (const Condition& c : capacity_conditions()) {
    RateTuple r;
    int target = g.of(c.bound_node) + 1;
    // Fill the condition's first branch atoms round-robin until the LHS
    // sits one past the bound.
    bool progress = true;
    while (c.lhs(r) < target && progress) {
      progress = false;
      for (const Atom& a : c.atoms) {
        if (c.lhs(r) >= target) break;
        r.v[static_cast<size_t>(stream_index(a.lhs[0]))] += 1;
        progress = true;
      }
    }
    if (c.lhs(r) >= target) out.push_back(r);
  }
  return out;
}

std::vector<RateTuple> sample_region(const GainVector& g, long long count, uint64_t seed) {
  std::vector<RateTuple> out;
  if (count <= 0) return out;

  // The two worked examples, when they fit these gains.
  const RateTuple ex1(std::array<int, 12>{2, 0, 0, 0, 0, 2, 1, 1, 1, 1, 0, 0});
  const RateTuple ex2(std::array<int, 12>{0, 0, 2, 1, 0, 1, 1, 2, 0, 0, 0, 2});
  for (const RateTuple& ex : {ex1, ex2})
    if (static_cast<long long>(out.size()) < count && capacity_member(ex, g)) out.push_back(ex);

  const auto caps = stream_caps(g);
  uint64_t state = seed ? seed : 1;
  auto next = [&] {
    state = splitmix64(state);
    return state;
  };
  while (static_cast<long long>(out.size()) < count) {
    RateTuple r;
    for (int i = 0; i < kStreamCount; ++i)
      r.v[static_cast<size_t>(i)] = static_cast<int>(next() % static_cast<uint64_t>(caps[static_cast<size_t>(i)] + 1));
    if (capacity_member(r, g)) out.push_back(r);
  }
  return out;
}

namespace {

SweepReport run_pipeline(const GainVector& g, const std::vector<RateTuple>& tuples,
                         const std::string& mode, int rounds, int threads) {
  auto t0 = std::chrono::steady_clock::now();
  SweepReport rep;
  rep.gains = g.n;
  rep.mode = mode;
  rep.tuples_examined = static_cast<long long>(tuples.size());

  std::mutex mu;
  std::atomic<size_t> cursor{0};

  auto worker = [&] {
    SweepReport local;
    for (size_t i = cursor.fetch_add(1); i < tuples.size(); i = cursor.fetch_add(1)) {
      const RateTuple& r = tuples[i];
      if (!capacity_member(r, g)) continue;
      local.in_region += 1;
      try {
        DetourPlan p = plan(r, g);
        switch (p.scheme) {
          case Scheme::Identity: local.sos_direct += 1; break;
          case Scheme::DS1: local.detoured_ds1 += 1; break;
          case Scheme::DS2: local.detoured_ds2 += 1; break;
          case Scheme::Search: local.detoured_search += 1; break;
        }
        Schedule s = build_schedule(p.equivalent, g);
        DeliveryReport d = run_session(p, s, g, rounds, tuple_hash(r));
        if (!d.success) {
          std::ostringstream os;
          os << "delivery failure on " << tuple_str(r) << " (" << d.failures.size()
             << " bad bit(s))";
          local.failures.push_back(os.str());
        }
      } catch (const NoPlanFound& e) {
        local.plan_failures += 1;
        local.failures.push_back("no plan found for " + tuple_str(r) + ": " + e.what());
      } catch (const std::exception& e) {
        local.failures.push_back("error on " + tuple_str(r) + ": " + e.what());
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    rep.in_region += local.in_region;
    rep.sos_direct += local.sos_direct;
    rep.detoured_ds1 += local.detoured_ds1;
    rep.detoured_ds2 += local.detoured_ds2;
    rep.detoured_search += local.detoured_search;
    rep.plan_failures += local.plan_failures;
    rep.failures.insert(rep.failures.end(), local.failures.begin(), local.failures.end());
  };

  int n = std::max(1, threads);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::sort(rep.failures.begin(), rep.failures.end());

  // Bound-list consistency over the same tuples plus the just-outside
  // witnesses.
  std::vector<RateTuple> eq = tuples;
  auto witnesses = boundary_witnesses(g);
  eq.insert(eq.end(), witnesses.begin(), witnesses.end());
  EquivalenceReport er = equivalence_check(g, eq);
  rep.equivalence_tuples = er.tuples_checked;
  rep.equivalence_disagreements = static_cast<long long>(er.witnesses.size());

  rep.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace

SweepReport achievability_sweep(const GainVector& g, int rounds, int threads, long long cap) {
  std::vector<RateTuple> tuples = enumerate_region(g, cap);
  return run_pipeline(g, tuples, "exhaustive", rounds, threads);
}

SweepReport random_sweep(const GainVector& g, long long count, uint64_t seed, int rounds,
                         int threads) {
  std::vector<RateTuple> tuples = sample_region(g, count, seed);
  return run_pipeline(g, tuples, "random", rounds, threads);
}

}  // namespace relnet

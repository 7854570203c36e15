#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "relnet/genie.hpp"
#include "relnet/model.hpp"

// Enumeration and sampling harnesses that turn the capacity statements into
// executable sweeps: every in-region tuple must be schedulable (directly or
// after a detour) and must simulate with zero delivery failures, and the
// expanded genie bound list must admit exactly the same integer members as
// the 13 capacity conditions.

namespace relnet {

struct SweepReport {
  std::array<int, kNodeCount> gains{};
  std::string mode;  // "exhaustive" or "random"
  long long tuples_examined = 0;
  long long in_region = 0;
  long long sos_direct = 0;
  long long detoured_ds1 = 0;
  long long detoured_ds2 = 0;
  long long detoured_search = 0;
  long long plan_failures = 0;  // NoPlanFound occurrences (counterexamples)
  std::vector<std::string> failures;  // delivery/plan failure descriptions
  long long equivalence_tuples = 0;
  long long equivalence_disagreements = 0;
  double wall_ms = 0.0;

  long long detoured() const { return detoured_ds1 + detoured_ds2 + detoured_search; }
  bool clean() const { return failures.empty() && plan_failures == 0; }
};

// Per-stream upper bounds min(n_src, n_dst): the search box.
std::array<int, kStreamCount> stream_caps(const GainVector& g);

// Number of integer points in the box; the enumeration guard compares this
// against `cap`.
long long box_estimate(const GainVector& g);

// Depth-first enumeration of every tuple satisfying the 13 capacity
// conditions, with partial-sum pruning (tightest sums assigned first).
// Throws TooLarge when box_estimate(g) > cap. The callback returns false to
// stop early.
void enumerate_region(const GainVector& g, long long cap,
                      const std::function<bool(const RateTuple&)>& fn);

std::vector<RateTuple> enumerate_region(const GainVector& g, long long cap = 5'000'000);

// Unpruned reference enumeration over the whole box (oracle for the pruned
// walker; only usable at tiny gains).
std::vector<RateTuple> enumerate_region_brute(const GainVector& g);

// For each capacity condition, a tuple sitting one bit outside the region on
// that condition and minimal elsewhere.
std::vector<RateTuple> boundary_witnesses(const GainVector& g);

// Rejection-samples `count` in-region tuples from the box. When the two
// worked examples fit the gains they are force-included at the front.
std::vector<RateTuple> sample_region(const GainVector& g, long long count, uint64_t seed);

// plan -> schedule -> simulate (T = rounds) for every enumerated in-region
// tuple. Any delivery failure or NoPlanFound is recorded (and the report is
// not clean()).
SweepReport achievability_sweep(const GainVector& g, int rounds = 4, int threads = 1,
                                long long cap = 5'000'000);

// Same pipeline over sampled tuples.
SweepReport random_sweep(const GainVector& g, long long count, uint64_t seed, int rounds = 4,
                         int threads = 1);

}  // namespace relnet

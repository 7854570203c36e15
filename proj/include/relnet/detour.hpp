#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "relnet/model.hpp"
#include "relnet/region.hpp"

// Rate-transformation planner. A tuple inside the capacity region that the
// direct schedule cannot carry is converted into an equivalent network by
// rerouting bits of one stream through an intermediate node: one 3-cycle
// reroute (DS1), a split across the two 3-cycles of a 4-cycle condition
// (DS2), or a breadth-first search over unit reroute moves as a fallback
// oracle. Every reroute is a single intermediate hop.

namespace relnet {

enum class Scheme { Identity, DS1, DS2, Search };

std::string scheme_name(Scheme s);

struct RateDelta {
  StreamId stream{1, 2};
  int delta = 0;
};

// "count" bits of stream u->v travel u->w->v instead. They are always the
// highest-indexed bits of the original stream, starting at first_bit.
struct ReroutePlan {
  StreamId stream{1, 2};
  int via = 0;
  int count = 0;
  int first_bit = 0;
};

struct DetourPlan {
  RateTuple original;
  RateTuple equivalent;
  std::vector<RateDelta> deltas;      // non-zero entries of equivalent - original
  std::vector<ReroutePlan> reroutes;  // sorted by (stream, via)
  std::array<int, kStreamCount> direct{};  // per-stream bits still sent directly
  Scheme scheme = Scheme::Identity;
  int lambda = 0;  // gap of the driving condition (0 for identity plans)
  int beta = 0;    // DS2 split, first intermediate (0 otherwise)
  int gamma = 0;   // DS2 split, second intermediate
  std::optional<Gap> mgc;  // driving condition of the first application
  int applications = 0;    // DS applications performed (0 = identity/search)
  std::vector<std::string> trace;

  bool is_identity() const { return reroutes.empty(); }
};

// One candidate rate modification, before validation.
struct DetourCandidate {
  StreamId detoured{1, 2};  // stream losing lambda bits
  std::vector<std::pair<int, int>> via_counts;  // (intermediate node, bits)
  std::string description;
  RateTuple equivalent;  // resulting tuple if applied to the current state
};

// Candidates for a 3-cycle condition (SosTri or SosTriN2 families): one per
// cycle edge, ordered by forward-minus-reverse slack (largest first, ties by
// the higher stream index). `current` is the tuple the condition was
// evaluated on. Empty when lambda <= 0.
std::vector<DetourCandidate> ds1_candidates(const RateTuple& current, const Condition& cond,
                                            int lambda);

// Candidates for a 4-cycle condition (SosQuad): the shared edge of the two
// embedded 3-cycles loses lambda bits, split beta+gamma across the two
// intermediates. Splits are ordered most-balanced first; chord-direction
// ties multiply the structures.
std::vector<DetourCandidate> ds2_candidates(const RateTuple& current, const Condition& cond,
                                            int lambda);

// Full planning pipeline: identity if the direct schedule already fits; else
// repeatedly resolve the maximum-gap violated extra condition with DS1/DS2
// candidates (validated against every condition), up to `kMaxApplications`;
// else breadth-first search. Throws NoPlanFound if all of that fails, and
// std::invalid_argument if `r` is outside the capacity region.
DetourPlan plan(const RateTuple& r, const GainVector& g);

// Independent oracle: BFS over unit reroute moves (one bit of one stream via
// one intermediate) until the equivalent network passes every condition.
DetourPlan fallback_search(const RateTuple& r, const GainVector& g);

inline constexpr int kMaxApplications = 16;

}  // namespace relnet

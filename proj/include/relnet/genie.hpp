#pragma once

#include <string>
#include <vector>

#include "relnet/model.hpp"
#include "relnet/region.hpp"

// One-sided-genie cut bounds, generated from first principles. Every
// (phase, cut side, genie order) yields one plain linear inequality; the
// max-combined forms of the capacity conditions are a compressed equivalent
// of this expanded list. The module's purpose is the integer-region
// equivalence check between the two.

namespace relnet {

enum class Phase { Uplink, Downlink };

std::string phase_name(Phase p);

// A cut plus the order in which the genie cascades side information within
// the side. side == all four nodes means the cut around the relay.
struct CutSpec {
  Phase phase = Phase::Downlink;
  std::vector<int> side;   // receiving side (DL) / transmitting side (UL)
  std::vector<int> order;  // permutation of side; earlier = served by genie first
};

// A plain linear inequality: sum of single rates <= a gain value.
struct GenieBound {
  CutSpec cut;
  std::vector<StreamId> atoms;
  int rhs_node = 1;  // node whose gain bounds the cut (max gain over side)
  int rhs = 0;

  int lhs(const RateTuple& r) const {
    int t = 0;
    for (StreamId s : atoms) t += r.at(s);
    return t;
  }
  bool holds(const RateTuple& r) const { return lhs(r) <= rhs; }
  std::string to_string() const;
};

// Builds the bound for one cut. DL: all rates into the side, plus intra-side
// rates from genie-later to genie-earlier nodes. UL: all rates out of the
// side, plus the same intra-side terms. rhs = max gain over the side.
GenieBound generate_bound(const CutSpec& cut, const GainVector& g);

// Every (phase, non-empty side, order), deduplicated by canonical form
// (sorted atom set + rhs). In particular the uplink relay-cut orders and the
// matching downlink orders collapse to a single retained bound each.
std::vector<GenieBound> all_bounds(const GainVector& g);

inline bool bounds_member(const std::vector<GenieBound>& bounds, const RateTuple& r) {
  for (const GenieBound& b : bounds)
    if (!b.holds(r)) return false;
  return true;
}

inline bool capacity_member(const RateTuple& r, const GainVector& g) {
  for (const Condition& c : capacity_conditions())
    if (c.lhs(r) > g.of(c.bound_node)) return false;
  return true;
}

struct EquivalenceReport {
  long long tuples_checked = 0;
  std::vector<RateTuple> witnesses;  // tuples where the two memberships differ
  bool agree() const { return witnesses.empty(); }
};

// For every tuple, membership under the expanded bound list must equal
// membership under the 13 capacity conditions.
EquivalenceReport equivalence_check(const GainVector& g, const std::vector<RateTuple>& tuples);

}  // namespace relnet

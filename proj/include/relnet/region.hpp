#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relnet/model.hpp"

// Symbolic inequality engine over the 12 demands. Two catalogs are exposed:
// the 13 capacity conditions (downlink cuts, uplink cuts and the three
// relay-cut conditions) and the 16 extra ordering conditions that a direct
// level schedule additionally needs. Evaluation is exact integer arithmetic.

namespace relnet {

// A term of a condition LHS: a single rate, the max of a rate and its
// reverse, or the max of two rate sums.
struct Atom {
  enum class Kind { Rate, MaxPair, MaxSum };

  Kind kind = Kind::Rate;
  std::vector<StreamId> lhs;  // Rate: 1 stream; MaxPair: stream + reverse.
  std::vector<StreamId> rhs;  // MaxSum only: second branch.

  static Atom rate(StreamId s);
  static Atom max_pair(StreamId s);  // max(R_s, R_reverse(s))
  static Atom max_sum(std::vector<StreamId> a, std::vector<StreamId> b);

  int evaluate(const RateTuple& r) const;
  std::string to_string() const;
};

enum class Family {
  DL,        // downlink cut conditions (bounds n4, n3, n2)
  UL,        // uplink cut conditions
  Common,    // relay-cut conditions (bound n1)
  SosTriN2,  // extra: {2,3,4} cycle conditions bounded by n2
  SosTri,    // extra: directed 3-cycle + opposite-node star, bound n1
  SosQuad,   // extra: directed 4-cycle + both chord maxes, bound n1
};

std::string family_name(Family f);
bool is_extra(Family f);

// A single symbolic inequality  sum(atoms) <= n_bound_node.
struct Condition {
  int id = 0;           // position in the combined catalog; stable
  std::string name;     // e.g. "dl_4", "sos_tri124_l3", "sos_quad1432"
  Family family = Family::DL;
  std::vector<Atom> atoms;
  int bound_node = 1;  // gain index 1..4

  // Cycle metadata (SosTri / SosTriN2 / SosQuad only).
  std::vector<int> cycle;  // 3 or 4 nodes, directed, smallest node first
  int star_node = 0;       // SosTri: the node off the 3-cycle

  int lhs(const RateTuple& r) const;
  std::string to_string() const;
};

struct Gap {
  int condition_id = -1;
  int lhs = 0;
  int rhs = 0;
  int gap = 0;  // lhs - rhs; > 0 iff violated
};

struct MembershipReport {
  bool in_region = false;     // all 13 capacity conditions hold
  bool sos_feasible = false;  // in_region and all 16 extra conditions hold
  std::vector<Gap> violated;        // capacity conditions with gap > 0
  std::vector<Gap> extra_violated;  // extra conditions with gap > 0
  std::optional<Gap> mgc;  // max gap over the extra conditions; ties -> smallest id
};

// The 13 capacity conditions, ids 0..12 (5 DL, 5 UL, 3 Common).
const std::vector<Condition>& capacity_conditions();

// The 16 extra ordering conditions, ids 13..28
// (2 SosTriN2, 8 SosTri, 6 SosQuad).
const std::vector<Condition>& extra_conditions();

// Both catalogs concatenated; index == Condition::id.
const std::vector<Condition>& all_conditions();
const Condition& condition_by_id(int id);

Gap evaluate(const Condition& c, const RateTuple& r, const GainVector& g);

MembershipReport check(const RateTuple& r, const GainVector& g);

}  // namespace relnet

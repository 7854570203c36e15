#pragma once

#include <map>
#include <vector>

#include "relnet/model.hpp"

// The direct bit-level schedule: downlink segments stacked weakest
// destination first, an uplink mirror stacked weakest source first, and the
// relay permutation that matches the two. Bidirectional traffic of a node
// pair shares one level per exchanged bit (the relay forwards the XOR).

namespace relnet {

// min/max exchanged bits of one unordered node pair.
struct PairOverlap {
  int a = 0, b = 0;  // a < b
  int zeta = 0;      // min(R_ab, R_ba): bits carried as XOR pairs
  int eta = 0;       // max(R_ab, R_ba)
};

PairOverlap pair_overlap(const RateTuple& r, int a, int b);

// Content of one occupied level.
struct LevelSlot {
  enum class Kind { Xor, Plain };

  int level = 0;  // 1-based, 1 = most significant
  Kind kind = Kind::Plain;
  StreamId stream{1, 2};  // Plain: the carried stream. Xor: u->v with u < v.
  int bit = 0;            // bit index within the stream (Xor: same index both ways)

  bool carries(StreamId s) const {
    return stream == s || (kind == Kind::Xor && stream.reversed() == s);
  }
};

// Downlink block of all levels whose content is destined to one node.
struct Segment {
  int destination = 0;
  std::vector<LevelSlot> slots;
  int size() const { return static_cast<int>(slots.size()); }
};

struct Schedule {
  int q = 0;                       // relay vector length (= n1)
  std::vector<Segment> downlink;   // destinations 4,3,2,1, stacked from level 1
  std::vector<LevelSlot> uplink;   // one slot per occupied uplink level
  std::map<int, int> relay_perm;   // uplink level -> downlink level

  std::vector<LevelSlot> downlink_slots() const;
  // Nodes transmitting on an uplink slot (1 for Plain, 2 for Xor).
  static std::vector<int> transmitters(const LevelSlot& slot);
};

// Builds the downlink segments for destinations 4,3,2,1. Throws
// InfeasibleSchedule when a cumulative segment bound fails (the caller is
// expected to run the detour planner first).
std::vector<Segment> build_downlink(const RateTuple& r, const GainVector& g);

// Assigns uplink levels (source segments 4,3,2,1, mirroring the downlink
// rules) and derives the relay permutation. A failure here on a tuple whose
// downlink fits is a bug, not an input problem.
void build_uplink(const std::vector<Segment>& downlink, const RateTuple& r, const GainVector& g,
                  std::vector<LevelSlot>& uplink, std::map<int, int>& relay_perm);

Schedule build_schedule(const RateTuple& r, const GainVector& g);

// True iff the direct schedule can be built for this tuple. Must coincide
// with MembershipReport::sos_feasible.
bool sos_feasible(const RateTuple& r, const GainVector& g);

}  // namespace relnet

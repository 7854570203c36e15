#include "relnet/scheduler.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <tuple>

namespace relnet {

PairOverlap pair_overlap(const RateTuple& r, int a, int b) {
  if (a > b) std::swap(a, b);
  PairOverlap p;
  p.a = a;
  p.b = b;
  p.zeta = std::min(r.at(a, b), r.at(b, a));
  p.eta = std::max(r.at(a, b), r.at(b, a));
  return p;
}

std::vector<LevelSlot> Schedule::downlink_slots() const {
  std::vector<LevelSlot> out;
  for (const Segment& seg : downlink)
    out.insert(out.end(), seg.slots.begin(), seg.slots.end());
  return out;
}

std::vector<int> Schedule::transmitters(const LevelSlot& slot) {
  if (slot.kind == LevelSlot::Kind::Xor) return {slot.stream.src, slot.stream.dst};
  return {slot.stream.src};
}

namespace {

// Content identity of a slot, shared between the two phases.
using SlotKey = std::tuple<int, int, int>;  // (kind, normalized stream index, bit)

SlotKey key_of(const LevelSlot& slot) {
  if (slot.kind == LevelSlot::Kind::Xor) {
    StreamId s = slot.stream.src < slot.stream.dst ? slot.stream : slot.stream.reversed();
    return {0, stream_index(s), slot.bit};
  }
  return {1, stream_index(slot.stream), slot.bit};
}

LevelSlot xor_slot(int level, int a, int b, int bit) {
  LevelSlot s;
  s.level = level;
  s.kind = LevelSlot::Kind::Xor;
  s.stream = StreamId(std::min(a, b), std::max(a, b));
  s.bit = bit;
  return s;
}

LevelSlot plain_slot(int level, StreamId stream, int bit) {
  LevelSlot s;
  s.level = level;
  s.kind = LevelSlot::Kind::Plain;
  s.stream = stream;
  s.bit = bit;
  return s;
}

}  // namespace

std::vector<Segment> build_downlink(const RateTuple& r, const GainVector& g) {
  r.validate();
  std::vector<Segment> segments;
  int level = 1;
  for (int d = kNodeCount; d >= 1; --d) {
    Segment seg;
    seg.destination = d;
    // Exchanged bits first: the XOR block of pair {d,k} lives in the segment
    // of the weaker endpoint, i.e. here only when k < d.
    for (int k = 1; k < d; ++k) {
      int zeta = std::min(r.at(d, k), r.at(k, d));
      for (int m = 0; m < zeta; ++m) seg.slots.push_back(xor_slot(level++, d, k, m));
    }
    // Then the one-directional remainders towards d.
    for (int k = 1; k <= kNodeCount; ++k) {
      if (k == d) continue;
      int zeta = std::min(r.at(d, k), r.at(k, d));
      for (int m = zeta; m < r.at(k, d); ++m)
        seg.slots.push_back(plain_slot(level++, StreamId(k, d), m));
    }
    int cumulative = level - 1;
    if (cumulative > g.of(d))
      throw InfeasibleSchedule("downlink segments for destinations " + std::to_string(d) +
                               "..4 need " + std::to_string(cumulative) + " levels but node " +
                               std::to_string(d) + " hears only " + std::to_string(g.of(d)));
    segments.push_back(std::move(seg));
  }
  return segments;
}

void build_uplink(const std::vector<Segment>& downlink, const RateTuple& r, const GainVector& g,
                  std::vector<LevelSlot>& uplink, std::map<int, int>& relay_perm) {
  uplink.clear();
  relay_perm.clear();

  // Mirror of the downlink construction with sources in place of
  // destinations; the cumulative fit conditions are the reciprocal ones.
  int level = 1;
  for (int c = kNodeCount; c >= 1; --c) {
    for (int k = 1; k < c; ++k) {
      int zeta = std::min(r.at(c, k), r.at(k, c));
      for (int m = 0; m < zeta; ++m) uplink.push_back(xor_slot(level++, c, k, m));
    }
    for (int k = 1; k <= kNodeCount; ++k) {
      if (k == c) continue;
      int zeta = std::min(r.at(c, k), r.at(k, c));
      for (int m = zeta; m < r.at(c, k); ++m)
        uplink.push_back(plain_slot(level++, StreamId(c, k), m));
    }
    int cumulative = level - 1;
    if (cumulative > g.of(c))
      throw InfeasibleSchedule("uplink segments for sources " + std::to_string(c) + "..4 need " +
                               std::to_string(cumulative) + " levels but node " +
                               std::to_string(c) + " reaches only " + std::to_string(g.of(c)));
  }

  std::map<SlotKey, int> downlink_level;
  for (const Segment& seg : downlink)
    for (const LevelSlot& slot : seg.slots) downlink_level[key_of(slot)] = slot.level;

  for (const LevelSlot& slot : uplink) {
    auto it = downlink_level.find(key_of(slot));
    // The two phases enumerate the same slot contents; a miss is a bug.
    assert(it != downlink_level.end());
    if (it == downlink_level.end())
      throw InfeasibleSchedule("uplink slot has no downlink counterpart");
    relay_perm[slot.level] = it->second;
  }
  assert(relay_perm.size() == downlink_level.size());
}

Schedule build_schedule(const RateTuple& r, const GainVector& g) {
  Schedule s;
  s.q = g.strongest();
  s.downlink = build_downlink(r, g);
  build_uplink(s.downlink, r, g, s.uplink, s.relay_perm);
  return s;
}

bool sos_feasible(const RateTuple& r, const GainVector& g) {
  try {
    build_schedule(r, g);
    return true;
  } catch (const InfeasibleSchedule&) {
    return false;
  }
}

}  // namespace relnet

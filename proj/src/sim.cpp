#include "relnet/sim.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace relnet {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

int payload_bit(uint64_t seed, int stream_idx, int round, int index) {
  uint64_t x = seed;
  x = splitmix64(x ^ (0x100000001ULL * static_cast<uint64_t>(stream_idx + 1)));
  x = splitmix64(x ^ (0x200000003ULL * static_cast<uint64_t>(round + 1)));
  x = splitmix64(x ^ (0x400000007ULL * static_cast<uint64_t>(index + 1)));
  return static_cast<int>(x & 1);
}

LevelVector uplink_step(const std::array<LevelVector, kNodeCount>& transmits,
                        const GainVector& g) {
  int q = g.strongest();
  LevelVector rx(q);
  for (int node = 1; node <= kNodeCount; ++node) {
    const LevelVector masked = transmits[node - 1].masked(g.of(node));
    for (int l = 1; l <= q && l <= masked.size(); ++l)
      rx.set(l, rx.at(l) ^ masked.at(l));
  }
  return rx;
}

std::array<LevelVector, kNodeCount> downlink_step(const LevelVector& relay_tx,
                                                  const GainVector& g) {
  std::array<LevelVector, kNodeCount> rx;
  for (int node = 1; node <= kNodeCount; ++node) rx[node - 1] = relay_tx.masked(g.of(node));
  return rx;
}

std::vector<DecodedBit> decode(int node, const LevelVector& reception, const Schedule& schedule,
                               const std::map<std::pair<int, int>, int>& own_sent) {
  std::vector<DecodedBit> out;
  for (const Segment& seg : schedule.downlink) {
    for (const LevelSlot& slot : seg.slots) {
      if (slot.kind == LevelSlot::Kind::Plain) {
        if (slot.stream.dst != node) continue;
        DecodedBit d;
        d.slot = slot;
        d.stream = slot.stream;
        d.bit = slot.bit;
        d.value = reception.at(slot.level);
        out.push_back(d);
      } else {
        if (slot.stream.src != node && slot.stream.dst != node) continue;
        // The level carries x ^ y for the two directions of the pair; our
        // own contribution cancels out.
        StreamId own = slot.stream.src == node ? slot.stream : slot.stream.reversed();
        auto it = own_sent.find({stream_index(own), slot.bit});
        if (it == own_sent.end())
          throw std::invalid_argument("missing side information for an XOR slot");
        DecodedBit d;
        d.slot = slot;
        d.stream = own.reversed();
        d.bit = slot.bit;
        d.value = reception.at(slot.level) ^ it->second;
        out.push_back(d);
      }
    }
  }
  return out;
}

namespace {

// Logical content of one equivalent-stream bit position.
struct SlotContent {
  enum class Kind { Direct, HopOne, HopTwo };
  Kind kind = Kind::Direct;
  StreamId orig{1, 2};  // original stream whose payload occupies the position
  int orig_bit = 0;
  int reroute = -1;  // index into plan.reroutes for the hop kinds
};

// Per equivalent stream: what each of its bit positions carries. Layout:
// direct original bits first, then first-hop blocks (bits leaving the
// original source towards an intermediate), then second-hop blocks (bits an
// intermediate forwards onward), in the plan's reroute order.
std::array<std::vector<SlotContent>, kStreamCount> content_layout(const DetourPlan& plan) {
  std::array<std::vector<SlotContent>, kStreamCount> layout;
  for (int i = 0; i < kStreamCount; ++i) {
    StreamId s = stream_at(i);
    for (int b = 0; b < plan.direct[i]; ++b)
      layout[i].push_back({SlotContent::Kind::Direct, s, b, -1});
  }
  for (size_t ri = 0; ri < plan.reroutes.size(); ++ri) {
    const ReroutePlan& r = plan.reroutes[ri];
    int hop1 = stream_index(r.stream.src, r.via);
    for (int b = 0; b < r.count; ++b)
      layout[hop1].push_back(
          {SlotContent::Kind::HopOne, r.stream, r.first_bit + b, static_cast<int>(ri)});
  }
  for (size_t ri = 0; ri < plan.reroutes.size(); ++ri) {
    const ReroutePlan& r = plan.reroutes[ri];
    int hop2 = stream_index(r.via, r.stream.dst);
    for (int b = 0; b < r.count; ++b)
      layout[hop2].push_back(
          {SlotContent::Kind::HopTwo, r.stream, r.first_bit + b, static_cast<int>(ri)});
  }
  for (int i = 0; i < kStreamCount; ++i)
    if (static_cast<int>(layout[i].size()) != plan.equivalent.v[i])
      throw std::invalid_argument(
          "plan is inconsistent: direct + reroute hops do not add up to the equivalent rate of " +
          stream_key(stream_at(i)));
  return layout;
}

}  // namespace

DeliveryReport run_session(const DetourPlan& plan, const Schedule& schedule, const GainVector& g,
                           int rounds, uint64_t seed, bool record_trace) {
  if (rounds < 2) throw std::invalid_argument("simulation needs at least 2 rounds");
  for (int i = 0; i < kStreamCount; ++i)
    if (plan.equivalent.v[i] != [&] {
          int c = 0;
          for (const Segment& seg : schedule.downlink)
            for (const LevelSlot& slot : seg.slots)
              if (slot.carries(stream_at(i))) ++c;
          return c;
        }())
      throw std::invalid_argument("schedule does not match the plan's equivalent rates");

  const auto layout = content_layout(plan);
  const int q = g.strongest();

  DeliveryReport report;
  report.rounds = rounds;
  report.seed = seed;

  // Forward buffers: per reroute, the bits its intermediate decoded last
  // round. Primed with round-0 payload so round 1 already runs steady-state.
  std::vector<std::vector<int>> buffer(plan.reroutes.size());
  for (size_t ri = 0; ri < plan.reroutes.size(); ++ri) {
    const ReroutePlan& r = plan.reroutes[ri];
    buffer[ri].resize(static_cast<size_t>(r.count));
    for (int b = 0; b < r.count; ++b)
      buffer[ri][static_cast<size_t>(b)] =
          payload_bit(seed, stream_index(r.stream), 0, r.first_bit + b);
  }

  auto record = [&](StreamId orig, int data_round, int bit, int expected, int got, int latency) {
    if (got != expected) {
      report.failures.push_back({orig, data_round, bit, expected, got});
      return;
    }
    if (data_round < 1 || data_round > rounds - 1) return;  // outside the verified window
    StreamDelivery& d = report.streams[static_cast<size_t>(stream_index(orig))];
    d.delivered += 1;
    (latency == 1 ? d.latency1 : d.latency2) += 1;
  };

  for (int round = 1; round <= rounds; ++round) {
    // Value a stream's bit position carries this round.
    auto slot_value = [&](StreamId stream, int bit) {
      const SlotContent& c = layout[static_cast<size_t>(stream_index(stream))][static_cast<size_t>(bit)];
      switch (c.kind) {
        case SlotContent::Kind::Direct:
        case SlotContent::Kind::HopOne:
          return payload_bit(seed, stream_index(c.orig), round, c.orig_bit);
        case SlotContent::Kind::HopTwo: {
          const ReroutePlan& r = plan.reroutes[static_cast<size_t>(c.reroute)];
          return buffer[static_cast<size_t>(c.reroute)][static_cast<size_t>(c.orig_bit - r.first_bit)];
        }
      }
      return 0;
    };

    // Uplink phase.
    std::array<LevelVector, kNodeCount> tx;
    tx.fill(LevelVector(q));
    std::array<std::map<std::pair<int, int>, int>, kNodeCount> own_sent;
    for (const LevelSlot& slot : schedule.uplink) {
      for (int node : Schedule::transmitters(slot)) {
        StreamId s = slot.kind == LevelSlot::Kind::Plain
                         ? slot.stream
                         : (slot.stream.src == node ? slot.stream : slot.stream.reversed());
        assert(slot.level <= g.of(node));  // reachability: never above own gain
        int v = slot_value(s, slot.bit);
        tx[static_cast<size_t>(node - 1)].set(slot.level, v);
        own_sent[static_cast<size_t>(node - 1)][{stream_index(s), slot.bit}] = v;
      }
    }
    LevelVector relay_rx = uplink_step(tx, g);

    // The relay re-orders occupied levels; it neither reads nor writes
    // payload.
    LevelVector relay_tx(q);
    for (const auto& [ul, dl] : schedule.relay_perm) relay_tx.set(dl, relay_rx.at(ul));
    {
      std::vector<uint8_t> a, b;
      for (const auto& [ul, dl] : schedule.relay_perm) {
        a.push_back(relay_rx.at(ul));
        b.push_back(relay_tx.at(dl));
      }
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      assert(a == b);  // relay transparency
    }

    // Downlink phase and per-node decoding.
    std::array<LevelVector, kNodeCount> rx = downlink_step(relay_tx, g);
    std::vector<std::vector<int>> next_buffer = buffer;
    RoundTrace tr;
    if (record_trace) {
      tr.round = round;
      tr.node_tx = tx;
      tr.relay_rx = relay_rx;
      tr.relay_tx = relay_tx;
      tr.node_rx = rx;
    }
    for (int node = 1; node <= kNodeCount; ++node) {
      auto decoded =
          decode(node, rx[static_cast<size_t>(node - 1)], schedule, own_sent[static_cast<size_t>(node - 1)]);
      for (const DecodedBit& d : decoded) {
        assert(d.slot.level <= g.of(node));
        const SlotContent& c =
            layout[static_cast<size_t>(stream_index(d.stream))][static_cast<size_t>(d.bit)];
        switch (c.kind) {
          case SlotContent::Kind::Direct:
            record(c.orig, round, c.orig_bit,
                   payload_bit(seed, stream_index(c.orig), round, c.orig_bit), d.value, 1);
            break;
          case SlotContent::Kind::HopOne:
            // This node is the intermediate: hold the bit for next round.
            next_buffer[static_cast<size_t>(c.reroute)]
                       [static_cast<size_t>(c.orig_bit - plan.reroutes[static_cast<size_t>(c.reroute)].first_bit)] =
                           d.value;
            break;
          case SlotContent::Kind::HopTwo:
            record(c.orig, round - 1, c.orig_bit,
                   payload_bit(seed, stream_index(c.orig), round - 1, c.orig_bit), d.value, 2);
            break;
        }
      }
      if (record_trace) tr.decoded[static_cast<size_t>(node - 1)] = std::move(decoded);
    }
    buffer = std::move(next_buffer);
    if (record_trace) report.trace.push_back(std::move(tr));
  }

  // Completeness: every bit of data rounds 1..T-1 must have arrived.
  bool complete = true;
  for (int i = 0; i < kStreamCount; ++i) {
    int expected = plan.original.v[i] * (rounds - 1);
    if (report.streams[static_cast<size_t>(i)].delivered != expected) complete = false;
  }
  report.success = complete && report.failures.empty();
  return report;
}

}  // namespace relnet

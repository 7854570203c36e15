#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "relnet/detour.hpp"
#include "relnet/model.hpp"
#include "relnet/scheduler.hpp"

// Bit-exact simulation of the reciprocal linear deterministic relay channel.
// Node i reaches and hears relay levels 1..n_i (level 1 strongest);
// superposition on a level is XOR. The relay never decodes payload: it only
// permutes occupied levels between the uplink and downlink phases. Rerouted
// bits ride one round behind: the intermediate decodes them in round t and
// re-injects them verbatim in round t+1.

namespace relnet {

// One binary signal vector of q levels; bits[0] is level 1.
struct LevelVector {
  std::vector<uint8_t> bits;

  explicit LevelVector(int q = 0) : bits(static_cast<size_t>(q), 0) {}
  int size() const { return static_cast<int>(bits.size()); }
  uint8_t at(int level) const { return bits[static_cast<size_t>(level - 1)]; }
  void set(int level, uint8_t v) { bits[static_cast<size_t>(level - 1)] = v; }

  // Zero out every level a node of gain n cannot reach or hear.
  LevelVector masked(int n) const {
    LevelVector out = *this;
    for (int l = n + 1; l <= size(); ++l) out.set(l, 0);
    return out;
  }
};

// Relay reception: per-level XOR of every node's (masked) transmission.
LevelVector uplink_step(const std::array<LevelVector, kNodeCount>& transmits, const GainVector& g);

// Per-node reception of the relay broadcast, masked by each node's gain.
std::array<LevelVector, kNodeCount> downlink_step(const LevelVector& relay_tx, const GainVector& g);

struct DecodedBit {
  LevelSlot slot;       // the downlink slot this came from
  StreamId stream{1, 2};  // equivalent-network stream decoded at this node
  int bit = 0;
  int value = 0;
};

// What one node learns from a downlink reception: plain slots addressed to
// it are read off directly, XOR slots are resolved with the node's own
// transmitted bit of the reverse stream. own_sent maps
// (equivalent stream index, bit) -> the value this node transmitted.
std::vector<DecodedBit> decode(int node, const LevelVector& reception, const Schedule& schedule,
                               const std::map<std::pair<int, int>, int>& own_sent);

struct RoundTrace {
  int round = 0;
  std::array<LevelVector, kNodeCount> node_tx;
  LevelVector relay_rx;
  LevelVector relay_tx;
  std::array<LevelVector, kNodeCount> node_rx;
  std::array<std::vector<DecodedBit>, kNodeCount> decoded;
};

struct StreamDelivery {
  int delivered = 0;  // bits of data rounds 1..T-1 that arrived correct
  int latency1 = 0;   // delivered directly (same round)
  int latency2 = 0;   // delivered via an intermediate (next round)
};

struct DeliveryFailure {
  StreamId stream{1, 2};
  int round = 0;  // data round the bit belongs to
  int bit = 0;    // original-stream bit index
  int expected = 0;
  int got = 0;
};

struct DeliveryReport {
  bool success = false;
  int rounds = 0;
  uint64_t seed = 0;
  std::array<StreamDelivery, kStreamCount> streams;
  std::vector<DeliveryFailure> failures;
  std::vector<RoundTrace> trace;  // filled only when requested
};

// Deterministic payload bit for (stream, round, index) under a session seed.
int payload_bit(uint64_t seed, int stream_idx, int round, int index);

// Runs T rounds of the schedule built from plan.equivalent and verifies that
// every original-stream bit of data rounds 1..T-1 reaches its destination
// (latency 1 direct, latency 2 via the recorded reroutes). Round-1 forward
// buffers are primed with round-0 data so the pipeline starts in steady
// state. Requires T >= 2.
DeliveryReport run_session(const DetourPlan& plan, const Schedule& schedule, const GainVector& g,
                           int rounds, uint64_t seed, bool record_trace = false);

}  // namespace relnet

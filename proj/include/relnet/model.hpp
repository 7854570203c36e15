#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

// Core domain types for the 4-node relay network: node labels, directed
// streams, integer rate tuples and reciprocal channel gains. Everything is a
// small immutable value; all other modules build on the conventions fixed
// here (canonical gain order n1 >= n2 >= n3 >= n4, level 1 = strongest).

namespace relnet {

inline constexpr int kNodeCount = 4;
inline constexpr int kStreamCount = 12;

// Thrown when a schedule cannot be packed onto the available levels.
class InfeasibleSchedule : public std::runtime_error {
 public:
  explicit InfeasibleSchedule(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when the detour planner exhausts every scheme and the search.
class NoPlanFound : public std::runtime_error {
 public:
  explicit NoPlanFound(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an enumeration request exceeds the configured size guard.
class TooLarge : public std::runtime_error {
 public:
  explicit TooLarge(const std::string& what) : std::runtime_error(what) {}
};

// Nodes are labelled 1..4. The relay is not a node: it holds no demands.
struct NodeId {
  int value = 1;

  NodeId() = default;
  explicit NodeId(int v) : value(v) {
    if (v < 1 || v > kNodeCount) throw std::invalid_argument("node id out of range 1..4");
  }
  friend bool operator==(NodeId a, NodeId b) { return a.value == b.value; }
  friend bool operator!=(NodeId a, NodeId b) { return a.value != b.value; }
};

// One of the 12 directed demands src -> dst, src != dst.
struct StreamId {
  int src = 1;
  int dst = 2;

  StreamId() = default;
  StreamId(int s, int d) : src(s), dst(d) {
    if (s < 1 || s > kNodeCount || d < 1 || d > kNodeCount || s == d)
      throw std::invalid_argument("invalid stream " + std::to_string(s) + "->" + std::to_string(d));
  }
  StreamId reversed() const { return StreamId(dst, src); }
  friend bool operator==(StreamId a, StreamId b) { return a.src == b.src && a.dst == b.dst; }
  friend bool operator!=(StreamId a, StreamId b) { return !(a == b); }
};

// Index of a stream in the fixed lexicographic order
// (1,2),(1,3),(1,4),(2,1),(2,3),(2,4),(3,1),(3,2),(3,4),(4,1),(4,2),(4,3).
constexpr int stream_index(int src, int dst) {
  int off = dst < src ? dst - 1 : dst - 2;
  return 3 * (src - 1) + off;
}
inline int stream_index(StreamId s) { return stream_index(s.src, s.dst); }

inline StreamId stream_at(int index) {
  if (index < 0 || index >= kStreamCount) throw std::out_of_range("stream index");
  int src = index / 3 + 1;
  int off = index % 3;
  int dst = off + 1 >= src ? off + 2 : off + 1;
  return StreamId(src, dst);
}

// "r12" .. "r43"; used for JSON keys and report fields.
inline std::string stream_key(StreamId s) {
  return std::string("r") + std::to_string(s.src) + std::to_string(s.dst);
}
// "R12" .. "R43"; used when printing inequalities.
inline std::string stream_label(StreamId s) {
  return std::string("R") + std::to_string(s.src) + std::to_string(s.dst);
}

// The 12 non-negative integer demands, in bits per round.
struct RateTuple {
  std::array<int, kStreamCount> v{};

  RateTuple() = default;
  explicit RateTuple(const std::array<int, kStreamCount>& values) : v(values) { validate(); }

  void validate() const {
    for (int x : v)
      if (x < 0) throw std::invalid_argument("rates must be non-negative");
  }

  int at(StreamId s) const { return v[stream_index(s)]; }
  int at(int src, int dst) const { return v[stream_index(src, dst)]; }
  int& at(StreamId s) { return v[stream_index(s)]; }
  int& at(int src, int dst) { return v[stream_index(src, dst)]; }

  int total() const {
    int t = 0;
    for (int x : v) t += x;
    return t;
  }

  friend bool operator==(const RateTuple& a, const RateTuple& b) { return a.v == b.v; }
  friend bool operator!=(const RateTuple& a, const RateTuple& b) { return !(a.v == b.v); }
  friend bool operator<(const RateTuple& a, const RateTuple& b) { return a.v < b.v; }
};

// Reciprocal per-node channel gains (level counts), canonically sorted
// n1 >= n2 >= n3 >= n4. Node i injects onto and hears relay levels 1..n_i,
// level 1 being the most significant.
struct GainVector {
  std::array<int, kNodeCount> n{};

  GainVector() = default;
  explicit GainVector(const std::array<int, kNodeCount>& gains) : n(gains) {
    for (int g : n)
      if (g < 0) throw std::invalid_argument("gains must be non-negative");
    for (int i = 0; i + 1 < kNodeCount; ++i)
      if (n[i] < n[i + 1]) throw std::invalid_argument("gains must be sorted descending (canonical form)");
  }

  int of(int node) const { return n[node - 1]; }
  int strongest() const { return n[0]; }

  friend bool operator==(const GainVector& a, const GainVector& b) { return a.n == b.n; }
};

// Channel description used by the simulator: gains plus the relay's signal
// vector length q = n1. (In the Gaussian reading the gains would come from
// n_i = ceil(0.5*log2 SNR); that mapping is outside this toolkit.)
struct ChannelConfig {
  GainVector gains;
  int q = 0;

  ChannelConfig() = default;
  explicit ChannelConfig(const GainVector& g) : gains(g), q(g.strongest()) {}
};

// Result of relabelling raw gains into canonical order.
struct Canonicalized {
  GainVector gains;
  RateTuple rates;
  // new_to_old[a-1] = original label of canonical node a.
  std::array<int, kNodeCount> new_to_old{};
  std::array<int, kNodeCount> old_to_new{};

  bool is_identity() const {
    for (int i = 0; i < kNodeCount; ++i)
      if (new_to_old[i] != i + 1) return false;
    return true;
  }
};

// Sorts gains descending (stable: ties keep original node order) and permutes
// the rates consistently. Idempotent; the returned maps invert the
// relabelling for reporting.
Canonicalized canonicalize(const std::array<int, kNodeCount>& gains, const RateTuple& rates);

// Applies a node relabelling old->new to a rate tuple: the returned tuple has
// R'[a->b] = R[old(a)->old(b)].
RateTuple permute_rates(const RateTuple& rates, const std::array<int, kNodeCount>& new_to_old);

}  // namespace relnet

#include "relnet/genie.hpp"

#include <algorithm>
#include <set>

namespace relnet {

std::string phase_name(Phase p) { return p == Phase::Uplink ? "uplink" : "downlink"; }

std::string GenieBound::to_string() const {
  std::string out;
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += "+";
    out += stream_label(atoms[i]);
  }
  out += " <= n" + std::to_string(rhs_node);
  return out;
}

GenieBound generate_bound(const CutSpec& cut, const GainVector& g) {
  if (cut.side.empty()) throw std::invalid_argument("cut side must be non-empty");
  {
    std::vector<int> a = cut.side, b = cut.order;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw std::invalid_argument("genie order must be a permutation of the side");
  }

  std::vector<int> complement;
  for (int n = 1; n <= kNodeCount; ++n)
    if (std::find(cut.side.begin(), cut.side.end(), n) == cut.side.end()) complement.push_back(n);

  GenieBound b;
  b.cut = cut;

  // Cross-cut terms: into the side for downlink, out of it for uplink.
  for (int m : cut.side)
    for (int c : complement)
      b.atoms.push_back(cut.phase == Phase::Downlink ? StreamId(c, m) : StreamId(m, c));

  // Intra-side terms: rates from genie-later to genie-earlier nodes stay in
  // the bound (the genie only cascades forward along the order).
  for (size_t i = 0; i < cut.order.size(); ++i)
    for (size_t j = i + 1; j < cut.order.size(); ++j)
      b.atoms.push_back(StreamId(cut.order[j], cut.order[i]));

  b.rhs_node = *std::min_element(cut.side.begin(), cut.side.end());  // canonical: n1>=..>=n4
  b.rhs = g.of(b.rhs_node);
  return b;
}

namespace {

void subsets_and_orders(Phase phase, const GainVector& g, std::vector<GenieBound>& out) {
  for (int mask = 1; mask < (1 << kNodeCount); ++mask) {
    std::vector<int> side;
    for (int n = 1; n <= kNodeCount; ++n)
      if (mask & (1 << (n - 1))) side.push_back(n);
    std::vector<int> order = side;
    std::sort(order.begin(), order.end());
    do {
      CutSpec cut;
      cut.phase = phase;
      cut.side = side;
      cut.order = order;
      out.push_back(generate_bound(cut, g));
    } while (std::next_permutation(order.begin(), order.end()));
  }
}

}  // namespace

std::vector<GenieBound> all_bounds(const GainVector& g) {
  std::vector<GenieBound> raw;
  subsets_and_orders(Phase::Downlink, g, raw);
  subsets_and_orders(Phase::Uplink, g, raw);

  std::vector<GenieBound> out;
  std::set<std::pair<std::vector<int>, int>> seen;
  for (GenieBound& b : raw) {
    std::vector<int> key;
    key.reserve(b.atoms.size());
    for (StreamId s : b.atoms) key.push_back(stream_index(s));
    std::sort(key.begin(), key.end());
    if (seen.insert({std::move(key), b.rhs}).second) out.push_back(std::move(b));
  }
  return out;
}

EquivalenceReport equivalence_check(const GainVector& g, const std::vector<RateTuple>& tuples) {
  const std::vector<GenieBound> bounds = all_bounds(g);
  EquivalenceReport rep;
  for (const RateTuple& t : tuples) {
    ++rep.tuples_checked;
    if (bounds_member(bounds, t) != capacity_member(t, g)) rep.witnesses.push_back(t);
  }
  return rep;
}

}  // namespace relnet

#include "relnet/detour.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace relnet {

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Identity: return "identity";
    case Scheme::DS1: return "ds1";
    case Scheme::DS2: return "ds2";
    case Scheme::Search: return "search";
  }
  return {};
}

namespace {

struct Edge {
  int from, to;
  bool operator==(const Edge& o) const { return from == o.from && to == o.to; }
};

// Working bookkeeping: which original bits still travel directly, and how
// many bits of each stream take which intermediate. Keeping the two apart is
// what pins every detour to a single intermediate hop.
struct State {
  RateTuple original;
  std::array<int, kStreamCount> direct{};
  std::map<std::pair<int, int>, int> reroutes;  // (stream index, via) -> count

  explicit State(const RateTuple& r) : original(r) { direct = r.v; }

  RateTuple equivalent() const {
    RateTuple out;
    out.v = direct;
    for (const auto& [key, count] : reroutes) {
      StreamId s = stream_at(key.first);
      int via = key.second;
      out.at(s.src, via) += count;
      out.at(via, s.dst) += count;
    }
    return out;
  }

  bool apply(const DetourCandidate& cand) {
    int idx = stream_index(cand.detoured);
    int lambda = 0;
    for (const auto& [via, count] : cand.via_counts) lambda += count;
    if (direct[idx] < lambda) return false;  // would cut into relayed bits
    direct[idx] -= lambda;
    for (const auto& [via, count] : cand.via_counts)
      if (count > 0) reroutes[{idx, via}] += count;
    return true;
  }

  std::string key() const {
    std::string k(direct.begin(), direct.end());
    for (const auto& [rk, count] : reroutes) {
      k.push_back(static_cast<char>(rk.first));
      k.push_back(static_cast<char>(rk.second));
      k.push_back(static_cast<char>(count));
    }
    return k;
  }
};

int slack(const RateTuple& r, const Edge& e) { return r.at(e.from, e.to) - r.at(e.to, e.from); }

std::string edge_str(const Edge& e) {
  return std::to_string(e.from) + "->" + std::to_string(e.to);
}

// Candidate for detouring `lambda` bits of one cycle edge u->v via the
// remaining cycle node w (alternate path u->w->v).
DetourCandidate edge_candidate(const RateTuple& current, const Edge& uv, int w, int lambda) {
  DetourCandidate cand;
  cand.detoured = StreamId(uv.from, uv.to);
  cand.via_counts = {{w, lambda}};
  cand.description = "detour " + std::to_string(lambda) + " bit(s) of " + edge_str(uv) + " via " +
                     std::to_string(w);
  cand.equivalent = current;
  cand.equivalent.at(uv.from, uv.to) -= lambda;
  cand.equivalent.at(uv.from, w) += lambda;
  cand.equivalent.at(w, uv.to) += lambda;
  return cand;
}

std::vector<std::array<int, 3>> three_cycles_of(const RateTuple& current, const Condition& cond) {
  std::vector<std::array<int, 3>> cycles;
  if (cond.family == Family::SosTri) {
    cycles.push_back({cond.cycle[0], cond.cycle[1], cond.cycle[2]});
  } else if (cond.family == Family::SosTriN2) {
    // The cycle orientation is whichever branch of the max won; on a tie
    // both orientations produce candidates.
    int fwd = current.at(2, 3) + current.at(3, 4) + current.at(4, 2);
    int rev = current.at(3, 2) + current.at(2, 4) + current.at(4, 3);
    if (fwd >= rev) cycles.push_back({2, 3, 4});
    if (rev >= fwd) cycles.push_back({2, 4, 3});
  }
  return cycles;
}

}  // namespace

std::vector<DetourCandidate> ds1_candidates(const RateTuple& current, const Condition& cond,
                                            int lambda) {
  if (lambda <= 0) return {};
  if (cond.family != Family::SosTri && cond.family != Family::SosTriN2)
    throw std::invalid_argument("ds1 requires a 3-cycle condition");

  std::vector<DetourCandidate> out;
  std::set<std::pair<int, int>> seen;
  for (const auto& cyc : three_cycles_of(current, cond)) {
    for (int e = 0; e < 3; ++e) {
      Edge uv{cyc[e], cyc[(e + 1) % 3]};
      int w = cyc[(e + 2) % 3];
      if (seen.insert({uv.from, uv.to}).second)
        out.push_back(edge_candidate(current, uv, w, lambda));
    }
  }
  // Best forward-minus-reverse slack first. On a maximum-gap cycle every
  // edge has slack >= lambda (comparing the violated condition against the
  // relay-cut bounds forces it), so the leader has the most headroom.
  std::stable_sort(out.begin(), out.end(), [&](const DetourCandidate& a, const DetourCandidate& b) {
    int sa = slack(current, {a.detoured.src, a.detoured.dst});
    int sb = slack(current, {b.detoured.src, b.detoured.dst});
    if (sa != sb) return sa > sb;
    return stream_index(a.detoured) > stream_index(b.detoured);
  });
  return out;
}

std::vector<DetourCandidate> ds2_candidates(const RateTuple& current, const Condition& cond,
                                            int lambda) {
  if (lambda <= 0) return {};
  if (cond.family != Family::SosQuad) throw std::invalid_argument("ds2 requires a 4-cycle condition");

  const auto& cyc = cond.cycle;  // a->b->c->d->a
  std::array<Edge, 4> edges{
      Edge{cyc[0], cyc[1]}, Edge{cyc[1], cyc[2]}, Edge{cyc[2], cyc[3]}, Edge{cyc[3], cyc[0]}};

  // Winning direction(s) of one chord; ties yield both.
  auto chord_dirs = [&](int x, int y) {
    std::vector<Edge> dirs;
    if (current.at(x, y) >= current.at(y, x)) dirs.push_back({x, y});
    if (current.at(y, x) >= current.at(x, y)) dirs.push_back({y, x});
    return dirs;
  };
  // A directed chord p->q closes a 3-cycle with the two cycle edges forming
  // the length-2 path q->m->p; returns that path's middle node m.
  auto mid_node = [&](const Edge& chord) {
    for (int i = 0; i < 4; ++i)
      if (edges[i].from == chord.to && edges[(i + 1) % 4].to == chord.from)
        return edges[i].to;
    throw std::logic_error("chord does not close a 3-cycle");
  };

  std::vector<DetourCandidate> out;
  for (const Edge& c1 : chord_dirs(cyc[1], cyc[3])) {
    for (const Edge& c2 : chord_dirs(cyc[0], cyc[2])) {
      // 3-cycle of chord p->q: {p->q, q->m, m->p}. The two 3-cycles share
      // exactly one 4-cycle edge; that edge carries the detoured bits.
      int m1 = mid_node(c1), m2 = mid_node(c2);
      std::vector<Edge> tri1{c1, {c1.to, m1}, {m1, c1.from}};
      std::vector<Edge> tri2{c2, {c2.to, m2}, {m2, c2.from}};
      std::optional<Edge> shared;
      for (const Edge& e : tri1)
        for (const Edge& f : tri2)
          if (e == f) shared = e;
      assert(shared.has_value());
      if (!shared) continue;

      int u = shared->from, v = shared->to;
      std::array<int, 2> vias{};
      int n = 0;
      for (int w = 1; w <= kNodeCount; ++w)
        if (w != u && w != v) vias[n++] = w;

      // Splits beta+gamma = lambda, most balanced first.
      std::vector<std::pair<int, int>> splits;
      for (int beta = 0; beta <= lambda; ++beta) splits.push_back({beta, lambda - beta});
      std::stable_sort(splits.begin(), splits.end(), [](auto a, auto b) {
        int ma = std::max(a.first, a.second), mb = std::max(b.first, b.second);
        if (ma != mb) return ma < mb;
        return a.first > b.first;
      });

      for (const auto& [beta, gamma] : splits) {
        DetourCandidate cand;
        cand.detoured = StreamId(u, v);
        cand.via_counts = {{vias[0], beta}, {vias[1], gamma}};
        std::ostringstream desc;
        desc << "detour " << lambda << " bit(s) of " << u << "->" << v << ": " << beta << " via "
             << vias[0] << ", " << gamma << " via " << vias[1];
        cand.description = desc.str();
        cand.equivalent = current;
        cand.equivalent.at(u, v) -= lambda;
        if (beta > 0) {
          cand.equivalent.at(u, vias[0]) += beta;
          cand.equivalent.at(vias[0], v) += beta;
        }
        if (gamma > 0) {
          cand.equivalent.at(u, vias[1]) += gamma;
          cand.equivalent.at(vias[1], v) += gamma;
        }
        out.push_back(std::move(cand));
      }
    }
  }

  // Chord ties can produce the same candidate twice.
  std::vector<DetourCandidate> dedup;
  std::set<std::array<int, kStreamCount>> seen;
  for (DetourCandidate& c : out)
    if (seen.insert(c.equivalent.v).second) dedup.push_back(std::move(c));
  return dedup;
}

namespace {

int total_violation(const RateTuple& r, const GainVector& g) {
  int t = 0;
  for (const Condition& c : all_conditions()) {
    int gap = c.lhs(r) - g.of(c.bound_node);
    if (gap > 0) t += gap;
  }
  return t;
}

DetourPlan finalize(const State& state, const GainVector& g, Scheme scheme, int applications,
                    std::optional<Gap> mgc, int lambda, int beta, int gamma,
                    std::vector<std::string> trace) {
  DetourPlan p;
  p.original = state.original;
  p.equivalent = state.equivalent();
  p.direct = state.direct;
  p.scheme = scheme;
  p.applications = applications;
  p.mgc = mgc;
  p.lambda = lambda;
  p.beta = beta;
  p.gamma = gamma;
  p.trace = std::move(trace);

  for (int i = 0; i < kStreamCount; ++i) {
    int d = p.equivalent.v[i] - p.original.v[i];
    if (d != 0) p.deltas.push_back({stream_at(i), d});
  }

  // Rerouted bits take the highest indices of their stream, blocks stacked
  // by intermediate node.
  std::array<int, kStreamCount> next_bit = state.direct;
  for (const auto& [key, count] : state.reroutes) {
    ReroutePlan r;
    r.stream = stream_at(key.first);
    r.via = key.second;
    r.count = count;
    r.first_bit = next_bit[key.first];
    next_bit[key.first] += count;
    p.reroutes.push_back(r);
  }
  for (int i = 0; i < kStreamCount; ++i) assert(next_bit[i] == p.original.v[i]);
  assert(check(p.equivalent, g).sos_feasible);
  (void)g;
  return p;
}

}  // namespace

DetourPlan fallback_search(const RateTuple& r, const GainVector& g) {
  State start(r);
  auto goal = [&](const State& s) { return check(s.equivalent(), g).sos_feasible; };

  if (goal(start))
    return finalize(start, g, Scheme::Search, 0, std::nullopt, 0, 0, 0, {"depth-0 hit"});

  constexpr size_t kVisitedCap = 500000;
  std::deque<State> frontier{start};
  std::set<std::string> visited{start.key()};

  while (!frontier.empty()) {
    State cur = std::move(frontier.front());
    frontier.pop_front();
    for (int idx = 0; idx < kStreamCount; ++idx) {
      if (cur.direct[idx] == 0) continue;
      StreamId s = stream_at(idx);
      for (int w = 1; w <= kNodeCount; ++w) {
        if (w == s.src || w == s.dst) continue;
        State next = cur;
        next.direct[idx] -= 1;
        next.reroutes[{idx, w}] += 1;
        if (!visited.insert(next.key()).second) continue;
        if (goal(next)) {
          int moves = 0;
          for (const auto& [k, c] : next.reroutes) moves += c;
          return finalize(next, g, Scheme::Search, 0, std::nullopt, 0, 0, 0,
                          {"search rerouted " + std::to_string(moves) + " bit(s)"});
        }
        if (visited.size() >= kVisitedCap)
          throw NoPlanFound("reroute search exhausted its state budget");
        frontier.push_back(std::move(next));
      }
    }
  }
  throw NoPlanFound("reroute search exhausted the move space");
}

DetourPlan plan(const RateTuple& r, const GainVector& g) {
  MembershipReport rep = check(r, g);
  if (!rep.in_region)
    throw std::invalid_argument("rate tuple is outside the capacity region; nothing to plan");
  if (rep.sos_feasible)
    return finalize(State(r), g, Scheme::Identity, 0, std::nullopt, 0, 0, 0, {});

  State state(r);
  std::vector<std::string> trace;
  Scheme first_scheme = Scheme::Identity;
  std::optional<Gap> first_mgc = rep.mgc;
  int first_lambda = 0, first_beta = 0, first_gamma = 0;

  for (int iter = 1; iter <= kMaxApplications; ++iter) {
    RateTuple current = state.equivalent();
    MembershipReport cur_rep = check(current, g);
    if (cur_rep.sos_feasible)
      return finalize(state, g, first_scheme, iter - 1, first_mgc, first_lambda, first_beta,
                      first_gamma, trace);
    if (!cur_rep.mgc) break;  // violates only capacity conditions: hand over to search

    const Gap mgc = *cur_rep.mgc;
    const Condition& cond = condition_by_id(mgc.condition_id);
    const int lambda = mgc.gap;
    const bool quad = cond.family == Family::SosQuad;
    std::vector<DetourCandidate> cands =
        quad ? ds2_candidates(current, cond, lambda) : ds1_candidates(current, cond, lambda);

    // Accept the first candidate whose equivalent network passes every
    // condition; otherwise keep the least-violating one and iterate.
    const DetourCandidate* best = nullptr;
    int best_score = 0;
    bool applied = false;
    for (const DetourCandidate& cand : cands) {
      if (state.direct[stream_index(cand.detoured)] < lambda) continue;
      int score = total_violation(cand.equivalent, g);
      if (score == 0) {
        State next = state;
        bool ok = next.apply(cand);
        assert(ok);
        (void)ok;
        if (iter == 1) {
          first_scheme = quad ? Scheme::DS2 : Scheme::DS1;
          first_lambda = lambda;
          if (quad) {
            first_beta = cand.via_counts[0].second;
            first_gamma = cand.via_counts.size() > 1 ? cand.via_counts[1].second : 0;
          }
        }
        trace.push_back(cond.name + " gap " + std::to_string(lambda) + ": " + cand.description);
        state = std::move(next);
        applied = true;
        break;
      }
      if (!best || score < best_score) {
        best = &cand;
        best_score = score;
      }
    }
    if (applied) continue;

    if (!best) break;  // no applicable candidate at all
    State next = state;
    if (!next.apply(*best)) break;
    if (iter == 1) {
      first_scheme = quad ? Scheme::DS2 : Scheme::DS1;
      first_lambda = lambda;
      if (quad) {
        first_beta = best->via_counts[0].second;
        first_gamma = best->via_counts.size() > 1 ? best->via_counts[1].second : 0;
      }
    }
    trace.push_back(cond.name + " gap " + std::to_string(lambda) + " (partial): " +
                    best->description);
    state = std::move(next);
  }

  // The schemes did not settle it; fall back to the search oracle on the
  // original tuple and report the trail.
  DetourPlan searched = fallback_search(r, g);
  searched.mgc = first_mgc;
  searched.lambda = first_mgc ? first_mgc->gap : 0;
  std::vector<std::string> full_trace = std::move(trace);
  full_trace.push_back("detour schemes did not converge; breadth-first search fallback");
  for (std::string& line : searched.trace) full_trace.push_back(std::move(line));
  searched.trace = std::move(full_trace);
  return searched;
}

}  // namespace relnet

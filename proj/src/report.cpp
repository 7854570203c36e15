#include "relnet/report.hpp"

#include <algorithm>
#include <sstream>

namespace relnet {

namespace {

void require(bool ok, const std::string& field, const std::string& why) {
  if (!ok) throw std::invalid_argument("field '" + field + "': " + why);
}

}  // namespace

ProblemInstance parse_problem(const json& j) {
  ProblemInstance p;
  require(j.is_object(), "$", "problem must be a JSON object");
  require(j.contains("gains"), "gains", "missing");
  const json& g = j.at("gains");
  require(g.is_array() && g.size() == kNodeCount, "gains", "expected 4 integers");
  for (int i = 0; i < kNodeCount; ++i) {
    require(g[static_cast<size_t>(i)].is_number_integer(), "gains", "expected 4 integers");
    p.gains[static_cast<size_t>(i)] = g[static_cast<size_t>(i)].get<int>();
    require(p.gains[static_cast<size_t>(i)] >= 0, "gains", "gains must be >= 0");
  }
  if (j.contains("rates")) p.rates = parse_rates(j.at("rates"));
  if (j.contains("seed")) {
    require(j.at("seed").is_number_unsigned() || j.at("seed").is_number_integer(), "seed",
            "expected an integer");
    p.seed = j.at("seed").get<uint64_t>();
    p.seed_set = true;
  }
  if (j.contains("rounds")) {
    require(j.at("rounds").is_number_integer(), "rounds", "expected an integer");
    p.rounds = j.at("rounds").get<int>();
    require(p.rounds >= 2, "rounds", "need at least 2 rounds");
    p.rounds_set = true;
  }
  return p;
}

json problem_json(const ProblemInstance& p) {
  json j;
  j["gains"] = p.gains;
  j["rates"] = rates_json(p.rates);
  if (p.seed_set) j["seed"] = p.seed;
  if (p.rounds_set) j["rounds"] = p.rounds;
  return j;
}

json rates_json(const RateTuple& r) {
  json j = json::object();
  for (int i = 0; i < kStreamCount; ++i) j[stream_key(stream_at(i))] = r.v[static_cast<size_t>(i)];
  return j;
}

RateTuple parse_rates(const json& j) {
  RateTuple r;
  if (j.is_array()) {
    require(j.size() == kStreamCount, "rates", "expected 12 integers");
    for (int i = 0; i < kStreamCount; ++i) {
      require(j[static_cast<size_t>(i)].is_number_integer(), "rates", "expected integers");
      r.v[static_cast<size_t>(i)] = j[static_cast<size_t>(i)].get<int>();
    }
  } else {
    require(j.is_object(), "rates", "expected an object {\"r12\": ...} or a 12-element array");
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& k = it.key();
      bool valid = k.size() == 3 && k[0] == 'r' && k[1] >= '1' && k[1] <= '4' && k[2] >= '1' &&
                   k[2] <= '4' && k[1] != k[2];
      require(valid, k, "unknown rate key (use r12..r43)");
      require(it.value().is_number_integer(), k, "expected an integer");
      r.at(k[1] - '0', k[2] - '0') = it.value().get<int>();
    }
  }
  r.validate();
  return r;
}

json gap_json(const Gap& g) {
  const Condition& c = condition_by_id(g.condition_id);
  json j;
  j["condition"] = c.id;
  j["name"] = c.name;
  j["family"] = family_name(c.family);
  j["inequality"] = c.to_string();
  j["lhs"] = g.lhs;
  j["rhs"] = g.rhs;
  j["gap"] = g.gap;
  return j;
}

json condition_json(const Condition& c) {
  json j;
  j["id"] = c.id;
  j["name"] = c.name;
  j["family"] = family_name(c.family);
  j["inequality"] = c.to_string();
  j["bound"] = "n" + std::to_string(c.bound_node);
  if (!c.cycle.empty()) j["cycle"] = c.cycle;
  if (c.star_node != 0) j["star_node"] = c.star_node;
  return j;
}

json membership_json(const MembershipReport& r) {
  json j;
  j["type"] = "membership";
  j["in_region"] = r.in_region;
  j["sos_feasible"] = r.sos_feasible;
  j["violated"] = json::array();
  for (const Gap& g : r.violated) j["violated"].push_back(gap_json(g));
  j["extra_violated"] = json::array();
  for (const Gap& g : r.extra_violated) j["extra_violated"].push_back(gap_json(g));
  if (r.mgc) j["mgc"] = gap_json(*r.mgc);
  return j;
}

json canonical_json(const Canonicalized& c) {
  json j;
  j["gains"] = c.gains.n;
  j["rates"] = rates_json(c.rates);
  j["new_to_old"] = c.new_to_old;
  j["old_to_new"] = c.old_to_new;
  j["identity"] = c.is_identity();
  return j;
}

json bound_json(const GenieBound& b) {
  json j;
  j["phase"] = phase_name(b.cut.phase);
  j["side"] = b.cut.side;
  j["order"] = b.cut.order;
  json atoms = json::array();
  for (StreamId s : b.atoms) atoms.push_back(stream_key(s));
  j["atoms"] = atoms;
  j["inequality"] = b.to_string();
  j["rhs_gain"] = "n" + std::to_string(b.rhs_node);
  j["rhs"] = b.rhs;
  return j;
}

namespace {

json slot_json(const LevelSlot& s) {
  json j;
  j["level"] = s.level;
  j["kind"] = s.kind == LevelSlot::Kind::Xor ? "xor" : "plain";
  if (s.kind == LevelSlot::Kind::Xor) {
    j["streams"] = {stream_key(s.stream), stream_key(s.stream.reversed())};
  } else {
    j["streams"] = {stream_key(s.stream)};
  }
  j["bit"] = s.bit;
  return j;
}

}  // namespace

json schedule_json(const Schedule& s) {
  json j;
  j["type"] = "schedule";
  j["q"] = s.q;
  json dl = json::array();
  for (const Segment& seg : s.downlink)
    for (const LevelSlot& slot : seg.slots) {
      json row = slot_json(slot);
      row["segment"] = seg.destination;
      dl.push_back(std::move(row));
    }
  j["downlink"] = std::move(dl);
  json ul = json::array();
  for (const LevelSlot& slot : s.uplink) ul.push_back(slot_json(slot));
  j["uplink"] = std::move(ul);
  json perm = json::object();
  for (const auto& [u, d] : s.relay_perm) perm[std::to_string(u)] = d;
  j["relay_perm"] = std::move(perm);
  return j;
}

json plan_json(const DetourPlan& p) {
  json j;
  j["type"] = "plan";
  j["scheme"] = scheme_name(p.scheme);
  j["original"] = rates_json(p.original);
  j["equivalent"] = rates_json(p.equivalent);
  j["lambda"] = p.lambda;
  j["beta"] = p.beta;
  j["gamma"] = p.gamma;
  j["applications"] = p.applications;
  if (p.mgc) j["mgc"] = gap_json(*p.mgc);
  json deltas = json::array();
  for (const RateDelta& d : p.deltas) {
    json e;
    e["stream"] = stream_key(d.stream);
    e["delta"] = d.delta;
    deltas.push_back(std::move(e));
  }
  j["deltas"] = std::move(deltas);
  json rr = json::array();
  for (const ReroutePlan& r : p.reroutes) {
    json e;
    e["stream"] = stream_key(r.stream);
    e["via"] = r.via;
    e["count"] = r.count;
    json bits = json::array();
    for (int b = 0; b < r.count; ++b) bits.push_back(r.first_bit + b);
    e["bits"] = std::move(bits);
    rr.push_back(std::move(e));
  }
  j["reroutes"] = std::move(rr);
  j["direct"] = p.direct;
  if (!p.trace.empty()) j["notes"] = p.trace;
  return j;
}

DetourPlan parse_plan(const json& j) {
  require(j.is_object() && j.value("type", "") == "plan", "type", "expected a plan document");
  DetourPlan p;
  p.original = parse_rates(j.at("original"));
  p.equivalent = parse_rates(j.at("equivalent"));
  std::string scheme = j.value("scheme", "identity");
  if (scheme == "identity") p.scheme = Scheme::Identity;
  else if (scheme == "ds1") p.scheme = Scheme::DS1;
  else if (scheme == "ds2") p.scheme = Scheme::DS2;
  else if (scheme == "search") p.scheme = Scheme::Search;
  else throw std::invalid_argument("field 'scheme': unknown value " + scheme);
  p.lambda = j.value("lambda", 0);
  p.beta = j.value("beta", 0);
  p.gamma = j.value("gamma", 0);
  p.applications = j.value("applications", 0);
  const json& direct = j.at("direct");
  require(direct.is_array() && direct.size() == kStreamCount, "direct", "expected 12 integers");
  for (int i = 0; i < kStreamCount; ++i) p.direct[static_cast<size_t>(i)] = direct[static_cast<size_t>(i)].get<int>();
  for (const json& e : j.at("reroutes")) {
    ReroutePlan r;
    std::string k = e.at("stream").get<std::string>();
    require(k.size() == 3 && k[0] == 'r', "reroutes.stream", "bad stream key");
    r.stream = StreamId(k[1] - '0', k[2] - '0');
    r.via = e.at("via").get<int>();
    r.count = e.at("count").get<int>();
    const json& bits = e.at("bits");
    require(bits.is_array() && static_cast<int>(bits.size()) == r.count, "reroutes.bits",
            "expected `count` indices");
    r.first_bit = r.count > 0 ? bits[0].get<int>() : 0;
    p.reroutes.push_back(r);
  }
  for (int i = 0; i < kStreamCount; ++i) {
    int total = p.direct[static_cast<size_t>(i)];
    for (const ReroutePlan& r : p.reroutes)
      if (stream_index(r.stream) == i) total += r.count;
    require(total == p.original.v[static_cast<size_t>(i)], "direct",
            "direct + rerouted bits must equal the original rate");
  }
  for (int i = 0; i < kStreamCount; ++i) {
    int delta = p.equivalent.v[static_cast<size_t>(i)] - p.original.v[static_cast<size_t>(i)];
    if (delta != 0) p.deltas.push_back({stream_at(i), delta});
  }
  return p;
}

json delivery_json(const DeliveryReport& d, bool include_trace) {
  json j;
  j["type"] = "delivery";
  j["success"] = d.success;
  j["rounds"] = d.rounds;
  j["seed"] = d.seed;
  json streams = json::object();
  for (int i = 0; i < kStreamCount; ++i) {
    const StreamDelivery& s = d.streams[static_cast<size_t>(i)];
    json e;
    e["delivered"] = s.delivered;
    e["latency1"] = s.latency1;
    e["latency2"] = s.latency2;
    streams[stream_key(stream_at(i))] = std::move(e);
  }
  j["streams"] = std::move(streams);
  json fails = json::array();
  for (const DeliveryFailure& f : d.failures) {
    json e;
    e["stream"] = stream_key(f.stream);
    e["round"] = f.round;
    e["bit"] = f.bit;
    e["expected"] = f.expected;
    e["got"] = f.got;
    fails.push_back(std::move(e));
  }
  j["failures"] = std::move(fails);
  if (include_trace) {
    json trace = json::array();
    for (const RoundTrace& t : d.trace) {
      json e;
      e["round"] = t.round;
      auto levels = [](const LevelVector& v) {
        std::string s;
        for (int l = 1; l <= v.size(); ++l) s += static_cast<char>('0' + v.at(l));
        return s;
      };
      for (int n = 1; n <= kNodeCount; ++n) {
        e["tx" + std::to_string(n)] = levels(t.node_tx[static_cast<size_t>(n - 1)]);
        e["rx" + std::to_string(n)] = levels(t.node_rx[static_cast<size_t>(n - 1)]);
      }
      e["relay_rx"] = levels(t.relay_rx);
      e["relay_tx"] = levels(t.relay_tx);
      trace.push_back(std::move(e));
    }
    j["trace"] = std::move(trace);
  }
  return j;
}

json sweep_json(const SweepReport& s) {
  json j;
  j["type"] = "sweep";
  j["gains"] = s.gains;
  j["mode"] = s.mode;
  j["tuples_examined"] = s.tuples_examined;
  j["in_region"] = s.in_region;
  j["sos_direct"] = s.sos_direct;
  j["detoured"] = {{"ds1", s.detoured_ds1}, {"ds2", s.detoured_ds2}, {"search", s.detoured_search}};
  j["plan_failures"] = s.plan_failures;
  j["failures"] = s.failures;
  j["bound_equivalence"] = {{"tuples", s.equivalence_tuples},
                            {"disagreements", s.equivalence_disagreements},
                            {"verdict", s.equivalence_disagreements == 0 ? "ok" : "disagree"}};
  j["wall_ms"] = s.wall_ms;
  return j;
}

namespace {

std::string scalar_str(const json& j) {
  return j.is_string() ? j.get<std::string>() : j.dump();
}

// Block of indented lines for one value (without its key).
std::vector<std::string> render_value(const json& j) {
  std::vector<std::string> lines;
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const json& v = it.value();
      if (v.is_object() || (v.is_array() && std::any_of(v.begin(), v.end(), [](const json& e) {
                              return e.is_structured();
                            }))) {
        lines.push_back(it.key() + ":" + (v.empty() ? (v.is_array() ? " []" : " {}") : ""));
        for (std::string& l : render_value(v)) lines.push_back("  " + l);
      } else if (v.is_array()) {
        std::string row = it.key() + ":";
        for (const json& e : v) row += " " + scalar_str(e);
        if (v.empty()) row += " []";
        lines.push_back(row);
      } else {
        lines.push_back(it.key() + ": " + scalar_str(v));
      }
    }
  } else if (j.is_array()) {
    for (const json& e : j) {
      std::vector<std::string> sub = render_value(e);
      if (sub.empty()) sub.push_back(scalar_str(e));
      for (size_t i = 0; i < sub.size(); ++i)
        lines.push_back((i == 0 ? "- " : "  ") + sub[i]);
    }
  } else {
    lines.push_back(scalar_str(j));
  }
  return lines;
}

}  // namespace

std::string render_text(const json& j) {
  std::ostringstream out;
  for (const std::string& line : render_value(j)) out << line << "\n";
  return out.str();
}

}  // namespace relnet

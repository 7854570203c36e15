#pragma once

#include <string>

#include <json.hpp>

#include "relnet/detour.hpp"
#include "relnet/genie.hpp"
#include "relnet/model.hpp"
#include "relnet/region.hpp"
#include "relnet/scheduler.hpp"
#include "relnet/sim.hpp"
#include "relnet/sweep.hpp"

// Structured documents for every result type, as JSON trees plus an indented
// text rendering. The schemas are stable: scripts may parse either form, and
// `plan` output feeds `simulate` unchanged.

namespace relnet {

using json = nlohmann::ordered_json;

// A problem instance as it arrives from the outside: raw gains, named rates,
// optional seed/rounds.
struct ProblemInstance {
  std::array<int, kNodeCount> gains{};
  RateTuple rates;
  uint64_t seed = 1;
  int rounds = 10;
  bool seed_set = false;
  bool rounds_set = false;
};

ProblemInstance parse_problem(const json& j);
json problem_json(const ProblemInstance& p);

json rates_json(const RateTuple& r);
RateTuple parse_rates(const json& j);

json gap_json(const Gap& g);
json condition_json(const Condition& c);
json membership_json(const MembershipReport& r);
json canonical_json(const Canonicalized& c);
json bound_json(const GenieBound& b);
json schedule_json(const Schedule& s);
json plan_json(const DetourPlan& p);
json delivery_json(const DeliveryReport& d, bool include_trace);
json sweep_json(const SweepReport& s);

// Reads a plan document back into a DetourPlan (for `plan | simulate`).
DetourPlan parse_plan(const json& j);

// Indented "key: value" rendering with stable ordering.
std::string render_text(const json& j);

}  // namespace relnet

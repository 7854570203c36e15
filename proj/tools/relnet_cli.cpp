// relnet: capacity region tools for the 4-node relay network under the
// linear deterministic channel model.
//
// Subcommands: check, bounds, schedule, plan, simulate, sweep. Input is a
// JSON problem document from a file path or standard input ("-"); output is
// an indented text report, or the JSON tree itself with --json.
// Exit codes: 0 ok, 1 infeasible or failed, 2 input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "relnet/report.hpp"

namespace {

using namespace relnet;

json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return json::parse(text);
}

void emit(const json& j, bool as_json) {
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << render_text(j);
}

struct LoadedProblem {
  ProblemInstance instance;
  Canonicalized canonical;
};

LoadedProblem load_problem_doc(const json& doc) {
  LoadedProblem p;
  p.instance = parse_problem(doc);
  p.canonical = canonicalize(p.instance.gains, p.instance.rates);
  return p;
}

LoadedProblem load_problem(const std::string& path) { return load_problem_doc(read_json(path)); }

void attach_problem(json& out, const LoadedProblem& p) {
  out["problem"] = problem_json(p.instance);
  out["canonical"] = canonical_json(p.canonical);
}

int cmd_check(const std::string& input, bool as_json) {
  LoadedProblem p = load_problem(input);
  MembershipReport rep = check(p.canonical.rates, p.canonical.gains);
  json out = membership_json(rep);
  if (rep.sos_feasible) out["hint"] = "directly schedulable: run `schedule`";
  else if (rep.in_region) out["hint"] = "inside the region but needs a detour: run `plan`";
  else out["hint"] = "outside the capacity region";
  attach_problem(out, p);
  emit(out, as_json);
  return rep.in_region ? 0 : 1;
}

int cmd_bounds(const std::string& input, const std::vector<int>& gains_flag, bool list_catalog,
               long long samples, uint64_t seed, bool as_json) {
  if (list_catalog) {
    json out;
    out["type"] = "condition_catalog";
    json conds = json::array();
    for (const Condition& c : all_conditions()) conds.push_back(condition_json(c));
    out["conditions"] = std::move(conds);
    emit(out, as_json);
    return 0;
  }

  std::array<int, kNodeCount> raw{};
  if (!gains_flag.empty()) {
    if (gains_flag.size() != kNodeCount) throw std::invalid_argument("--gains needs 4 integers");
    std::copy(gains_flag.begin(), gains_flag.end(), raw.begin());
  } else {
    ProblemInstance inst = parse_problem(read_json(input));
    raw = inst.gains;
  }
  GainVector g = canonicalize(raw, RateTuple()).gains;

  json out;
  out["type"] = "bounds";
  out["gains"] = g.n;
  std::vector<GenieBound> bounds = all_bounds(g);
  json blist = json::array();
  for (const GenieBound& b : bounds) blist.push_back(bound_json(b));
  out["bounds"] = std::move(blist);
  out["count"] = bounds.size();

  // Membership consistency between the expanded list and the 13 conditions:
  // exhaustive below the size guard, sampled plus boundary witnesses above.
  std::vector<RateTuple> tuples;
  std::string mode;
  try {
    tuples = enumerate_region(g, 2'000'000);
    mode = "exhaustive";
    // Out-of-region coverage: the whole box when small, else witnesses.
    if (box_estimate(g) <= 200'000) {
      tuples.clear();
      const auto caps = stream_caps(g);
      RateTuple r;
      std::function<void(int)> walk = [&](int idx) {
        if (idx == kStreamCount) {
          tuples.push_back(r);
          return;
        }
        for (int v = 0; v <= caps[static_cast<size_t>(idx)]; ++v) {
          r.v[static_cast<size_t>(idx)] = v;
          walk(idx + 1);
        }
        r.v[static_cast<size_t>(idx)] = 0;
      };
      walk(0);
      mode = "exhaustive-box";
    }
  } catch (const TooLarge&) {
    tuples = sample_region(g, samples, seed);
    mode = "random";
  }
  auto witnesses = boundary_witnesses(g);
  tuples.insert(tuples.end(), witnesses.begin(), witnesses.end());
  EquivalenceReport er = equivalence_check(g, tuples);
  out["equivalence"] = {{"mode", mode},
                        {"tuples", er.tuples_checked},
                        {"disagreements", er.witnesses.size()},
                        {"verdict", er.agree() ? "ok" : "disagree"}};
  emit(out, as_json);
  return er.agree() ? 0 : 1;
}

int cmd_schedule(const std::string& input, bool as_json) {
  LoadedProblem p = load_problem(input);
  try {
    Schedule s = build_schedule(p.canonical.rates, p.canonical.gains);
    json out = schedule_json(s);
    attach_problem(out, p);
    emit(out, as_json);
    return 0;
  } catch (const InfeasibleSchedule& e) {
    json out;
    out["type"] = "schedule";
    out["error"] = e.what();
    out["hint"] = "run `plan` to obtain an equivalent network first";
    attach_problem(out, p);
    emit(out, as_json);
    return 1;
  }
}

int cmd_plan(const std::string& input, bool as_json) {
  LoadedProblem p = load_problem(input);
  MembershipReport rep = check(p.canonical.rates, p.canonical.gains);
  if (!rep.in_region) {
    json out;
    out["type"] = "plan";
    out["error"] = "tuple is outside the capacity region";
    json v = json::array();
    for (const Gap& g : rep.violated) v.push_back(gap_json(g));
    out["violated"] = std::move(v);
    attach_problem(out, p);
    emit(out, as_json);
    return 1;
  }
  try {
    DetourPlan dp = plan(p.canonical.rates, p.canonical.gains);
    json out = plan_json(dp);
    out["gains"] = p.canonical.gains.n;
    attach_problem(out, p);
    emit(out, as_json);
    return 0;
  } catch (const NoPlanFound& e) {
    json out;
    out["type"] = "plan";
    out["error"] = e.what();
    out["counterexample"] = rates_json(p.canonical.rates);
    attach_problem(out, p);
    emit(out, as_json);
    return 1;
  }
}

int cmd_simulate(const std::string& input, int rounds_flag, int64_t seed_flag, bool trace,
                 bool as_json) {
  json doc = read_json(input);
  json out;
  DetourPlan dp;
  GainVector g;
  uint64_t seed = 1;
  int rounds = 10;

  if (doc.is_object() && doc.value("type", "") == "plan") {
    // A plan document from `plan` carries everything we need.
    dp = parse_plan(doc);
    if (!doc.contains("gains")) throw std::invalid_argument("plan document is missing 'gains'");
    std::array<int, kNodeCount> raw{};
    for (int i = 0; i < kNodeCount; ++i) raw[static_cast<size_t>(i)] = doc.at("gains")[static_cast<size_t>(i)].get<int>();
    g = GainVector(raw);
    out["plan"] = doc;
  } else {
    LoadedProblem p = load_problem_doc(doc);
    g = p.canonical.gains;
    if (p.instance.seed_set) seed = p.instance.seed;
    if (p.instance.rounds_set) rounds = p.instance.rounds;
    MembershipReport rep = check(p.canonical.rates, g);
    if (!rep.in_region) {
      out["type"] = "delivery";
      out["error"] = "tuple is outside the capacity region";
      emit(out, as_json);
      return 1;
    }
    dp = plan(p.canonical.rates, g);
    out["plan"] = plan_json(dp);
    attach_problem(out, p);
  }
  if (rounds_flag > 0) rounds = rounds_flag;
  if (seed_flag >= 0) seed = static_cast<uint64_t>(seed_flag);

  Schedule s = build_schedule(dp.equivalent, g);
  DeliveryReport rep = run_session(dp, s, g, rounds, seed, trace);
  out.update(delivery_json(rep, trace));
  emit(out, as_json);
  return rep.success ? 0 : 1;
}

int cmd_sweep(const std::vector<int>& gains_flag, const std::string& mode, long long count,
              uint64_t seed, int rounds, int threads, bool as_json) {
  if (gains_flag.size() != kNodeCount) throw std::invalid_argument("--gains needs 4 integers");
  std::array<int, kNodeCount> raw{};
  std::copy(gains_flag.begin(), gains_flag.end(), raw.begin());
  GainVector g = canonicalize(raw, RateTuple()).gains;

  SweepReport rep;
  if (mode == "exhaustive")
    rep = achievability_sweep(g, rounds, threads);
  else if (mode == "random")
    rep = random_sweep(g, count, seed, rounds, threads);
  else
    throw std::invalid_argument("--mode must be 'exhaustive' or 'random'");
  emit(sweep_json(rep), as_json);
  return rep.clean() && rep.equivalence_disagreements == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capacity tools for the 4-node relay network (deterministic channel model)"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("-j,--json", as_json, "emit the JSON document instead of text");

  std::string input = "-";
  std::vector<int> gains_flag;
  long long count = 10000;
  int64_t seed_flag = -1;
  uint64_t seed = 1;
  int rounds = 0;
  int threads = 1;
  bool trace = false;
  bool list_catalog = false;
  std::string mode = "exhaustive";

  auto* c_check = app.add_subcommand("check", "membership + direct-schedulability report");
  c_check->add_option("input", input, "problem JSON (path or - for stdin)");

  auto* c_bounds = app.add_subcommand("bounds", "one-sided genie bound list + equivalence verdict");
  c_bounds->add_option("input", input, "problem JSON (path or - for stdin)");
  c_bounds->add_option("--gains", gains_flag, "gains n1 n2 n3 n4 (instead of an input file)")->expected(4);
  c_bounds->add_flag("--list", list_catalog, "print the condition catalog instead");
  c_bounds->add_option("--samples", count, "sample count when the gains are too large to enumerate");
  c_bounds->add_option("--seed", seed, "sampling seed");

  auto* c_schedule = app.add_subcommand("schedule", "build the direct bit-level schedule");
  c_schedule->add_option("input", input, "problem JSON (path or - for stdin)");

  auto* c_plan = app.add_subcommand("plan", "detour plan producing an equivalent network");
  c_plan->add_option("input", input, "problem JSON (path or - for stdin)");

  auto* c_sim = app.add_subcommand("simulate", "run the deterministic channel end to end");
  c_sim->add_option("input", input, "problem or plan JSON (path or - for stdin)");
  c_sim->add_option("--rounds", rounds, "number of rounds (default 10 or problem value)");
  c_sim->add_option("--seed", seed_flag, "payload seed (default 1 or problem value)");
  c_sim->add_flag("--trace", trace, "include per-round level tables");

  auto* c_sweep = app.add_subcommand("sweep", "achievability sweep over a gain vector");
  c_sweep->add_option("--gains", gains_flag, "gains n1 n2 n3 n4")->required()->expected(4);
  c_sweep->add_option("--mode", mode, "exhaustive (default) or random");
  c_sweep->add_option("--count", count, "tuples to sample in random mode");
  c_sweep->add_option("--seed", seed, "sampling seed");
  c_sweep->add_option("--rounds", rounds, "simulated rounds per tuple (default 4)");
  c_sweep->add_option("--threads", threads, "worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_check->parsed()) return cmd_check(input, as_json);
    if (c_bounds->parsed()) return cmd_bounds(input, gains_flag, list_catalog, count, seed, as_json);
    if (c_schedule->parsed()) return cmd_schedule(input, as_json);
    if (c_plan->parsed()) return cmd_plan(input, as_json);
    if (c_sim->parsed()) return cmd_simulate(input, rounds, seed_flag, trace, as_json);
    if (c_sweep->parsed())
      return cmd_sweep(gains_flag, mode, count, seed, rounds > 0 ? rounds : 4, threads, as_json);
  } catch (const relnet::json::parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

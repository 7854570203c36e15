#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relnet/report.hpp"

namespace py = pybind11;
using namespace relnet;

namespace {

py::object to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::object: {
      py::dict d;
      for (const auto& [k, v] : j.items()) d[py::str(k)] = to_py(v);
      return d;
    }
    case json::value_t::array: {
      py::list l;
      for (const auto& e : j) l.append(to_py(e));
      return l;
    }
    case json::value_t::string:
      return py::str(j.get<std::string>());
    case json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case json::value_t::number_float:
      return py::float_(j.get<double>());
    default:
      return py::none();
  }
}

std::array<int, kNodeCount> gains_from(const py::sequence& seq) {
  if (py::len(seq) != kNodeCount) throw py::value_error("gains must hold 4 integers");
  std::array<int, kNodeCount> g{};
  for (int i = 0; i < kNodeCount; ++i) g[static_cast<size_t>(i)] = seq[i].cast<int>();
  return g;
}

RateTuple rates_from(const py::object& o) {
  json j;
  if (py::isinstance<py::dict>(o)) {
    j = json::object();
    for (const auto& item : o.cast<py::dict>())
      j[item.first.cast<std::string>()] = item.second.cast<int>();
  } else {
    j = json::array();
    for (const auto& e : o.cast<py::sequence>()) j.push_back(e.cast<int>());
  }
  return parse_rates(j);
}

Canonicalized canon(const py::sequence& gains, const py::object& rates) {
  return canonicalize(gains_from(gains), rates_from(rates));
}

}  // namespace

PYBIND11_MODULE(_relnet, m) {
  m.doc() = "capacity tools for the 4-node relay network (deterministic channel model)";

  py::register_exception<InfeasibleSchedule>(m, "InfeasibleScheduleError");
  py::register_exception<NoPlanFound>(m, "NoPlanFoundError");
  py::register_exception<TooLarge>(m, "TooLargeError");

  m.def(
      "canonical",
      [](py::sequence gains, py::object rates) { return to_py(canonical_json(canon(gains, rates))); },
      py::arg("gains"), py::arg("rates"),
      "Relabel nodes so the gains sort descending; returns the permutation too.");

  m.def(
      "check",
      [](py::sequence gains, py::object rates) {
        Canonicalized c = canon(gains, rates);
        json out = membership_json(check(c.rates, c.gains));
        out["canonical"] = canonical_json(c);
        return to_py(out);
      },
      py::arg("gains"), py::arg("rates"),
      "Region membership, direct-schedulability and the maximum-gap condition.");

  m.def("conditions", [] {
    json out = json::array();
    for (const Condition& c : all_conditions()) out.push_back(condition_json(c));
    return to_py(out);
  });

  m.def(
      "bounds",
      [](py::sequence gains) {
        GainVector g = canonicalize(gains_from(gains), RateTuple()).gains;
        json out = json::array();
        for (const GenieBound& b : all_bounds(g)) out.push_back(bound_json(b));
        return to_py(out);
      },
      py::arg("gains"), "Expanded one-sided genie bound list for canonicalized gains.");

  m.def(
      "bound_equivalence",
      [](py::sequence gains, long long samples, uint64_t seed) {
        GainVector g = canonicalize(gains_from(gains), RateTuple()).gains;
        std::vector<RateTuple> tuples;
        std::string mode;
        try {
          tuples = enumerate_region(g, 2'000'000);
          mode = "exhaustive";
        } catch (const TooLarge&) {
          tuples = sample_region(g, samples, seed);
          mode = "random";
        }
        auto witnesses = boundary_witnesses(g);
        tuples.insert(tuples.end(), witnesses.begin(), witnesses.end());
        EquivalenceReport er = equivalence_check(g, tuples);
        json out;
        out["mode"] = mode;
        out["tuples"] = er.tuples_checked;
        out["disagreements"] = er.witnesses.size();
        out["verdict"] = er.agree() ? "ok" : "disagree";
        return to_py(out);
      },
      py::arg("gains"), py::arg("samples") = 2000, py::arg("seed") = 1,
      "Integer-membership agreement between the bound list and the 13 conditions.");

  m.def(
      "schedule",
      [](py::sequence gains, py::object rates) {
        Canonicalized c = canon(gains, rates);
        return to_py(schedule_json(build_schedule(c.rates, c.gains)));
      },
      py::arg("gains"), py::arg("rates"), "Direct bit-level schedule (canonical labels).");

  m.def(
      "plan",
      [](py::sequence gains, py::object rates) {
        Canonicalized c = canon(gains, rates);
        json out = plan_json(plan(c.rates, c.gains));
        out["canonical"] = canonical_json(c);
        return to_py(out);
      },
      py::arg("gains"), py::arg("rates"), "Detour plan producing an equivalent network.");

  m.def(
      "simulate",
      [](py::sequence gains, py::object rates, int rounds, uint64_t seed, bool trace) {
        Canonicalized c = canon(gains, rates);
        DetourPlan p = plan(c.rates, c.gains);
        Schedule s = build_schedule(p.equivalent, c.gains);
        json out = delivery_json(run_session(p, s, c.gains, rounds, seed, trace), trace);
        out["plan"] = plan_json(p);
        return to_py(out);
      },
      py::arg("gains"), py::arg("rates"), py::arg("rounds") = 10, py::arg("seed") = 1,
      py::arg("trace") = false, "plan + schedule + end-to-end channel run.");

  m.def(
      "sweep_exhaustive",
      [](py::sequence gains, int rounds, int threads) {
        GainVector g = canonicalize(gains_from(gains), RateTuple()).gains;
        return to_py(sweep_json(achievability_sweep(g, rounds, threads)));
      },
      py::arg("gains"), py::arg("rounds") = 4, py::arg("threads") = 1,
      "Schedule + simulate every tuple in the region at these gains.");

  m.def(
      "sweep_random",
      [](py::sequence gains, long long count, uint64_t seed, int rounds, int threads) {
        GainVector g = canonicalize(gains_from(gains), RateTuple()).gains;
        return to_py(sweep_json(random_sweep(g, count, seed, rounds, threads)));
      },
      py::arg("gains"), py::arg("count") = 1000, py::arg("seed") = 1, py::arg("rounds") = 4,
      py::arg("threads") = 1, "Same pipeline over seeded in-region samples.");

  m.attr("__version__") = "0.1.0";
}

#include "relnet/region.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace relnet {

Atom Atom::rate(StreamId s) {
  Atom a;
  a.kind = Kind::Rate;
  a.lhs = {s};
  return a;
}

Atom Atom::max_pair(StreamId s) {
  Atom a;
  a.kind = Kind::MaxPair;
  a.lhs = {s, s.reversed()};
  return a;
}

Atom Atom::max_sum(std::vector<StreamId> x, std::vector<StreamId> y) {
  if (x.empty() || y.empty()) throw std::invalid_argument("max_sum branches must be non-empty");
  Atom a;
  a.kind = Kind::MaxSum;
  a.lhs = std::move(x);
  a.rhs = std::move(y);
  return a;
}

int Atom::evaluate(const RateTuple& r) const {
  auto sum = [&](const std::vector<StreamId>& ss) {
    int t = 0;
    for (StreamId s : ss) t += r.at(s);
    return t;
  };
  switch (kind) {
    case Kind::Rate:
      return r.at(lhs[0]);
    case Kind::MaxPair:
      return std::max(r.at(lhs[0]), r.at(lhs[1]));
    case Kind::MaxSum:
      return std::max(sum(lhs), sum(rhs));
  }
  return 0;
}

std::string Atom::to_string() const {
  auto join = [](const std::vector<StreamId>& ss) {
    std::string out;
    for (size_t i = 0; i < ss.size(); ++i) {
      if (i) out += "+";
      out += stream_label(ss[i]);
    }
    return out;
  };
  switch (kind) {
    case Kind::Rate:
      return stream_label(lhs[0]);
    case Kind::MaxPair:
      return "max(" + stream_label(lhs[0]) + "," + stream_label(lhs[1]) + ")";
    case Kind::MaxSum:
      return "max(" + join(lhs) + ", " + join(rhs) + ")";
  }
  return {};
}

std::string family_name(Family f) {
  switch (f) {
    case Family::DL: return "DL";
    case Family::UL: return "UL";
    case Family::Common: return "COMMON";
    case Family::SosTriN2: return "SOS_TRI_N2";
    case Family::SosTri: return "SOS_TRI";
    case Family::SosQuad: return "SOS_QUAD";
  }
  return {};
}

bool is_extra(Family f) {
  return f == Family::SosTriN2 || f == Family::SosTri || f == Family::SosQuad;
}

int Condition::lhs(const RateTuple& r) const {
  int t = 0;
  for (const Atom& a : atoms) t += a.evaluate(r);
  return t;
}

std::string Condition::to_string() const {
  std::string out;
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += "+";
    out += atoms[i].to_string();
  }
  out += " <= n" + std::to_string(bound_node);
  return out;
}

namespace {

StreamId s(int a, int b) { return StreamId(a, b); }
Atom R(int a, int b) { return Atom::rate(s(a, b)); }
Atom MP(int a, int b) { return Atom::max_pair(s(a, b)); }

// Branch "everything node l sends into {a,b,c}" vs "everything {a,b,c} send
// to l": the star term of the 3-cycle conditions.
Atom star(int l, int a, int b, int c) {
  return Atom::max_sum({s(l, a), s(l, b), s(l, c)}, {s(a, l), s(b, l), s(c, l)});
}

std::vector<Condition> build_capacity() {
  std::vector<Condition> v;
  auto add = [&](std::string name, Family fam, int bound, std::vector<Atom> atoms) {
    Condition c;
    c.id = static_cast<int>(v.size());
    c.name = std::move(name);
    c.family = fam;
    c.bound_node = bound;
    c.atoms = std::move(atoms);
    v.push_back(std::move(c));
  };

  // Downlink cuts around {4}, {3,4} and {2,3,4}.
  add("dl_4", Family::DL, 4, {R(1, 4), R(2, 4), R(3, 4)});
  add("dl_34", Family::DL, 3, {R(1, 3), R(2, 3), R(1, 4), R(2, 4), MP(3, 4)});
  add("dl_234_a", Family::DL, 2, {R(1, 2), R(1, 3), R(1, 4), R(3, 2), R(4, 2), MP(3, 4)});
  add("dl_234_b", Family::DL, 2, {R(1, 2), R(1, 3), R(1, 4), R(2, 3), R(4, 3), MP(2, 4)});
  add("dl_234_c", Family::DL, 2, {R(1, 2), R(1, 3), R(1, 4), R(2, 4), R(3, 4), MP(2, 3)});

  // Uplink mirrors.
  add("ul_4", Family::UL, 4, {R(4, 1), R(4, 2), R(4, 3)});
  add("ul_34", Family::UL, 3, {R(3, 1), R(3, 2), R(4, 1), R(4, 2), MP(3, 4)});
  add("ul_234_a", Family::UL, 2, {R(2, 1), R(3, 1), R(4, 1), R(2, 3), R(2, 4), MP(3, 4)});
  add("ul_234_b", Family::UL, 2, {R(2, 1), R(3, 1), R(4, 1), R(3, 2), R(3, 4), MP(2, 4)});
  add("ul_234_c", Family::UL, 2, {R(2, 1), R(3, 1), R(4, 1), R(4, 2), R(4, 3), MP(2, 3)});

  // Relay-cut conditions: one per pairing of the four nodes into two pairs.
  add("relay_14_23", Family::Common, 1,
      {Atom::max_sum({s(1, 2), s(1, 3), s(4, 2), s(4, 3)}, {s(2, 1), s(3, 1), s(2, 4), s(3, 4)}),
       MP(2, 3), MP(1, 4)});
  add("relay_13_24", Family::Common, 1,
      {Atom::max_sum({s(1, 2), s(1, 4), s(3, 2), s(3, 4)}, {s(2, 1), s(4, 1), s(2, 3), s(4, 3)}),
       MP(1, 3), MP(2, 4)});
  add("relay_12_34", Family::Common, 1,
      {Atom::max_sum({s(1, 3), s(1, 4), s(2, 3), s(2, 4)}, {s(3, 1), s(4, 1), s(3, 2), s(4, 2)}),
       MP(1, 2), MP(3, 4)});
  return v;
}

std::vector<Condition> build_extra() {
  std::vector<Condition> v;
  int next_id = static_cast<int>(capacity_conditions().size());
  auto add = [&](Condition c) {
    c.id = next_id++;
    v.push_back(std::move(c));
  };

  // The two n2-bounded cycle conditions: either orientation of the {2,3,4}
  // triangle on top of node 1's downlink (resp. uplink) load.
  {
    Condition c;
    c.name = "sos_tri234_dl";
    c.family = Family::SosTriN2;
    c.bound_node = 2;
    c.atoms = {Atom::max_sum({s(2, 3), s(3, 4), s(4, 2)}, {s(3, 2), s(2, 4), s(4, 3)}),
               R(1, 2), R(1, 3), R(1, 4)};
    c.cycle = {2, 3, 4};
    add(std::move(c));
  }
  {
    Condition c;
    c.name = "sos_tri234_ul";
    c.family = Family::SosTriN2;
    c.bound_node = 2;
    c.atoms = {Atom::max_sum({s(2, 3), s(3, 4), s(4, 2)}, {s(3, 2), s(2, 4), s(4, 3)}),
               R(2, 1), R(3, 1), R(4, 1)};
    c.cycle = {2, 3, 4};
    add(std::move(c));
  }

  // Directed 3-cycle a->b->c->a plus the star of the leftover node, <= n1.
  // Rotations of a cycle give the same condition, so each triple contributes
  // its two orientations, anchored at the smallest node.
  auto add_tri = [&](int a, int b, int c, int l) {
    Condition cond;
    cond.name = "sos_tri" + std::to_string(a) + std::to_string(b) + std::to_string(c) + "_l" +
                std::to_string(l);
    cond.family = Family::SosTri;
    cond.bound_node = 1;
    cond.atoms = {R(a, b), R(b, c), R(c, a), star(l, a, b, c)};
    cond.cycle = {a, b, c};
    cond.star_node = l;
    add(std::move(cond));
  };
  add_tri(1, 2, 3, 4);
  add_tri(1, 3, 2, 4);
  add_tri(1, 2, 4, 3);
  add_tri(1, 4, 2, 3);
  add_tri(1, 3, 4, 2);
  add_tri(1, 4, 3, 2);
  add_tri(2, 3, 4, 1);
  add_tri(2, 4, 3, 1);

  // Directed 4-cycle a->b->c->d->a plus both chord maxes, <= n1. Three
  // undirected Hamiltonian cycles, two directions each; the chord atoms do
  // not depend on the direction.
  auto add_quad = [&](int a, int b, int c, int d) {
    Condition cond;
    cond.name = "sos_quad" + std::to_string(a) + std::to_string(b) + std::to_string(c) +
                std::to_string(d);
    cond.family = Family::SosQuad;
    cond.bound_node = 1;
    cond.atoms = {R(a, b), R(b, c), R(c, d), R(d, a), MP(b, d), MP(a, c)};
    cond.cycle = {a, b, c, d};
    add(std::move(cond));
  };
  add_quad(1, 2, 3, 4);
  add_quad(1, 4, 3, 2);
  add_quad(1, 2, 4, 3);
  add_quad(1, 3, 4, 2);
  add_quad(1, 3, 2, 4);
  add_quad(1, 4, 2, 3);

  return v;
}

}  // namespace

const std::vector<Condition>& capacity_conditions() {
  static const std::vector<Condition> catalog = build_capacity();
  return catalog;
}

const std::vector<Condition>& extra_conditions() {
  static const std::vector<Condition> catalog = build_extra();
  return catalog;
}

const std::vector<Condition>& all_conditions() {
  static const std::vector<Condition> catalog = [] {
    std::vector<Condition> all = capacity_conditions();
    const auto& extra = extra_conditions();
    all.insert(all.end(), extra.begin(), extra.end());
    return all;
  }();
  return catalog;
}

const Condition& condition_by_id(int id) {
  const auto& all = all_conditions();
  if (id < 0 || id >= static_cast<int>(all.size())) throw std::out_of_range("condition id");
  return all[static_cast<size_t>(id)];
}

Gap evaluate(const Condition& c, const RateTuple& r, const GainVector& g) {
  Gap out;
  out.condition_id = c.id;
  out.lhs = c.lhs(r);
  out.rhs = g.of(c.bound_node);
  out.gap = out.lhs - out.rhs;
  return out;
}

MembershipReport check(const RateTuple& r, const GainVector& g) {
  MembershipReport rep;
  for (const Condition& c : capacity_conditions()) {
    Gap gp = evaluate(c, r, g);
    if (gp.gap > 0) rep.violated.push_back(gp);
  }
  rep.in_region = rep.violated.empty();

  for (const Condition& c : extra_conditions()) {
    Gap gp = evaluate(c, r, g);
    if (gp.gap > 0) {
      rep.extra_violated.push_back(gp);
      if (!rep.mgc || gp.gap > rep.mgc->gap) rep.mgc = gp;
    }
  }
  rep.sos_feasible = rep.in_region && rep.extra_violated.empty();
  return rep;
}

}  // namespace relnet

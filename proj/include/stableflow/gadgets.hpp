// Reference constructions: the chord network whose optimal stable value
// jumps when its middle edge is freed, its matching counterpart with one
// tie, and the tie-elimination gadget that rewrites a tied instance into a
// tie-free one whose maximum weakly stable matching grows by exactly two
// per tie.

#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stableflow/instance.hpp"
#include "stableflow/matching.hpp"
#include "stableflow/transforms.hpp"

namespace stableflow {

// Two parallel unit routes s->u->t and s->v->t plus the chord u->v. The
// chord is u's best outgoing and v's best incoming edge, so the only
// classically stable flow routes through it (value 1); declaring the chord
// free admits the value-2 flow that saturates both routes and leaves the
// chord empty.
inline instance build_chord_example() {
  instance inst;
  inst.vertices = {{"s", true}, {"t", true}, {"u", false}, {"v", false}};
  auto unit = [](std::string id, std::string tail, std::string head) {
    edge e;
    e.id = std::move(id);
    e.tail = std::move(tail);
    e.head = std::move(head);
    e.capacity = 1;
    return e;
  };
  inst.edges = {unit("su", "s", "u"), unit("sv", "s", "v"), unit("ut", "u", "t"),
                unit("vt", "v", "t"), unit("uv", "u", "v")};
  inst.preferences["u"] = {{"su"}, {"uv", "ut"}};
  inst.preferences["v"] = {{"uv", "sv"}, {"vt"}};
  return inst;
}

inline std::set<std::string> chord_free_set() { return {"uv"}; }

// Matching instance with a single tie: man `m` ranks w1 and w2 equally at
// the bottom of his list, below the two private women x1 and x2.
inline matching_instance build_tied_matching_example() {
  matching_instance mi;
  mi.men = {"m", "m2", "m3"};
  mi.women = {"w1", "w2", "x1", "x2"};
  auto pair = [](std::string man, std::string woman, int mr, int wr) {
    matching_pair p;
    p.man = std::move(man);
    p.woman = std::move(woman);
    p.man_rank = mr;
    p.woman_rank = wr;
    return p;
  };
  mi.pairs = {pair("m", "x1", 1, 1),  pair("m", "x2", 2, 1),  pair("m", "w1", 3, 1),
              pair("m", "w2", 3, 2),  pair("m2", "w1", 1, 2), pair("m2", "w2", 2, 3),
              pair("m3", "w2", 1, 1)};
  mi.ties = {{"m", {"w1", "w2"}}};
  return mi;
}

// One instantiated gadget. `kept_woman` stays adjacent to the man (strictly
// re-ranked); `routed_woman` is reached only through the relays b and d.
// a and c join the women's side, b and d the men's side.
struct tie_gadget {
  std::string man, kept_woman, routed_woman;
  std::string a, b, c, d;
};

struct gadget_map {
  std::vector<tie_gadget> gadgets;

  // Completing a matching through the gadgets adds exactly two pairs per
  // tie regardless of scenario.
  std::size_t cardinality_offset() const { return 2 * gadgets.size(); }
};

struct gadgetized {
  matching_instance inst;
  gadget_map map;
};

namespace detail {

inline int pair_index(const matching_instance& mi, const std::string& man,
                      const std::string& woman) {
  for (std::size_t i = 0; i < mi.pairs.size(); ++i)
    if (mi.pairs[i].man == man && mi.pairs[i].woman == woman) return static_cast<int>(i);
  return -1;
}

inline int degree_of_man(const matching_instance& mi, const std::string& man) {
  int d = 0;
  for (const matching_pair& p : mi.pairs)
    if (p.man == man) ++d;
  return d;
}

}  // namespace detail

// Rewrites every tie (m, {w1, w2}) into a tie-free sub-instance. The pair
// m-w2 is deleted; four fresh people a, b, c, d arrive with pairs m-a, m-c,
// a-b, c-d, b-w2, d-w2. The man's list becomes strict: ..., c, w1, a from
// his old bottom rank down. b takes w2's old slot for m, with d directly
// below; everyone ranked worse shifts by one. The pairs m-c, d-w2, a-b are
// free. Any weakly stable matching of the rewrite matches exactly two of
// the newcomers, so maximum sizes differ by cardinality_offset().
inline gadgetized gadgetize_ties(const matching_instance& mi) {
  validation_report rep = validate_matching(mi);
  if (!rep.ok())
    throw std::invalid_argument("invalid matching instance: " + rep.violations.front().rule +
                                " at '" + rep.violations.front().where + "'");
  gadgetized out;
  out.inst = mi;
  out.inst.ties.clear();

  std::set<std::string> used(mi.men.begin(), mi.men.end());
  used.insert(mi.women.begin(), mi.women.end());

  for (const matching_tie& tie : mi.ties) {
    const std::string& m = tie.man;
    const std::string& w1 = tie.women[0];
    const std::string& w2 = tie.women[1];
    tie_gadget g;
    g.man = m;
    g.kept_woman = w1;
    g.routed_woman = w2;
    g.a = detail::fresh_id(used, m + "_a");
    g.b = detail::fresh_id(used, m + "_b");
    g.c = detail::fresh_id(used, m + "_c");
    g.d = detail::fresh_id(used, m + "_d");
    out.inst.women.push_back(g.a);
    out.inst.men.push_back(g.b);
    out.inst.women.push_back(g.c);
    out.inst.men.push_back(g.d);

    int deg = detail::degree_of_man(out.inst, m);  // includes both tied pairs
    int removed = detail::pair_index(out.inst, m, w2);
    if (removed < 0) throw std::logic_error("tie lost its routed pair");
    int w2_slot = out.inst.pairs[removed].woman_rank;
    out.inst.pairs.erase(out.inst.pairs.begin() + removed);

    // m's strict tail: c at his old tie rank, w1 one below, a at the bottom.
    for (matching_pair& p : out.inst.pairs)
      if (p.man == m && p.woman == w1) p.man_rank = deg;
    // w2's column: pairs below the deleted slot move down one.
    for (matching_pair& p : out.inst.pairs)
      if (p.woman == w2 && p.woman_rank > w2_slot) ++p.woman_rank;

    auto pair = [](std::string man, std::string woman, int mr, int wr, bool free) {
      matching_pair p;
      p.man = std::move(man);
      p.woman = std::move(woman);
      p.man_rank = mr;
      p.woman_rank = wr;
      p.free = free;
      return p;
    };
    out.inst.pairs.push_back(pair(m, g.c, deg - 1, 2, true));
    out.inst.pairs.push_back(pair(m, g.a, deg + 1, 1, false));
    out.inst.pairs.push_back(pair(g.b, g.a, 1, 2, true));
    out.inst.pairs.push_back(pair(g.d, g.c, 2, 1, false));
    out.inst.pairs.push_back(pair(g.b, w2, 2, w2_slot, false));
    out.inst.pairs.push_back(pair(g.d, w2, 1, w2_slot + 1, true));

    out.map.gadgets.push_back(g);
  }

  validation_report after = validate_matching(out.inst);
  if (!after.ok())
    throw std::logic_error("gadget construction produced an invalid instance: " +
                           after.violations.front().rule + " at '" +
                           after.violations.front().where + "'");
  return out;
}

// Extends a matching of the original tied instance to the gadgetized one.
// Per gadget: if m-w2 was matched, reroute it as m-c, d-w2, a-b; if m was
// single, park him on a and pair c-d; if m was matched elsewhere, pair both
// relays internally as c-d, a-b. Each case adds two pairs net.
inline matching complete_matching_scenarios(const gadget_map& gm, const matching& original) {
  matching out = original;
  for (const tie_gadget& g : gm.gadgets) {
    bool routed = original.count({g.man, g.routed_woman}) > 0;
    bool matched = false;
    for (const auto& [man, woman] : original)
      if (man == g.man) matched = true;
    if (routed) {
      out.erase({g.man, g.routed_woman});
      out.insert({g.man, g.c});
      out.insert({g.d, g.routed_woman});
      out.insert({g.b, g.a});
    } else if (!matched) {
      out.insert({g.man, g.a});
      out.insert({g.d, g.c});
    } else {
      out.insert({g.d, g.c});
      out.insert({g.b, g.a});
    }
  }
  return out;
}

// Projects a matching of the gadgetized instance back: gadget people are
// dropped, and m-w2 is restored exactly when the gadget holds both halves
// of the reroute (m on a relay woman and w2 on a relay man).
inline matching ungadgetize_matching(const gadget_map& gm, const matching& completed) {
  std::set<std::string> gadget_people;
  for (const tie_gadget& g : gm.gadgets) {
    gadget_people.insert(g.a);
    gadget_people.insert(g.b);
    gadget_people.insert(g.c);
    gadget_people.insert(g.d);
  }
  matching out;
  for (const auto& pr : completed)
    if (!gadget_people.count(pr.first) && !gadget_people.count(pr.second)) out.insert(pr);
  for (const tie_gadget& g : gm.gadgets) {
    bool man_on_relay =
        completed.count({g.man, g.a}) > 0 || completed.count({g.man, g.c}) > 0;
    bool woman_on_relay = completed.count({g.b, g.routed_woman}) > 0 ||
                          completed.count({g.d, g.routed_woman}) > 0;
    if (man_on_relay && woman_on_relay) out.insert({g.man, g.routed_woman});
  }
  return out;
}

}  // namespace stableflow

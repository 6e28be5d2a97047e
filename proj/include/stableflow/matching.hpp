// Bipartite matching with preference lists, optional bottom ties on the
// men's side, and forced/forbidden/free pair annotations, plus the standard
// translation into a two-terminal flow network whose integral stable flows
// are exactly the stable matchings.

#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stableflow/instance.hpp"
#include "stableflow/transforms.hpp"

namespace stableflow {

struct matching_pair {
  std::string man, woman;
  int man_rank = 0, woman_rank = 0;  // 1 is best; tied pairs share a man_rank
  bool forced = false, forbidden = false, free = false;
};

// A tie is a two-woman bottom slot on one man's list.
struct matching_tie {
  std::string man;
  std::array<std::string, 2> women;
};

struct matching_instance {
  std::vector<std::string> men, women;
  std::vector<matching_pair> pairs;
  std::vector<matching_tie> ties;
};

using matching = std::set<std::pair<std::string, std::string>>;  // (man, woman)

inline validation_report validate_matching(const matching_instance& mi) {
  validation_report rep;
  auto bad = [&rep](std::string rule, std::string where, std::string detail) {
    rep.violations.push_back({std::move(rule), std::move(where), std::move(detail)});
  };

  std::set<std::string> men(mi.men.begin(), mi.men.end());
  std::set<std::string> women(mi.women.begin(), mi.women.end());
  if (men.size() != mi.men.size()) bad("duplicate vertex id", "men", "duplicate man id");
  if (women.size() != mi.women.size()) bad("duplicate vertex id", "women", "duplicate woman id");
  for (const std::string& m : mi.men)
    if (women.count(m)) bad("duplicate vertex id", m, "id appears on both sides");

  std::map<std::string, std::vector<const matching_pair*>> of_man, of_woman;
  std::set<std::pair<std::string, std::string>> seen;
  for (const matching_pair& p : mi.pairs) {
    if (!men.count(p.man)) bad("unknown endpoint", p.man + "-" + p.woman, "man not declared");
    if (!women.count(p.woman))
      bad("unknown endpoint", p.man + "-" + p.woman, "woman not declared");
    if (!seen.insert({p.man, p.woman}).second)
      bad("duplicate pair", p.man + "-" + p.woman, "acceptable pair declared twice");
    if (p.forced && p.forbidden)
      bad("pair both forced and forbidden", p.man + "-" + p.woman, "");
    of_man[p.man].push_back(&p);
    of_woman[p.woman].push_back(&p);
  }

  std::map<std::string, const matching_tie*> tie_of;
  for (const matching_tie& t : mi.ties) {
    if (!men.count(t.man)) {
      bad("malformed tie", t.man, "tie owner is not a declared man");
      continue;
    }
    if (!tie_of.emplace(t.man, &t).second)
      bad("malformed tie", t.man, "more than one tie on the same list");
    if (t.women[0] == t.women[1]) bad("malformed tie", t.man, "tied entries must differ");
    for (const std::string& w : t.women) {
      if (!seen.count({t.man, w}))
        bad("malformed tie", t.man, "tied woman '" + w + "' is not an acceptable partner");
    }
  }

  // Rank shape: women and tie-free men get a 1..k permutation; a man with a
  // tie gets 1..k-1 with the bottom value doubled on exactly the tied pairs.
  for (const auto& [m, plist] : of_man) {
    std::vector<int> ranks;
    for (const matching_pair* p : plist) ranks.push_back(p->man_rank);
    std::sort(ranks.begin(), ranks.end());
    int k = static_cast<int>(ranks.size());
    auto it = tie_of.find(m);
    bool ok;
    if (it == tie_of.end()) {
      ok = true;
      for (int i = 0; i < k; ++i) ok = ok && ranks[i] == i + 1;
    } else {
      ok = k >= 2;
      for (int i = 0; i < k - 1 && ok; ++i) ok = ranks[i] == i + 1;
      ok = ok && k >= 2 && ranks[k - 1] == k - 1;
      if (ok) {
        for (const matching_pair* p : plist) {
          bool tied = p->woman == it->second->women[0] || p->woman == it->second->women[1];
          if (tied != (p->man_rank == k - 1)) ok = false;
        }
      }
    }
    if (!ok) bad("malformed preference ranks", m, "man's ranks do not fit his list and tie");
  }
  for (const auto& [w, plist] : of_woman) {
    std::vector<int> ranks;
    for (const matching_pair* p : plist) ranks.push_back(p->woman_rank);
    std::sort(ranks.begin(), ranks.end());
    for (std::size_t i = 0; i < ranks.size(); ++i)
      if (ranks[i] != static_cast<int>(i) + 1) {
        bad("malformed preference ranks", w, "woman's ranks are not a 1..k permutation");
        break;
      }
  }
  return rep;
}

inline bool matching_feasible(const matching_instance& mi, const matching& m) {
  std::set<std::pair<std::string, std::string>> acceptable;
  for (const matching_pair& p : mi.pairs) acceptable.insert({p.man, p.woman});
  std::set<std::string> used;
  for (const auto& pr : m) {
    if (!acceptable.count(pr)) return false;
    if (!used.insert(pr.first).second) return false;
    if (!used.insert(pr.second).second) return false;
  }
  return true;
}

namespace detail {

struct matching_ranks {
  std::map<std::pair<std::string, std::string>, const matching_pair*> pair_of;
  std::map<std::string, std::pair<std::string, int>> man_match, woman_match;

  matching_ranks(const matching_instance& mi, const matching& m) {
    for (const matching_pair& p : mi.pairs) pair_of[{p.man, p.woman}] = &p;
    for (const auto& pr : m) {
      const matching_pair* p = pair_of.at(pr);
      man_match[pr.first] = {pr.second, p->man_rank};
      woman_match[pr.second] = {pr.first, p->woman_rank};
    }
  }
};

}  // namespace detail

// First blocking pair in declaration order, if any. Blocking is weak: both
// sides must strictly prefer each other to their current situation, so a
// tied alternative never blocks, and free pairs never block at all.
inline std::optional<std::pair<std::string, std::string>> find_blocking_pair(
    const matching_instance& mi, const matching& m) {
  detail::matching_ranks ranks(mi, m);
  for (const matching_pair& p : mi.pairs) {
    if (p.free || m.count({p.man, p.woman})) continue;
    auto him = ranks.man_match.find(p.man);
    if (him != ranks.man_match.end() && him->second.second <= p.man_rank) continue;
    auto her = ranks.woman_match.find(p.woman);
    if (her != ranks.woman_match.end() && her->second.second <= p.woman_rank) continue;
    return std::make_pair(p.man, p.woman);
  }
  return std::nullopt;
}

inline bool is_matching_stable(const matching_instance& mi, const matching& m) {
  return matching_feasible(mi, m) && !find_blocking_pair(mi, m).has_value();
}

struct matching_flow_result {
  instance inst;
  std::string source, sink;
  std::map<std::string, std::string> man_edge, woman_edge;  // vertex -> unit edge id
  std::map<std::string, std::pair<std::string, std::string>> pair_of_edge;
  std::map<std::pair<std::string, std::string>, std::string> edge_of_pair;
};

// Translate a tie-free matching instance into a flow network: a source
// offering one unit to each man, a unit edge per acceptable pair carrying
// the two ranks and any restriction annotations, and one unit per woman
// into the sink. Integral stable flows correspond one-to-one to stable
// matchings.
inline matching_flow_result matching_to_flow(const matching_instance& mi) {
  if (!mi.ties.empty())
    throw std::invalid_argument("instance has ties; gadgetize ties first");
  validation_report rep = validate_matching(mi);
  if (!rep.ok())
    throw std::invalid_argument("invalid matching instance: " + rep.violations.front().rule +
                                " at '" + rep.violations.front().where + "'");

  matching_flow_result res;
  std::set<std::string> vused;
  for (const std::string& m : mi.men) vused.insert(m);
  for (const std::string& w : mi.women) vused.insert(w);
  res.source = detail::fresh_id(vused, "__source");
  res.sink = detail::fresh_id(vused, "__sink");

  res.inst.vertices.push_back({res.source, true});
  res.inst.vertices.push_back({res.sink, true});
  for (const std::string& m : mi.men) res.inst.vertices.push_back({m, false});
  for (const std::string& w : mi.women) res.inst.vertices.push_back({w, false});

  std::set<std::string> eused;
  for (const std::string& m : mi.men) {
    std::string id = detail::fresh_id(eused, "__s_" + m);
    res.man_edge[m] = id;
    res.inst.edges.push_back({id, res.source, m, 1, 0, std::nullopt, false});
    res.inst.preferences[m].in = {id};
  }

  // Pair edges sorted by the man's rank make his outgoing list; the women's
  // incoming lists are assembled from their own ranks afterwards.
  std::map<std::string, std::vector<std::pair<int, const matching_pair*>>> by_man, by_woman;
  for (const matching_pair& p : mi.pairs) {
    by_man[p.man].push_back({p.man_rank, &p});
    by_woman[p.woman].push_back({p.woman_rank, &p});
  }
  for (const std::string& m : mi.men) {
    auto& lst = by_man[m];
    std::sort(lst.begin(), lst.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [rank, p] : lst) {
      (void)rank;
      std::string id = detail::fresh_id(eused, "__" + p->man + "_" + p->woman);
      res.pair_of_edge[id] = {p->man, p->woman};
      res.edge_of_pair[{p->man, p->woman}] = id;
      edge e{id, p->man, p->woman, 1, 0, std::nullopt, false};
      if (p->forced) e.forced_lower = 1;
      if (p->forbidden) e.forbidden_upper = 0;
      if (p->free) e.free = true;
      res.inst.edges.push_back(e);
      res.inst.preferences[m].out.push_back(id);
    }
  }
  for (const std::string& w : mi.women) {
    auto& lst = by_woman[w];
    std::sort(lst.begin(), lst.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [rank, p] : lst) {
      (void)rank;
      res.inst.preferences[w].in.push_back(res.edge_of_pair.at({p->man, p->woman}));
    }
    std::string id = detail::fresh_id(eused, "__" + w + "_t");
    res.woman_edge[w] = id;
    res.inst.edges.push_back({id, w, res.sink, 1, 0, std::nullopt, false});
    res.inst.preferences[w].out = {id};
  }
  return res;
}

inline matching flow_to_matching(const matching_flow_result& conv, const flow& f) {
  matching m;
  for (const auto& [eid, pr] : conv.pair_of_edge) {
    auto it = f.find(eid);
    if (it != f.end() && it->second > 0) m.insert(pr);
  }
  return m;
}

inline flow matching_to_flow_values(const matching_flow_result& conv, const matching& m) {
  flow f;
  for (const edge& e : conv.inst.edges) f[e.id] = 0;
  for (const auto& pr : m) {
    f[conv.edge_of_pair.at(pr)] = 1;
    f[conv.man_edge.at(pr.first)] = 1;
    f[conv.woman_edge.at(pr.second)] = 1;
  }
  return f;
}

}  // namespace stableflow

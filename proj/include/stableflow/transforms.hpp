// Instance rewrites that normalize restrictions: splitting partially forced
// or partially forbidden edges into a bound part and a remainder part, and
// the preference-list splice used by every augmentation step.

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stableflow/instance.hpp"

namespace stableflow {

namespace detail {

inline std::string fresh_id(std::set<std::string>& used, std::string base) {
  while (used.count(base)) base += "'";
  used.insert(base);
  return base;
}

inline std::set<std::string> edge_id_set(const instance& inst) {
  std::set<std::string> ids;
  for (const edge& e : inst.edges) ids.insert(e.id);
  return ids;
}

// Replace one entry of a preference list by a run of entries, in place.
inline void replace_in_list(std::vector<std::string>& list, const std::string& old_id,
                            const std::vector<std::string>& replacement) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i] == old_id) {
      list.erase(list.begin() + static_cast<std::ptrdiff_t>(i));
      list.insert(list.begin() + static_cast<std::ptrdiff_t>(i), replacement.begin(),
                  replacement.end());
      return;
    }
  }
}

}  // namespace detail

// Which original edge each split produced, first part listed first. Edges
// that were not split have no entry.
struct split_map {
  std::map<std::string, std::pair<std::string, std::string>> parts;
};

struct split_result {
  instance out;
  split_map map;
};

// An edge with 0 < forbidden_upper < capacity becomes an unrestricted part
// of capacity forbidden_upper directly followed by a completely forbidden
// part with the remaining capacity. Both parts take over the original
// preference position, first part ranked directly better.
inline split_result split_forbidden_lower(const instance& inst) {
  split_result res;
  res.out = inst;
  std::set<std::string> used = detail::edge_id_set(inst);

  std::vector<edge> new_edges;
  for (const edge& e : res.out.edges) {
    if (!e.forbidden_upper || *e.forbidden_upper == 0) {
      new_edges.push_back(e);
      continue;
    }
    edge keep = e, ban = e;
    keep.id = detail::fresh_id(used, e.id + "__1");
    keep.capacity = *e.forbidden_upper;
    keep.forbidden_upper.reset();
    ban.id = detail::fresh_id(used, e.id + "__2");
    ban.capacity = e.capacity - *e.forbidden_upper;
    ban.forbidden_upper = 0;
    res.map.parts[e.id] = {keep.id, ban.id};
    for (const auto& [vid, _] : res.out.preferences) {
      (void)_;
      detail::replace_in_list(res.out.preferences[vid].in, e.id, {keep.id, ban.id});
      detail::replace_in_list(res.out.preferences[vid].out, e.id, {keep.id, ban.id});
    }
    new_edges.push_back(keep);
    new_edges.push_back(ban);
  }
  res.out.edges = std::move(new_edges);
  return res;
}

// An edge with 0 < forced_lower < capacity becomes a completely forced part
// of capacity forced_lower directly followed by an unrestricted remainder.
inline split_result split_forced_lower(const instance& inst) {
  split_result res;
  res.out = inst;
  std::set<std::string> used = detail::edge_id_set(inst);

  std::vector<edge> new_edges;
  for (const edge& e : res.out.edges) {
    if (e.forced_lower == 0 || e.forced_lower == e.capacity) {
      new_edges.push_back(e);
      continue;
    }
    edge must = e, rest = e;
    must.id = detail::fresh_id(used, e.id + "__1");
    must.capacity = e.forced_lower;
    must.forced_lower = e.forced_lower;  // completely forced
    rest.id = detail::fresh_id(used, e.id + "__2");
    rest.capacity = e.capacity - e.forced_lower;
    rest.forced_lower = 0;
    res.map.parts[e.id] = {must.id, rest.id};
    for (const auto& [vid, _] : res.out.preferences) {
      (void)_;
      detail::replace_in_list(res.out.preferences[vid].in, e.id, {must.id, rest.id});
      detail::replace_in_list(res.out.preferences[vid].out, e.id, {must.id, rest.id});
    }
    new_edges.push_back(must);
    new_edges.push_back(rest);
  }
  res.out.edges = std::move(new_edges);
  return res;
}

// Fold a flow on the split instance back onto the original edge set.
inline flow merge_split_flow(const instance& original, const split_map& map,
                             const flow& split_flow) {
  auto value_of = [&split_flow](const std::string& id) -> std::int64_t {
    auto it = split_flow.find(id);
    return it == split_flow.end() ? 0 : it->second;
  };
  flow merged;
  for (const edge& e : original.edges) {
    auto it = map.parts.find(e.id);
    if (it == map.parts.end())
      merged[e.id] = value_of(e.id);
    else
      merged[e.id] = value_of(it->second.first) + value_of(it->second.second);
  }
  return merged;
}

enum class pref_side { in, out };

// Splice new_edge into one preference list directly before anchor. The
// relative order of all existing entries is preserved, which realizes
// "ranked just better than anchor" without fractional rank bookkeeping.
inline instance insert_rank_before(const instance& inst, const std::string& vertex_id,
                                   pref_side side, const std::string& anchor,
                                   const std::string& new_edge) {
  instance out = inst;
  auto it = out.preferences.find(vertex_id);
  if (it == out.preferences.end())
    throw std::invalid_argument("anchor not in preference order");
  std::vector<std::string>& list = side == pref_side::in ? it->second.in : it->second.out;
  for (const std::string& eid : list)
    if (eid == new_edge) throw std::invalid_argument("edge already in preference order");
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i] == anchor) {
      list.insert(list.begin() + static_cast<std::ptrdiff_t>(i), new_edge);
      return out;
    }
  }
  throw std::invalid_argument("anchor not in preference order");
}

}  // namespace stableflow

// Feasibility and stability checking. A blocking walk is a directed walk of
// unsaturated non-free edges whose first edge is either offered by a
// terminal or preferred by its tail to an outgoing edge that carries flow,
// and symmetrically whose last edge is either absorbed by a terminal or
// preferred by its head to an incoming edge that carries flow. A feasible
// flow is stable when no blocking walk exists.

#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stableflow/instance.hpp"

namespace stableflow {

// Certificate of instability. Edges form the walk in order; a disengaged
// witness means the corresponding end vertex is a terminal, otherwise the
// witness is a positive-flow edge at that vertex which the walk edge beats.
struct blocking_walk {
  std::vector<std::string> edges;
  std::optional<std::string> start_witness;
  std::optional<std::string> end_witness;
};

struct feasibility_options {
  bool check_restrictions = false;  // also audit forced/forbidden bounds
};

inline validation_report check_feasible(const instance& inst, const flow& f,
                                        feasibility_options opts = {}) {
  instance_view view(inst);
  std::vector<std::int64_t> fv = view.to_vec(f);  // throws on unknown edge id
  validation_report rep;
  auto bad = [&rep](std::string rule, std::string where, std::string detail) {
    rep.violations.push_back({std::move(rule), std::move(where), std::move(detail)});
  };
  for (int e = 0; e < view.edge_count(); ++e) {
    const edge& ed = inst.edges[e];
    if (fv[e] < 0) bad("negative flow", ed.id, "value " + std::to_string(fv[e]));
    if (fv[e] > ed.capacity)
      bad("capacity exceeded", ed.id,
          "value " + std::to_string(fv[e]) + " > capacity " + std::to_string(ed.capacity));
    if (opts.check_restrictions) {
      if (fv[e] < ed.forced_lower)
        bad("forced bound violated", ed.id,
            "value " + std::to_string(fv[e]) + " < forced_lower " +
                std::to_string(ed.forced_lower));
      if (ed.forbidden_upper && fv[e] > *ed.forbidden_upper)
        bad("forbidden bound violated", ed.id,
            "value " + std::to_string(fv[e]) + " > forbidden_upper " +
                std::to_string(*ed.forbidden_upper));
    }
  }
  for (int v = 0; v < view.vertex_count(); ++v) {
    if (view.terminal(v)) continue;
    std::int64_t balance = 0;
    for (int e : view.in_edges(v)) balance += fv[e];
    for (int e : view.out_edges(v)) balance -= fv[e];
    if (balance != 0)
      bad("balance violated", view.vertex_id(v),
          "inflow minus outflow is " + std::to_string(balance));
  }
  return rep;
}

namespace detail {

// A candidate start edge: offered by a terminal tail, or beating an
// outgoing positive-flow edge of its tail.
inline bool walk_start_edge(const instance_view& view, const std::vector<std::int64_t>& fv,
                            int e) {
  int t = view.tail(e);
  if (view.terminal(t)) return true;
  for (int other : view.out_pref(t))
    if (fv[other] > 0 && view.out_rank(e) < view.out_rank(other)) return true;
  return false;
}

inline bool walk_end_edge(const instance_view& view, const std::vector<std::int64_t>& fv,
                          int e) {
  int h = view.head(e);
  if (view.terminal(h)) return true;
  for (int other : view.in_pref(h))
    if (fv[other] > 0 && view.in_rank(e) < view.in_rank(other)) return true;
  return false;
}

// Worst (highest-rank) positive-flow outgoing edge of v; used as the
// deterministic dominance witness. Any positive edge the walk edge beats
// would do; the worst one always qualifies.
inline int worst_positive_out(const instance_view& view, const std::vector<std::int64_t>& fv,
                              int v) {
  int worst = -1;
  for (int e : view.out_pref(v))
    if (fv[e] > 0) worst = e;  // list is best-first, so the last hit is worst
  return worst;
}

inline int worst_positive_in(const instance_view& view, const std::vector<std::int64_t>& fv,
                             int v) {
  int worst = -1;
  for (int e : view.in_pref(v))
    if (fv[e] > 0) worst = e;
  return worst;
}

// Search for a blocking walk: a walk exists iff some end edge is reachable
// from some start edge inside the line graph of unsaturated non-free edges.
// Seeds and neighbors are scanned in canonical edge order, so the returned
// certificate is deterministic.
inline std::optional<blocking_walk> find_blocking_walk_idx(
    const instance_view& view, const std::vector<std::int64_t>& fv,
    const std::vector<char>& free_mask) {
  int m = view.edge_count();
  std::vector<char> candidate(m, 0);
  for (int e = 0; e < m; ++e)
    candidate[e] = fv[e] < view.capacity(e) && !free_mask[e];

  std::vector<int> parent(m, -2);  // -2 unvisited, -1 walk start
  std::deque<int> queue;
  int goal = -1;
  auto visit = [&](int e, int par) {
    if (parent[e] != -2) return false;
    parent[e] = par;
    if (walk_end_edge(view, fv, e)) {
      goal = e;
      return true;
    }
    queue.push_back(e);
    return false;
  };

  for (int e = 0; e < m && goal < 0; ++e)
    if (candidate[e] && walk_start_edge(view, fv, e)) visit(e, -1);
  while (goal < 0 && !queue.empty()) {
    int e = queue.front();
    queue.pop_front();
    for (int g : view.out_edges(view.head(e))) {
      if (!candidate[g]) continue;
      if (visit(g, e)) break;
    }
  }
  if (goal < 0) return std::nullopt;

  blocking_walk walk;
  for (int e = goal; e != -1; e = parent[e]) walk.edges.push_back(view.edge_id(e));
  std::reverse(walk.edges.begin(), walk.edges.end());
  int first = view.eindex_at(walk.edges.front());
  int last = goal;
  if (!view.terminal(view.tail(first)))
    walk.start_witness = view.edge_id(worst_positive_out(view, fv, view.tail(first)));
  if (!view.terminal(view.head(last)))
    walk.end_witness = view.edge_id(worst_positive_in(view, fv, view.head(last)));
  return walk;
}

inline bool is_stable_idx(const instance_view& view, const std::vector<std::int64_t>& fv,
                          const std::vector<char>& free_mask) {
  return !find_blocking_walk_idx(view, fv, free_mask).has_value();
}

}  // namespace detail

inline std::optional<blocking_walk> find_blocking_walk(
    const instance& inst, const flow& f, const std::set<std::string>& free_edges = {}) {
  if (!check_feasible(inst, f).ok()) throw std::logic_error("check feasibility first");
  instance_view view(inst);
  return detail::find_blocking_walk_idx(view, view.to_vec(f), view.free_mask(free_edges));
}

// True iff the flow is feasible and admits no blocking walk. Restriction
// annotations play no part here; free edges are exempt from walks only.
inline bool is_stable(const instance& inst, const flow& f,
                      const std::set<std::string>& free_edges = {}) {
  if (!check_feasible(inst, f).ok()) return false;
  instance_view view(inst);
  return detail::is_stable_idx(view, view.to_vec(f), view.free_mask(free_edges));
}

}  // namespace stableflow

// Solvers honoring forced and forbidden bounds.
//
// Forced edges reduce to saturation tests: each completely forced edge uv is
// replaced by a source substitute s->v and a sink substitute u->t that take
// over uv's exact preference positions; uv can carry full flow in some
// stable solution iff both substitutes are saturated in a stable flow of the
// rewritten network, and terminal-incidence makes that one solve decisive.
//
// Forbidden edges are eliminated iteratively: for each forbidden uv, first
// try a unit auxiliary edge sv from a fresh terminal spliced directly above
// uv on v's incoming list (a warm-started solve decides whether it can stay
// empty), then symmetrically an auxiliary ut above uv on u's outgoing list.
// An empty, unsaturated auxiliary edge dominates uv, pinning it to zero in
// every stable flow of the grown network. If neither auxiliary can stay
// empty the instance is infeasible with uv as witness.

#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "stableflow/gale_shapley.hpp"
#include "stableflow/instance.hpp"
#include "stableflow/stability.hpp"
#include "stableflow/transforms.hpp"

namespace stableflow {

struct forced_reduction {
  instance dst;
  std::string source, sink;  // empty when there was nothing to substitute
  // forced edge id -> (source substitute id, sink substitute id)
  std::map<std::string, std::pair<std::string, std::string>> substitutes;
};

// Substitute every completely forced edge. Partially forced edges must be
// split beforehand.
inline forced_reduction build_forced_substitution(const instance& inst) {
  forced_reduction res;
  res.dst = inst;

  std::vector<std::string> forced;
  for (const edge& e : inst.edges) {
    if (e.forced_lower == 0) continue;
    if (e.forced_lower != e.capacity)
      throw std::invalid_argument("forced edge '" + e.id +
                                  "' is not completely forced; split first");
    forced.push_back(e.id);
  }
  if (forced.empty()) return res;

  std::set<std::string> vused;
  for (const vertex& v : res.dst.vertices) vused.insert(v.id);
  std::set<std::string> eused = detail::edge_id_set(res.dst);
  res.source = detail::fresh_id(vused, "__forced_s");
  res.sink = detail::fresh_id(vused, "__forced_t");
  res.dst.vertices.push_back({res.source, true});
  res.dst.vertices.push_back({res.sink, true});

  std::map<std::string, bool> is_terminal;
  for (const vertex& v : inst.vertices) is_terminal[v.id] = v.terminal;

  std::vector<edge> kept;
  for (const edge& e : res.dst.edges) {
    if (e.forced_lower == 0) {
      kept.push_back(e);
      continue;
    }
    edge sv, ut;
    sv.id = detail::fresh_id(eused, "__sv__" + e.id);
    sv.tail = res.source;
    sv.head = e.head;
    sv.capacity = e.capacity;
    ut.id = detail::fresh_id(eused, "__ut__" + e.id);
    ut.tail = e.tail;
    ut.head = res.sink;
    ut.capacity = e.capacity;
    res.substitutes[e.id] = {sv.id, ut.id};
    // The substitutes inherit the forced edge's exact preference positions.
    if (!is_terminal[e.head])
      detail::replace_in_list(res.dst.preferences[e.head].in, e.id, {sv.id});
    if (!is_terminal[e.tail])
      detail::replace_in_list(res.dst.preferences[e.tail].out, e.id, {ut.id});
    kept.push_back(sv);
    kept.push_back(ut);
  }
  res.dst.edges = std::move(kept);
  return res;
}

enum class aux_kind { sv, ut };

struct forbidden_augment {
  instance out;
  std::string aux_edge, aux_terminal;
};

// Add the auxiliary terminal and unit edge for one completely forbidden
// edge. Kind sv targets the head's incoming list, kind ut the tail's
// outgoing list; either splice lands directly above the forbidden edge.
inline forbidden_augment augment_for_forbidden(const instance& inst,
                                               const std::string& forbidden_edge,
                                               aux_kind kind) {
  const edge* target = nullptr;
  for (const edge& e : inst.edges)
    if (e.id == forbidden_edge) target = &e;
  if (!target) throw std::invalid_argument("unknown edge id '" + forbidden_edge + "'");
  if (!target->forbidden_upper || *target->forbidden_upper != 0)
    throw std::invalid_argument("edge '" + forbidden_edge +
                                "' is not completely forbidden; split first");

  forbidden_augment res;
  res.out = inst;
  std::set<std::string> vused;
  std::map<std::string, bool> is_terminal;
  for (const vertex& v : inst.vertices) {
    vused.insert(v.id);
    is_terminal[v.id] = v.terminal;
  }
  std::set<std::string> eused = detail::edge_id_set(inst);

  edge aux;
  aux.capacity = 1;
  std::string anchor_vertex;
  pref_side side;
  if (kind == aux_kind::sv) {
    res.aux_terminal = detail::fresh_id(vused, "__aux_s__" + forbidden_edge);
    aux.id = detail::fresh_id(eused, "__sv__" + forbidden_edge);
    aux.tail = res.aux_terminal;
    aux.head = target->head;
    anchor_vertex = target->head;
    side = pref_side::in;
  } else {
    res.aux_terminal = detail::fresh_id(vused, "__aux_t__" + forbidden_edge);
    aux.id = detail::fresh_id(eused, "__ut__" + forbidden_edge);
    aux.tail = target->tail;
    aux.head = res.aux_terminal;
    anchor_vertex = target->tail;
    side = pref_side::out;
  }
  res.aux_edge = aux.id;
  res.out.vertices.push_back({res.aux_terminal, true});
  res.out.edges.push_back(aux);
  if (!is_terminal[anchor_vertex])
    res.out = insert_rank_before(res.out, anchor_vertex, side, forbidden_edge, aux.id);
  return res;
}

struct aux_record {
  std::string forbidden_edge;  // original edge id the auxiliary was built for
  aux_kind kind;
  std::string aux_edge, aux_terminal;
};

enum class process_order { forward, reverse };

struct restricted_outcome {
  bool feasible = false;
  flow f;               // complete flow on the original edge ids
  std::string witness;  // failing original edge id when infeasible
  std::vector<std::string> p1, p2;  // forbidden edges kept empty via sv / via ut
  std::vector<aux_record> auxiliary;
};

namespace detail {

inline std::map<std::string, std::string> origin_map(const split_map& m) {
  std::map<std::string, std::string> origin;
  for (const auto& [orig, parts] : m.parts) {
    origin[parts.first] = orig;
    origin[parts.second] = orig;
  }
  return origin;
}

inline std::string trace_origin(const std::map<std::string, std::string>& origin,
                                const std::string& id) {
  auto it = origin.find(id);
  return it == origin.end() ? id : it->second;
}

inline bool all_zero(const flow& f, const std::vector<std::string>& ids) {
  for (const std::string& id : ids) {
    auto it = f.find(id);
    if (it != f.end() && it->second != 0) return false;
  }
  return true;
}

inline void audit_outcome(const instance& original, const flow& f) {
  if (!check_feasible(original, f, {true}).ok() || !is_stable(original, f, {}))
    throw std::logic_error("restricted solver output failed its audit");
}

}  // namespace detail

// Eliminate completely forbidden edges one at a time, growing a family of
// auxiliary edges that pin them (and each other) to zero. Forced and free
// annotations are ignored here. The returned partition records which
// auxiliary kind succeeded for each forbidden edge.
inline restricted_outcome solve_forbidden(const instance& inst,
                                          process_order order = process_order::forward) {
  detail::require_valid(inst);
  split_result split = split_forbidden_lower(inst);
  std::map<std::string, std::string> origin = detail::origin_map(split.map);

  std::vector<std::string> pending;
  for (const edge& e : split.out.edges)
    if (e.forbidden_upper) pending.push_back(e.id);
  if (order == process_order::reverse) std::reverse(pending.begin(), pending.end());

  restricted_outcome out;
  instance current = split.out;
  gs_solution state = solve_stable_flow_state(current);

  std::vector<std::string> aux_ids;      // auxiliary edges accepted so far
  std::vector<std::string> pinned;       // forbidden edges already processed
  for (const std::string& uv : pending) {
    bool accepted = false;
    for (aux_kind kind : {aux_kind::sv, aux_kind::ut}) {
      forbidden_augment aug = augment_for_forbidden(current, uv, kind);
      // Source-side auxiliaries resume the previous state; sink-side ones
      // cannot be pre-saturated without unbalancing the tail, so they get a
      // fresh solve. Either way one stable flow decides, because auxiliary
      // edges are terminal-incident.
      gs_solution cand = kind == aux_kind::sv
                             ? solve_on_augmented(aug.out, state, {aug.aux_edge})
                             : solve_stable_flow_state(aug.out);
      std::vector<std::string> must_be_zero = aux_ids;
      must_be_zero.push_back(aug.aux_edge);
      std::vector<std::string> forbidden_zero = pinned;
      forbidden_zero.push_back(uv);
      if (detail::all_zero(cand.f, must_be_zero) && detail::all_zero(cand.f, forbidden_zero)) {
        current = aug.out;
        state = cand;
        aux_ids.push_back(aug.aux_edge);
        pinned.push_back(uv);
        (kind == aux_kind::sv ? out.p1 : out.p2).push_back(detail::trace_origin(origin, uv));
        out.auxiliary.push_back(
            {detail::trace_origin(origin, uv), kind, aug.aux_edge, aug.aux_terminal});
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      out.feasible = false;
      out.witness = detail::trace_origin(origin, uv);
      return out;
    }
  }

  // Restrict the final flow to the split instance's edges, then fold the
  // splits back together. Auxiliary edges all carry zero by construction.
  flow on_split;
  for (const edge& e : split.out.edges) {
    auto it = state.f.find(e.id);
    on_split[e.id] = it == state.f.end() ? 0 : it->second;
  }
  out.f = merge_split_flow(inst, split.map, on_split);
  out.feasible = true;
  // Audit against forbidden bounds only; forced annotations are not this
  // entry point's business.
  instance forbidden_only = inst;
  for (edge& e : forbidden_only.edges) e.forced_lower = 0;
  detail::audit_outcome(forbidden_only, out.f);
  return out;
}

// Forced edges only: normalize, substitute, solve once, and demand every
// substitute be saturated. Forbidden and free annotations are ignored.
inline restricted_outcome solve_forced(const instance& inst) {
  detail::require_valid(inst);
  split_result split = split_forced_lower(inst);
  std::map<std::string, std::string> origin = detail::origin_map(split.map);
  forced_reduction red = build_forced_substitution(split.out);
  gs_solution sol = solve_stable_flow_state(red.dst);

  restricted_outcome out;
  flow on_split;
  for (const edge& e : split.out.edges) {
    if (e.forced_lower > 0) {
      const auto& [sv, ut] = red.substitutes.at(e.id);
      if (sol.f.at(sv) != e.capacity || sol.f.at(ut) != e.capacity) {
        out.feasible = false;
        out.witness = detail::trace_origin(origin, e.id);
        return out;
      }
      on_split[e.id] = sol.f.at(sv);
    } else {
      on_split[e.id] = sol.f.at(e.id);
    }
  }
  out.f = merge_split_flow(inst, split.map, on_split);
  out.feasible = true;
  // Audit against forced bounds only; the caller may have forbidden
  // annotations in play, which this entry point deliberately ignores.
  instance forced_only = inst;
  for (edge& e : forced_only.edges) e.forbidden_upper.reset();
  detail::audit_outcome(forced_only, out.f);
  return out;
}

// Forced and forbidden bounds together: substitute the forced edges, run
// the forbidden elimination on the rewritten network, then demand saturated
// substitutes. Free annotations do not enter stability here.
inline restricted_outcome solve_restricted(const instance& inst,
                                           process_order order = process_order::forward) {
  detail::require_valid(inst);
  split_result sq = split_forced_lower(inst);
  split_result sp = split_forbidden_lower(sq.out);
  std::map<std::string, std::string> origin_q = detail::origin_map(sq.map);
  std::map<std::string, std::string> origin_p = detail::origin_map(sp.map);
  auto to_original = [&](const std::string& id) {
    return detail::trace_origin(origin_q, detail::trace_origin(origin_p, id));
  };

  forced_reduction red = build_forced_substitution(sp.out);
  restricted_outcome inner = solve_forbidden(red.dst, order);

  restricted_outcome out;
  if (!inner.feasible) {
    out.feasible = false;
    out.witness = to_original(inner.witness);
    return out;
  }
  for (const std::string& id : inner.p1) out.p1.push_back(to_original(id));
  for (const std::string& id : inner.p2) out.p2.push_back(to_original(id));
  for (aux_record rec : inner.auxiliary) {
    rec.forbidden_edge = to_original(rec.forbidden_edge);
    out.auxiliary.push_back(rec);
  }

  // The inner flow is a stable flow of the substituted network avoiding all
  // forbidden edges; terminal-invariance makes the saturation check on the
  // substitutes decisive across every stable flow of that network.
  flow on_sp;
  for (const edge& e : sp.out.edges) {
    if (e.forced_lower > 0) {
      const auto& [sv, ut] = red.substitutes.at(e.id);
      if (inner.f.at(sv) != e.capacity || inner.f.at(ut) != e.capacity) {
        out.feasible = false;
        out.witness = to_original(e.id);
        return out;
      }
      on_sp[e.id] = inner.f.at(sv);
    } else {
      on_sp[e.id] = inner.f.at(e.id);
    }
  }
  flow on_sq = merge_split_flow(sq.out, sp.map, on_sp);
  out.f = merge_split_flow(inst, sq.map, on_sq);
  out.feasible = true;
  detail::audit_outcome(inst, out.f);
  return out;
}

}  // namespace stableflow

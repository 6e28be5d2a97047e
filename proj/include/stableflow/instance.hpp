// Data model for preference-annotated flow networks: a directed multigraph
// with terminal vertices, positive integer capacities, per-vertex strict
// preference orders over incident edges, and per-edge restriction
// annotations (forced lower bound, forbidden upper bound, free flag).

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace stableflow {

struct vertex {
  std::string id;
  bool terminal = false;  // exempt from flow conservation
};

struct edge {
  std::string id;
  std::string tail;
  std::string head;
  std::int64_t capacity = 1;
  // Restrictions. forced_lower > 0 demands f(e) >= forced_lower in a
  // solution; an engaged forbidden_upper demands f(e) <= *forbidden_upper.
  // An edge carries at most one of the two. A free edge may carry flow but
  // cannot appear among the edges of a blocking walk.
  std::int64_t forced_lower = 0;
  std::optional<std::int64_t> forbidden_upper;
  bool free = false;
};

// One vertex's strict preference orders, best edge first. Parallel edges are
// unambiguous because entries are edge ids, not endpoint pairs.
struct preference_order {
  std::vector<std::string> in;
  std::vector<std::string> out;
};

struct instance {
  std::vector<vertex> vertices;
  std::vector<edge> edges;
  // Keyed by vertex id; terminals carry no entry (they never refuse offers).
  std::map<std::string, preference_order> preferences;
};

// Integral flow keyed by edge id; missing entries mean zero.
using flow = std::map<std::string, std::int64_t>;

struct violation {
  std::string rule;
  std::string where;
  std::string detail;
};

struct validation_report {
  std::vector<violation> violations;
  bool ok() const { return violations.empty(); }
};

// Restriction annotations collected out of the edge records.
struct restriction_set {
  std::map<std::string, std::int64_t> forced_lower;
  std::map<std::string, std::int64_t> forbidden_upper;
  std::set<std::string> free;
};

inline restriction_set restrictions_of(const instance& inst) {
  restriction_set r;
  for (const edge& e : inst.edges) {
    if (e.forced_lower > 0) r.forced_lower[e.id] = e.forced_lower;
    if (e.forbidden_upper) r.forbidden_upper[e.id] = *e.forbidden_upper;
    if (e.free) r.free.insert(e.id);
  }
  return r;
}

inline std::set<std::string> free_edge_ids(const instance& inst) {
  std::set<std::string> out;
  for (const edge& e : inst.edges)
    if (e.free) out.insert(e.id);
  return out;
}

// Structural and semantic validation. Violations are data, not exceptions;
// everything else in the library assumes a validated instance.
inline validation_report validate(const instance& inst) {
  validation_report rep;
  auto bad = [&rep](std::string rule, std::string where, std::string detail) {
    rep.violations.push_back({std::move(rule), std::move(where), std::move(detail)});
  };

  std::map<std::string, const vertex*> verts;
  for (const vertex& v : inst.vertices) {
    if (!verts.emplace(v.id, &v).second)
      bad("duplicate vertex id", v.id, "vertex id declared more than once");
  }

  std::map<std::string, const edge*> edges;
  for (const edge& e : inst.edges) {
    if (!edges.emplace(e.id, &e).second)
      bad("duplicate edge id", e.id, "edge id declared more than once");
    if (!verts.count(e.tail))
      bad("unknown endpoint", e.id, "tail '" + e.tail + "' is not a declared vertex");
    if (!verts.count(e.head))
      bad("unknown endpoint", e.id, "head '" + e.head + "' is not a declared vertex");
    if (e.capacity <= 0)
      bad("capacity must be positive", e.id, "capacity " + std::to_string(e.capacity));
    if (e.forced_lower < 0)
      bad("negative lower bound", e.id, "forced_lower " + std::to_string(e.forced_lower));
    if (e.forced_lower > e.capacity)
      bad("lower bound exceeds capacity", e.id,
          "forced_lower " + std::to_string(e.forced_lower) + " > capacity " +
              std::to_string(e.capacity));
    if (e.forbidden_upper) {
      if (*e.forbidden_upper < 0)
        bad("negative forbidden bound", e.id,
            "forbidden_upper " + std::to_string(*e.forbidden_upper));
      if (*e.forbidden_upper >= e.capacity)
        bad("forbidden bound not below capacity", e.id,
            "forbidden_upper " + std::to_string(*e.forbidden_upper) +
                " must be smaller than capacity " + std::to_string(e.capacity));
    }
    if (e.forced_lower > 0 && e.forbidden_upper)
      bad("edge both forced and forbidden", e.id,
          "forced_lower and forbidden_upper are mutually exclusive");
  }

  // Incident edge ids per vertex, in declaration order.
  std::map<std::string, std::vector<std::string>> in_of, out_of;
  for (const edge& e : inst.edges) {
    if (verts.count(e.tail)) out_of[e.tail].push_back(e.id);
    if (verts.count(e.head)) in_of[e.head].push_back(e.id);
  }

  auto check_order = [&](const std::string& vid, const char* side,
                         const std::vector<std::string>& order,
                         std::vector<std::string> incident) {
    std::set<std::string> seen;
    std::vector<std::string> sorted_incident = incident;
    std::sort(sorted_incident.begin(), sorted_incident.end());
    for (const std::string& eid : order) {
      if (!seen.insert(eid).second)
        bad("duplicate in preference order", vid,
            std::string(side) + " order lists '" + eid + "' twice");
      if (!std::binary_search(sorted_incident.begin(), sorted_incident.end(), eid))
        bad("unknown edge in preference order", vid,
            std::string(side) + " order lists '" + eid + "' which is not an incident " +
                side + " edge");
    }
    for (const std::string& eid : incident) {
      if (!seen.count(eid))
        bad("incomplete preference order", vid,
            std::string(side) + " order is missing incident edge '" + eid + "'");
    }
  };

  for (const auto& [vid, order] : inst.preferences) {
    auto it = verts.find(vid);
    if (it == verts.end()) {
      bad("preference order for unknown vertex", vid, "vertex is not declared");
      continue;
    }
    if (it->second->terminal) {
      bad("preference order on terminal", vid, "terminal vertices carry no preference orders");
      continue;
    }
    check_order(vid, "in", order.in, in_of[vid]);
    check_order(vid, "out", order.out, out_of[vid]);
  }
  for (const vertex& v : inst.vertices) {
    if (v.terminal || inst.preferences.count(v.id)) continue;
    // Absent entry is fine only when the vertex has no incident edges.
    if (!in_of[v.id].empty() || !out_of[v.id].empty())
      bad("incomplete preference order", v.id,
          "non-terminal vertex with incident edges has no preference orders");
  }
  return rep;
}

// Indexed read-only view of a validated instance. Edge and vertex indices
// follow declaration order, which is the canonical deterministic order used
// by every algorithm in the library.
class instance_view {
 public:
  explicit instance_view(const instance& inst) : inst_(&inst) {
    const auto& vs = inst.vertices;
    const auto& es = inst.edges;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (!vindex_.emplace(vs[i].id, static_cast<int>(i)).second)
        throw std::invalid_argument("duplicate vertex id '" + vs[i].id + "'");
    }
    terminal_.resize(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) terminal_[i] = vs[i].terminal;

    tail_.resize(es.size());
    head_.resize(es.size());
    cap_.resize(es.size());
    for (std::size_t i = 0; i < es.size(); ++i) {
      if (!eindex_.emplace(es[i].id, static_cast<int>(i)).second)
        throw std::invalid_argument("duplicate edge id '" + es[i].id + "'");
      tail_[i] = vindex_at(es[i].tail);
      head_[i] = vindex_at(es[i].head);
      cap_[i] = es[i].capacity;
    }

    in_all_.resize(vs.size());
    out_all_.resize(vs.size());
    for (std::size_t i = 0; i < es.size(); ++i) {
      out_all_[tail_[i]].push_back(static_cast<int>(i));
      in_all_[head_[i]].push_back(static_cast<int>(i));
    }

    in_pref_.resize(vs.size());
    out_pref_.resize(vs.size());
    in_rank_.assign(es.size(), -1);
    out_rank_.assign(es.size(), -1);
    for (std::size_t v = 0; v < vs.size(); ++v) {
      if (terminal_[v]) continue;
      auto it = inst.preferences.find(vs[v].id);
      const preference_order empty;
      const preference_order& po = it == inst.preferences.end() ? empty : it->second;
      for (const std::string& eid : po.in) {
        int e = eindex_at(eid);
        in_rank_[e] = static_cast<int>(in_pref_[v].size());
        in_pref_[v].push_back(e);
      }
      for (const std::string& eid : po.out) {
        int e = eindex_at(eid);
        out_rank_[e] = static_cast<int>(out_pref_[v].size());
        out_pref_[v].push_back(e);
      }
    }
  }

  const instance& inst() const { return *inst_; }
  int vertex_count() const { return static_cast<int>(terminal_.size()); }
  int edge_count() const { return static_cast<int>(cap_.size()); }

  int vindex_at(const std::string& id) const {
    auto it = vindex_.find(id);
    if (it == vindex_.end()) throw std::invalid_argument("unknown vertex id '" + id + "'");
    return it->second;
  }
  int eindex_at(const std::string& id) const {
    auto it = eindex_.find(id);
    if (it == eindex_.end()) throw std::invalid_argument("unknown edge id '" + id + "'");
    return it->second;
  }

  const std::string& vertex_id(int v) const { return inst_->vertices[v].id; }
  const std::string& edge_id(int e) const { return inst_->edges[e].id; }
  bool terminal(int v) const { return terminal_[v]; }
  int tail(int e) const { return tail_[e]; }
  int head(int e) const { return head_[e]; }
  std::int64_t capacity(int e) const { return cap_[e]; }
  std::int64_t total_capacity() const {
    std::int64_t c = 0;
    for (std::int64_t x : cap_) c += x;
    return c;
  }

  // Preference positions; 0 is best, -1 marks "no rank" (terminal endpoint).
  int in_rank(int e) const { return in_rank_[e]; }
  int out_rank(int e) const { return out_rank_[e]; }
  const std::vector<int>& in_pref(int v) const { return in_pref_[v]; }
  const std::vector<int>& out_pref(int v) const { return out_pref_[v]; }
  const std::vector<int>& in_edges(int v) const { return in_all_[v]; }
  const std::vector<int>& out_edges(int v) const { return out_all_[v]; }

  // Flow conversion. Unknown edge ids in a flow map are an error; missing
  // entries default to zero.
  std::vector<std::int64_t> to_vec(const flow& f) const {
    std::vector<std::int64_t> out(cap_.size(), 0);
    for (const auto& [eid, val] : f) out[eindex_at(eid)] = val;
    return out;
  }
  flow to_flow(const std::vector<std::int64_t>& vec) const {
    flow f;
    for (std::size_t i = 0; i < vec.size(); ++i) f[inst_->edges[i].id] = vec[i];
    return f;
  }
  std::vector<char> free_mask(const std::set<std::string>& free_edges) const {
    std::vector<char> mask(cap_.size(), 0);
    for (const std::string& eid : free_edges) mask[eindex_at(eid)] = 1;
    return mask;
  }

 private:
  const instance* inst_;
  std::map<std::string, int> vindex_, eindex_;
  std::vector<char> terminal_;
  std::vector<int> tail_, head_;
  std::vector<std::int64_t> cap_;
  std::vector<std::vector<int>> in_all_, out_all_, in_pref_, out_pref_;
  std::vector<int> in_rank_, out_rank_;
};

// Total value: net outflow summed over terminals that are net senders.
inline std::int64_t flow_value(const instance& inst, const flow& f) {
  instance_view view(inst);
  std::vector<std::int64_t> fv = view.to_vec(f);
  std::int64_t total = 0;
  for (int v = 0; v < view.vertex_count(); ++v) {
    if (!view.terminal(v)) continue;
    std::int64_t balance = 0;
    for (int e : view.out_edges(v)) balance += fv[e];
    for (int e : view.in_edges(v)) balance -= fv[e];
    if (balance > 0) total += balance;
  }
  return total;
}

// Values of every terminal-incident edge, keyed (and therefore sorted) by
// edge id. This is the quantity that is invariant across stable flows when
// no free edges are involved.
inline std::map<std::string, std::int64_t> terminal_profile(const instance& inst,
                                                            const flow& f) {
  instance_view view(inst);
  std::vector<std::int64_t> fv = view.to_vec(f);
  std::map<std::string, std::int64_t> profile;
  for (int e = 0; e < view.edge_count(); ++e) {
    if (view.terminal(view.tail(e)) || view.terminal(view.head(e)))
      profile[view.edge_id(e)] = fv[e];
  }
  return profile;
}

// Complete flow map over all edges of the instance, zeros included.
inline flow complete_flow(const instance& inst, const flow& f) {
  instance_view view(inst);
  return view.to_flow(view.to_vec(f));
}

}  // namespace stableflow

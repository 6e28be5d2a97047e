// JSON serialization for instances, flows, matchings, and solver results.
// Objects use nlohmann::json's default map-backed representation, so keys
// are emitted sorted and output is deterministic. Parsers throw
// std::invalid_argument with a field path on malformed input.

#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "stableflow/instance.hpp"
#include "stableflow/matching.hpp"
#include "stableflow/restricted.hpp"
#include "stableflow/stability.hpp"

namespace stableflow {

using json = nlohmann::json;

namespace detail {

[[noreturn]] inline void bad_field(const std::string& path, const std::string& why) {
  throw std::invalid_argument("bad input at " + path + ": " + why);
}

inline const json& expect(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) bad_field(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad_field(path + "." + key, "missing required field");
  return *it;
}

inline std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) bad_field(path, "expected a string");
  return j.get<std::string>();
}

inline std::int64_t as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) bad_field(path, "expected an integer");
  return j.get<std::int64_t>();
}

inline bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) bad_field(path, "expected a boolean");
  return j.get<bool>();
}

}  // namespace detail

inline json instance_to_json(const instance& inst) {
  json jverts = json::array();
  for (const vertex& v : inst.vertices) jverts.push_back({{"id", v.id}, {"terminal", v.terminal}});
  json jedges = json::array();
  for (const edge& e : inst.edges) {
    json je = {{"id", e.id},
               {"tail", e.tail},
               {"head", e.head},
               {"capacity", e.capacity},
               {"forced_lower", e.forced_lower},
               {"free", e.free}};
    je["forbidden_upper"] = e.forbidden_upper ? json(*e.forbidden_upper) : json(nullptr);
    jedges.push_back(std::move(je));
  }
  json jprefs = json::object();
  for (const auto& [vid, po] : inst.preferences)
    jprefs[vid] = {{"in", po.in}, {"out", po.out}};
  return {{"vertices", jverts}, {"edges", jedges}, {"preferences", jprefs}};
}

inline instance instance_from_json(const json& j) {
  instance inst;
  const json& jverts = detail::expect(j, "vertices", "instance");
  if (!jverts.is_array()) detail::bad_field("instance.vertices", "expected an array");
  for (std::size_t i = 0; i < jverts.size(); ++i) {
    const json& jv = jverts[i];
    std::string path = "instance.vertices[" + std::to_string(i) + "]";
    vertex v;
    v.id = detail::as_string(detail::expect(jv, "id", path), path + ".id");
    if (jv.contains("terminal")) v.terminal = detail::as_bool(jv["terminal"], path + ".terminal");
    inst.vertices.push_back(std::move(v));
  }
  const json& jedges = detail::expect(j, "edges", "instance");
  if (!jedges.is_array()) detail::bad_field("instance.edges", "expected an array");
  for (std::size_t i = 0; i < jedges.size(); ++i) {
    const json& je = jedges[i];
    std::string path = "instance.edges[" + std::to_string(i) + "]";
    edge e;
    e.id = detail::as_string(detail::expect(je, "id", path), path + ".id");
    e.tail = detail::as_string(detail::expect(je, "tail", path), path + ".tail");
    e.head = detail::as_string(detail::expect(je, "head", path), path + ".head");
    if (je.contains("capacity")) e.capacity = detail::as_int(je["capacity"], path + ".capacity");
    if (je.contains("forced_lower"))
      e.forced_lower = detail::as_int(je["forced_lower"], path + ".forced_lower");
    if (je.contains("forbidden_upper") && !je["forbidden_upper"].is_null())
      e.forbidden_upper = detail::as_int(je["forbidden_upper"], path + ".forbidden_upper");
    if (je.contains("free")) e.free = detail::as_bool(je["free"], path + ".free");
    inst.edges.push_back(std::move(e));
  }
  if (j.contains("preferences")) {
    const json& jprefs = j["preferences"];
    if (!jprefs.is_object()) detail::bad_field("instance.preferences", "expected an object");
    for (const auto& [vid, jp] : jprefs.items()) {
      std::string path = "instance.preferences." + vid;
      preference_order po;
      auto read_list = [&](const char* key, std::vector<std::string>& out) {
        if (!jp.contains(key)) return;
        const json& jl = jp[key];
        if (!jl.is_array()) detail::bad_field(path + "." + key, "expected an array");
        for (std::size_t i = 0; i < jl.size(); ++i)
          out.push_back(
              detail::as_string(jl[i], path + "." + key + "[" + std::to_string(i) + "]"));
      };
      read_list("in", po.in);
      read_list("out", po.out);
      inst.preferences[vid] = std::move(po);
    }
  }
  return inst;
}

inline json flow_to_json(const flow& f) {
  json out = json::object();
  for (const auto& [eid, val] : f) out[eid] = val;
  return out;
}

// Accepts either a bare {edge: value} object or a wrapper {"flow": {...}}.
inline flow flow_from_json(const json& j) {
  const json* body = &j;
  if (j.is_object() && j.contains("flow")) body = &j["flow"];
  if (!body->is_object()) detail::bad_field("flow", "expected an object of edge values");
  flow f;
  for (const auto& [eid, val] : body->items()) f[eid] = detail::as_int(val, "flow." + eid);
  return f;
}

inline json report_to_json(const validation_report& rep) {
  json jv = json::array();
  for (const violation& v : rep.violations)
    jv.push_back({{"rule", v.rule}, {"where", v.where}, {"detail", v.detail}});
  return {{"ok", rep.ok()}, {"violations", jv}};
}

inline json walk_to_json(const blocking_walk& w) {
  json out;
  out["edges"] = w.edges;
  out["start_witness"] = w.start_witness ? json(*w.start_witness) : json(nullptr);
  out["end_witness"] = w.end_witness ? json(*w.end_witness) : json(nullptr);
  return out;
}

inline json outcome_to_json(const restricted_outcome& o) {
  json out;
  out["feasible"] = o.feasible;
  if (o.feasible)
    out["flow"] = flow_to_json(o.f);
  else
    out["witness"] = o.witness;
  return out;
}

inline json matching_instance_to_json(const matching_instance& mi) {
  json jpairs = json::array();
  for (const matching_pair& p : mi.pairs)
    jpairs.push_back({{"man", p.man},
                      {"woman", p.woman},
                      {"man_rank", p.man_rank},
                      {"woman_rank", p.woman_rank},
                      {"forced", p.forced},
                      {"forbidden", p.forbidden},
                      {"free", p.free}});
  json jties = json::array();
  for (const matching_tie& t : mi.ties)
    jties.push_back({{"man", t.man}, {"women", {t.women[0], t.women[1]}}});
  return {{"men", mi.men}, {"women", mi.women}, {"pairs", jpairs}, {"ties", jties}};
}

inline matching_instance matching_instance_from_json(const json& j) {
  matching_instance mi;
  auto read_people = [&](const char* key, std::vector<std::string>& out) {
    const json& jl = detail::expect(j, key, "matching");
    if (!jl.is_array()) detail::bad_field(std::string("matching.") + key, "expected an array");
    for (std::size_t i = 0; i < jl.size(); ++i)
      out.push_back(
          detail::as_string(jl[i], std::string("matching.") + key + "[" + std::to_string(i) + "]"));
  };
  read_people("men", mi.men);
  read_people("women", mi.women);
  const json& jpairs = detail::expect(j, "pairs", "matching");
  if (!jpairs.is_array()) detail::bad_field("matching.pairs", "expected an array");
  for (std::size_t i = 0; i < jpairs.size(); ++i) {
    const json& jp = jpairs[i];
    std::string path = "matching.pairs[" + std::to_string(i) + "]";
    matching_pair p;
    p.man = detail::as_string(detail::expect(jp, "man", path), path + ".man");
    p.woman = detail::as_string(detail::expect(jp, "woman", path), path + ".woman");
    p.man_rank = static_cast<int>(
        detail::as_int(detail::expect(jp, "man_rank", path), path + ".man_rank"));
    p.woman_rank = static_cast<int>(
        detail::as_int(detail::expect(jp, "woman_rank", path), path + ".woman_rank"));
    if (jp.contains("forced")) p.forced = detail::as_bool(jp["forced"], path + ".forced");
    if (jp.contains("forbidden"))
      p.forbidden = detail::as_bool(jp["forbidden"], path + ".forbidden");
    if (jp.contains("free")) p.free = detail::as_bool(jp["free"], path + ".free");
    mi.pairs.push_back(std::move(p));
  }
  if (j.contains("ties")) {
    const json& jties = j["ties"];
    if (!jties.is_array()) detail::bad_field("matching.ties", "expected an array");
    for (std::size_t i = 0; i < jties.size(); ++i) {
      const json& jt = jties[i];
      std::string path = "matching.ties[" + std::to_string(i) + "]";
      matching_tie t;
      t.man = detail::as_string(detail::expect(jt, "man", path), path + ".man");
      const json& jw = detail::expect(jt, "women", path);
      if (!jw.is_array() || jw.size() != 2)
        detail::bad_field(path + ".women", "expected an array of two names");
      t.women[0] = detail::as_string(jw[0], path + ".women[0]");
      t.women[1] = detail::as_string(jw[1], path + ".women[1]");
      mi.ties.push_back(std::move(t));
    }
  }
  return mi;
}

inline json matching_to_json(const matching& m) {
  json out = json::array();
  for (const auto& [man, woman] : m) out.push_back({man, woman});
  return out;
}

inline matching matching_from_json(const json& j) {
  const json* body = &j;
  if (j.is_object() && j.contains("matching")) body = &j["matching"];
  if (!body->is_array()) detail::bad_field("matching", "expected an array of [man, woman] pairs");
  matching m;
  for (std::size_t i = 0; i < body->size(); ++i) {
    const json& jp = (*body)[i];
    std::string path = "matching[" + std::to_string(i) + "]";
    if (!jp.is_array() || jp.size() != 2) detail::bad_field(path, "expected a [man, woman] pair");
    m.insert({detail::as_string(jp[0], path + "[0]"), detail::as_string(jp[1], path + "[1]")});
  }
  return m;
}

// Human-oriented description of every wire format, served by `--schema`.
inline json schema_json() {
  return {
      {"instance",
       {{"vertices", "array of {id: string, terminal?: bool}"},
        {"edges",
         "array of {id, tail, head: string, capacity?: int >= 1 (default 1), "
         "forced_lower?: int >= 0 (default 0), forbidden_upper?: int|null (default null), "
         "free?: bool (default false)}"},
        {"preferences",
         "object keyed by non-terminal vertex id; each value {in: [edge ids best first], "
         "out: [edge ids best first]}; lists must cover exactly the incident edges"}}},
      {"flow", "object {edge id: int}, or wrapper {flow: {...}}; missing edges are zero"},
      {"matching_instance",
       {{"men", "array of names"},
        {"women", "array of names"},
        {"pairs",
         "array of {man, woman: string, man_rank, woman_rank: int (1 is best), "
         "forced?, forbidden?, free?: bool}"},
        {"ties",
         "array of {man: string, women: [kept, routed]}; the tied pairs share the man's "
         "bottom rank"}}},
      {"matching", "array of [man, woman] pairs, or wrapper {matching: [...]}"}};
}

}  // namespace stableflow

// Seeded random instance generation. All randomness goes through
// mt19937_64 with hand-rolled index picks and shuffles, so a given seed
// yields byte-identical output on every platform and standard library.

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "stableflow/instance.hpp"
#include "stableflow/matching.hpp"

namespace stableflow {

namespace detail {

inline std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

inline bool chance(std::mt19937_64& rng, double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return rng() % 1'000'000'000 < static_cast<std::uint64_t>(p * 1e9);
}

template <typename T>
void shuffle(std::mt19937_64& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[pick(rng, i)]);
}

}  // namespace detail

struct instance_gen_params {
  int vertices = 8;
  int edges = 14;
  std::int64_t cap_min = 1;
  std::int64_t cap_max = 3;
  double terminal_fraction = 0.25;
  double forced_density = 0.0;
  double forbidden_density = 0.0;
  double free_density = 0.0;
  std::uint64_t seed = 1;
};

inline instance random_instance(const instance_gen_params& p) {
  if (p.vertices < 2) throw std::invalid_argument("need at least two vertices");
  if (p.cap_min < 1 || p.cap_max < p.cap_min) throw std::invalid_argument("bad capacity range");
  std::mt19937_64 rng(p.seed);
  instance inst;

  int terminals = static_cast<int>(p.terminal_fraction * p.vertices + 0.5);
  terminals = std::clamp(terminals, 1, p.vertices);
  std::vector<int> order(p.vertices);
  for (int i = 0; i < p.vertices; ++i) order[i] = i;
  detail::shuffle(rng, order);
  std::vector<bool> is_terminal(p.vertices, false);
  for (int i = 0; i < terminals; ++i) is_terminal[order[i]] = true;
  for (int i = 0; i < p.vertices; ++i)
    inst.vertices.push_back({"v" + std::to_string(i), is_terminal[i]});

  for (int i = 0; i < p.edges; ++i) {
    edge e;
    e.id = "e" + std::to_string(i);
    std::size_t tail = detail::pick(rng, p.vertices);
    std::size_t head = detail::pick(rng, p.vertices - 1);
    if (head >= tail) ++head;  // no self-loops
    e.tail = inst.vertices[tail].id;
    e.head = inst.vertices[head].id;
    e.capacity = p.cap_min + static_cast<std::int64_t>(detail::pick(
                                 rng, static_cast<std::size_t>(p.cap_max - p.cap_min + 1)));
    if (detail::chance(rng, p.forced_density))
      e.forced_lower = 1 + static_cast<std::int64_t>(
                               detail::pick(rng, static_cast<std::size_t>(e.capacity)));
    else if (detail::chance(rng, p.forbidden_density))
      e.forbidden_upper = static_cast<std::int64_t>(
          detail::pick(rng, static_cast<std::size_t>(e.capacity)));
    if (detail::chance(rng, p.free_density)) e.free = true;
    inst.edges.push_back(e);
  }

  for (const vertex& v : inst.vertices) {
    if (v.terminal) continue;
    preference_order pref;
    for (const edge& e : inst.edges) {
      if (e.head == v.id) pref.in.push_back(e.id);
      if (e.tail == v.id) pref.out.push_back(e.id);
    }
    detail::shuffle(rng, pref.in);
    detail::shuffle(rng, pref.out);
    if (!pref.in.empty() || !pref.out.empty()) inst.preferences[v.id] = pref;
  }

  validation_report rep = validate(inst);
  if (!rep.ok())
    throw std::logic_error("generator produced an invalid instance: " +
                           rep.violations.front().rule);
  return inst;
}

struct matching_gen_params {
  int men = 4;
  int women = 4;
  double density = 0.6;
  int ties = 0;
  double forced_density = 0.0;
  double forbidden_density = 0.0;
  double free_density = 0.0;
  std::uint64_t seed = 1;
};

inline matching_instance random_matching_instance(const matching_gen_params& p) {
  if (p.men < 1 || p.women < 1) throw std::invalid_argument("need at least one man and woman");
  std::mt19937_64 rng(p.seed);
  matching_instance mi;
  for (int i = 0; i < p.men; ++i) mi.men.push_back("m" + std::to_string(i));
  for (int i = 0; i < p.women; ++i) mi.women.push_back("w" + std::to_string(i));

  for (const std::string& man : mi.men)
    for (const std::string& woman : mi.women)
      if (detail::chance(rng, p.density)) {
        matching_pair pr;
        pr.man = man;
        pr.woman = woman;
        if (detail::chance(rng, p.forced_density))
          pr.forced = true;
        else if (detail::chance(rng, p.forbidden_density))
          pr.forbidden = true;
        if (detail::chance(rng, p.free_density)) pr.free = true;
        mi.pairs.push_back(pr);
      }

  // Rank each side by shuffling the incident pair indices.
  auto assign_ranks = [&](const std::vector<std::string>& people, bool man_side) {
    for (const std::string& person : people) {
      std::vector<std::size_t> incident;
      for (std::size_t i = 0; i < mi.pairs.size(); ++i)
        if ((man_side ? mi.pairs[i].man : mi.pairs[i].woman) == person) incident.push_back(i);
      detail::shuffle(rng, incident);
      for (std::size_t r = 0; r < incident.size(); ++r) {
        if (man_side)
          mi.pairs[incident[r]].man_rank = static_cast<int>(r + 1);
        else
          mi.pairs[incident[r]].woman_rank = static_cast<int>(r + 1);
      }
    }
  };
  assign_ranks(mi.men, true);
  assign_ranks(mi.women, false);

  // Tie the two bottom choices of `ties` distinct men of degree >= 2.
  int remaining = p.ties;
  for (const std::string& man : mi.men) {
    if (remaining == 0) break;
    std::vector<std::size_t> incident;
    for (std::size_t i = 0; i < mi.pairs.size(); ++i)
      if (mi.pairs[i].man == man) incident.push_back(i);
    if (incident.size() < 2) continue;
    int k = static_cast<int>(incident.size());
    std::size_t kept = 0, routed = 0;
    for (std::size_t i : incident) {
      if (mi.pairs[i].man_rank == k - 1) kept = i;
      if (mi.pairs[i].man_rank == k) routed = i;
    }
    mi.pairs[routed].man_rank = k - 1;
    mi.ties.push_back({man, {mi.pairs[kept].woman, mi.pairs[routed].woman}});
    --remaining;
  }
  if (remaining > 0) throw std::invalid_argument("not enough men of degree two for ties");

  validation_report rep = validate_matching(mi);
  if (!rep.ok())
    throw std::logic_error("generator produced an invalid matching instance: " +
                           rep.violations.front().rule);
  return mi;
}

}  // namespace stableflow

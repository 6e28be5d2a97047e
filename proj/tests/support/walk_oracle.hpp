// Test-side reference for the blocking-walk definition, kept deliberately
// independent of the library's checker: conditions are transcribed from the
// definition as reachable-set iteration, not BFS with parent links. Used to
// cross-check verdicts and to validate certificates the checker emits.

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stableflow/instance.hpp"
#include "stableflow/stability.hpp"

namespace testsupport {

using stableflow::blocking_walk;
using stableflow::flow;
using stableflow::instance;
using stableflow::instance_view;

// May edge e open a blocking walk? Its tail is a terminal, or the tail
// carries positive flow on some strictly worse outgoing edge. The
// allow_free_witness flag selects whether a free edge may serve as that
// worse edge; the library answers "yes".
inline bool literal_start(const instance_view& view, const std::vector<std::int64_t>& fv,
                          const std::vector<char>& free_mask, int e, bool allow_free_witness) {
  int v = view.tail(e);
  if (view.terminal(v)) return true;
  for (int other : view.out_pref(v)) {
    if (fv[other] <= 0) continue;
    if (!allow_free_witness && free_mask[other]) continue;
    if (view.out_rank(e) < view.out_rank(other)) return true;
  }
  return false;
}

inline bool literal_end(const instance_view& view, const std::vector<std::int64_t>& fv,
                        const std::vector<char>& free_mask, int e, bool allow_free_witness) {
  int v = view.head(e);
  if (view.terminal(v)) return true;
  for (int other : view.in_pref(v)) {
    if (fv[other] <= 0) continue;
    if (!allow_free_witness && free_mask[other]) continue;
    if (view.in_rank(e) < view.in_rank(other)) return true;
  }
  return false;
}

// Does any blocking walk exist? Walk edges must be unsaturated and not
// free. R_1 holds the edges that can open a walk; each round extends by
// head-to-tail adjacency. Walks never need more than 2m edges, so 2m
// rounds reach a fixpoint.
inline bool oracle_has_blocking_walk(const instance& inst, const flow& f,
                                     const std::set<std::string>& free_edges,
                                     bool allow_free_witness = true) {
  instance_view view(inst);
  std::vector<std::int64_t> fv = view.to_vec(f);
  std::vector<char> mask = view.free_mask(free_edges);
  int m = view.edge_count();

  auto candidate = [&](int e) { return fv[e] < view.capacity(e) && !mask[e]; };

  std::vector<char> reached(m, 0);
  for (int e = 0; e < m; ++e)
    if (candidate(e) && literal_start(view, fv, mask, e, allow_free_witness)) reached[e] = 1;
  for (int round = 0; round < 2 * m; ++round) {
    bool grew = false;
    for (int e = 0; e < m; ++e) {
      if (!reached[e]) continue;
      for (int next : view.out_edges(view.head(e))) {
        if (candidate(next) && !reached[next]) {
          reached[next] = 1;
          grew = true;
        }
      }
    }
    if (!grew) break;
  }
  for (int e = 0; e < m; ++e)
    if (reached[e] && literal_end(view, fv, mask, e, allow_free_witness)) return true;
  return false;
}

// Validates a concrete certificate against the definition: the chain must
// link up, every edge must be an admissible walk edge, and the endpoint
// witnesses must say exactly what they claim (absent witness = terminal).
inline bool oracle_walk_valid(const instance& inst, const flow& f,
                              const std::set<std::string>& free_edges, const blocking_walk& w) {
  if (w.edges.empty()) return false;
  instance_view view(inst);
  std::vector<std::int64_t> fv = view.to_vec(f);
  std::vector<char> mask = view.free_mask(free_edges);

  std::vector<int> chain;
  for (const std::string& eid : w.edges) chain.push_back(view.eindex_at(eid));
  for (int e : chain)
    if (fv[e] >= view.capacity(e) || mask[e]) return false;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (view.head(chain[i]) != view.tail(chain[i + 1])) return false;

  int first = chain.front(), last = chain.back();
  if (w.start_witness) {
    int e = view.eindex_at(*w.start_witness);
    if (view.tail(e) != view.tail(first)) return false;
    if (fv[e] <= 0) return false;
    if (view.out_rank(first) >= view.out_rank(e)) return false;
  } else if (!view.terminal(view.tail(first))) {
    return false;
  }
  if (w.end_witness) {
    int e = view.eindex_at(*w.end_witness);
    if (view.head(e) != view.head(last)) return false;
    if (fv[e] <= 0) return false;
    if (view.in_rank(last) >= view.in_rank(e)) return false;
  } else if (!view.terminal(view.head(last))) {
    return false;
  }
  return true;
}

// Product-space feasibility counter with no pruning at all, for very small
// instances: literally try every assignment and test balance.
inline std::uint64_t oracle_count_feasible_product(const instance& inst) {
  instance_view view(inst);
  int m = view.edge_count();
  std::vector<std::int64_t> fv(m, 0);
  std::uint64_t count = 0;
  auto balanced = [&]() {
    for (int v = 0; v < view.vertex_count(); ++v) {
      if (view.terminal(v)) continue;
      std::int64_t in = 0, out = 0;
      for (int e : view.in_edges(v)) in += fv[e];
      for (int e : view.out_edges(v)) out += fv[e];
      if (in != out) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, int e) -> void {
    if (e == m) {
      if (balanced()) ++count;
      return;
    }
    for (fv[e] = 0; fv[e] <= view.capacity(e); ++fv[e]) self(self, e + 1);
    fv[e] = 0;
  };
  rec(rec, 0);
  return count;
}

}  // namespace testsupport

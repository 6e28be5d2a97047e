// Exhaustive reference implementations for desk-scale instances: integral
// flow enumeration with interval pruning, stable-flow filtering, optimal
// stable value under a free set, terminal-profile invariance checking, and
// weakly stable matching enumeration. Budgets abort loudly; an answer is
// never silently truncated.

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stableflow/instance.hpp"
#include "stableflow/matching.hpp"
#include "stableflow/stability.hpp"

namespace stableflow {

struct enumeration_budget {
  std::size_t max_edges = 16;
  std::int64_t max_capacity = 8;
  std::uint64_t max_states = 50'000'000;
  double time_limit_seconds = 120.0;
};

struct budget_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

class budget_meter {
 public:
  explicit budget_meter(const enumeration_budget& b)
      : budget_(b), deadline_(std::chrono::steady_clock::now() +
                              std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                  std::chrono::duration<double>(b.time_limit_seconds))) {}

  void tick() {
    if (++states_ > budget_.max_states)
      throw budget_exceeded("enumeration state budget exceeded");
    if ((states_ & 1023) == 0 && std::chrono::steady_clock::now() > deadline_)
      throw budget_exceeded("enumeration time limit exceeded");
  }

 private:
  const enumeration_budget& budget_;
  std::uint64_t states_ = 0;
  std::chrono::steady_clock::time_point deadline_;
};

inline void check_enumerable(const instance_view& view, const enumeration_budget& b) {
  if (static_cast<std::size_t>(view.edge_count()) > b.max_edges)
    throw budget_exceeded("instance exceeds enumeration budget: too many edges");
  for (int e = 0; e < view.edge_count(); ++e)
    if (view.capacity(e) > b.max_capacity)
      throw budget_exceeded("instance exceeds enumeration budget: capacity too large");
}

// DFS over edge values in canonical order. Partial assignments are pruned
// with per-vertex balance intervals: a non-terminal dies as soon as its
// assigned inflow cannot be matched by assigned outflow plus what the
// still-unassigned edges could contribute, or vice versa.
class flow_enumerator {
 public:
  flow_enumerator(const instance_view& view, const enumeration_budget& b,
                  const std::function<void(const std::vector<std::int64_t>&)>& emit)
      : view_(view), meter_(b), emit_(emit) {
    check_enumerable(view, b);
    int n = view.vertex_count();
    in_assigned_.assign(n, 0);
    out_assigned_.assign(n, 0);
    in_capleft_.assign(n, 0);
    out_capleft_.assign(n, 0);
    for (int e = 0; e < view.edge_count(); ++e) {
      out_capleft_[view.tail(e)] += view.capacity(e);
      in_capleft_[view.head(e)] += view.capacity(e);
    }
    values_.assign(view.edge_count(), 0);
  }

  void run() { recurse(0); }

 private:
  bool dead(int v) const {
    if (view_.terminal(v)) return false;
    return in_assigned_[v] > out_assigned_[v] + out_capleft_[v] ||
           out_assigned_[v] > in_assigned_[v] + in_capleft_[v];
  }

  void recurse(int e) {
    if (e == view_.edge_count()) {
      emit_(values_);
      return;
    }
    int t = view_.tail(e), h = view_.head(e);
    out_capleft_[t] -= view_.capacity(e);
    in_capleft_[h] -= view_.capacity(e);
    for (std::int64_t val = 0; val <= view_.capacity(e); ++val) {
      meter_.tick();
      values_[e] = val;
      out_assigned_[t] += val;
      in_assigned_[h] += val;
      if (!dead(t) && !dead(h)) recurse(e + 1);
      out_assigned_[t] -= val;
      in_assigned_[h] -= val;
    }
    values_[e] = 0;
    out_capleft_[t] += view_.capacity(e);
    in_capleft_[h] += view_.capacity(e);
  }

  const instance_view& view_;
  budget_meter meter_;
  const std::function<void(const std::vector<std::int64_t>&)>& emit_;
  std::vector<std::int64_t> values_, in_assigned_, out_assigned_, in_capleft_, out_capleft_;
};

inline void for_each_feasible_idx(const instance_view& view, const enumeration_budget& b,
                                  const std::function<void(const std::vector<std::int64_t>&)>& fn) {
  flow_enumerator(view, b, fn).run();
}

inline std::int64_t flow_value_idx(const instance_view& view,
                                   const std::vector<std::int64_t>& fv) {
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

}  // namespace detail

inline void for_each_feasible_flow(const instance& inst, const enumeration_budget& budget,
                                   const std::function<void(const flow&)>& fn) {
  instance_view view(inst);
  detail::for_each_feasible_idx(view, budget,
                                [&](const std::vector<std::int64_t>& fv) { fn(view.to_flow(fv)); });
}

inline std::vector<flow> enumerate_feasible_flows(const instance& inst,
                                                  const enumeration_budget& budget) {
  std::vector<flow> out;
  for_each_feasible_flow(inst, budget, [&](const flow& f) { out.push_back(f); });
  return out;
}

inline std::uint64_t count_feasible_flows(const instance& inst,
                                          const enumeration_budget& budget) {
  std::uint64_t n = 0;
  instance_view view(inst);
  detail::for_each_feasible_idx(view, budget, [&](const std::vector<std::int64_t>&) { ++n; });
  return n;
}

inline std::vector<flow> enumerate_stable_flows(const instance& inst,
                                                const std::set<std::string>& free_edges,
                                                const enumeration_budget& budget) {
  instance_view view(inst);
  std::vector<char> mask = view.free_mask(free_edges);
  std::vector<flow> out;
  detail::for_each_feasible_idx(view, budget, [&](const std::vector<std::int64_t>& fv) {
    if (detail::is_stable_idx(view, fv, mask)) out.push_back(view.to_flow(fv));
  });
  return out;
}

enum class objective { maximize, minimize };

struct optimal_result {
  std::int64_t value = 0;
  flow witness;
};

// Best total value over all stable flows under the given free set. At least
// one stable flow always exists, so an empty result is an internal error.
inline optimal_result optimal_free_stable_value(const instance& inst,
                                                const std::set<std::string>& free_edges,
                                                objective obj,
                                                const enumeration_budget& budget) {
  instance_view view(inst);
  std::vector<char> mask = view.free_mask(free_edges);
  bool found = false;
  optimal_result best;
  detail::for_each_feasible_idx(view, budget, [&](const std::vector<std::int64_t>& fv) {
    if (!detail::is_stable_idx(view, fv, mask)) return;
    std::int64_t value = detail::flow_value_idx(view, fv);
    bool better = !found || (obj == objective::maximize ? value > best.value : value < best.value);
    if (better) {
      found = true;
      best.value = value;
      best.witness = view.to_flow(fv);
    }
  });
  if (!found) throw std::logic_error("no stable flow found; enumeration is broken");
  return best;
}

struct invariance_result {
  bool ok = true;
  std::optional<std::pair<flow, flow>> counterexample;
};

// Do all stable flows agree on every terminal-incident edge value? With an
// empty free set they provably do; free edges can break it.
inline invariance_result check_terminal_invariance(const instance& inst,
                                                   const std::set<std::string>& free_edges,
                                                   const enumeration_budget& budget) {
  instance_view view(inst);
  std::vector<char> mask = view.free_mask(free_edges);
  std::vector<int> terminal_edges;
  for (int e = 0; e < view.edge_count(); ++e)
    if (view.terminal(view.tail(e)) || view.terminal(view.head(e))) terminal_edges.push_back(e);

  invariance_result res;
  bool have_first = false;
  std::vector<std::int64_t> first_profile, first_flow;
  detail::for_each_feasible_idx(view, budget, [&](const std::vector<std::int64_t>& fv) {
    if (!res.ok || !detail::is_stable_idx(view, fv, mask)) return;
    std::vector<std::int64_t> profile;
    profile.reserve(terminal_edges.size());
    for (int e : terminal_edges) profile.push_back(fv[e]);
    if (!have_first) {
      have_first = true;
      first_profile = profile;
      first_flow = fv;
    } else if (profile != first_profile) {
      res.ok = false;
      res.counterexample = {view.to_flow(first_flow), view.to_flow(fv)};
    }
  });
  return res;
}

namespace detail {

// Indexed matching enumeration context: men and women as dense ints, pairs
// as flat records, matchings as partner arrays during the recursion.
struct matching_ctx {
  std::vector<std::string> men, women;
  std::map<std::string, int> man_idx, woman_idx;
  struct pair_rec {
    int man, woman, man_rank, woman_rank;
    bool free;
  };
  std::vector<pair_rec> pairs;
  std::vector<std::vector<int>> of_man;  // pair indices per man, declaration order

  explicit matching_ctx(const matching_instance& mi) : men(mi.men), women(mi.women) {
    for (std::size_t i = 0; i < men.size(); ++i) man_idx[men[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < women.size(); ++i) woman_idx[women[i]] = static_cast<int>(i);
    of_man.resize(men.size());
    for (const matching_pair& p : mi.pairs) {
      int pi = static_cast<int>(pairs.size());
      pairs.push_back({man_idx.at(p.man), woman_idx.at(p.woman), p.man_rank, p.woman_rank,
                       p.free});
      of_man[pairs.back().man].push_back(pi);
    }
  }

  // Weak blocking over partner arrays: pair index per matched vertex, -1
  // when single.
  bool stable(const std::vector<int>& man_pair, const std::vector<int>& woman_pair) const {
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
      const pair_rec& p = pairs[pi];
      if (p.free) continue;
      int hp = man_pair[p.man];
      if (hp == static_cast<int>(pi)) continue;
      if (hp >= 0 && pairs[hp].man_rank <= p.man_rank) continue;
      int wp = woman_pair[p.woman];
      if (wp >= 0 && pairs[wp].woman_rank <= p.woman_rank) continue;
      return false;
    }
    return true;
  }

  matching to_matching(const std::vector<int>& man_pair) const {
    matching m;
    for (int pi : man_pair)
      if (pi >= 0) m.insert({men[pairs[pi].man], women[pairs[pi].woman]});
    return m;
  }
};

inline void for_each_matching_idx(const matching_ctx& ctx, const enumeration_budget& b,
                                  const std::function<void(const std::vector<int>&,
                                                           const std::vector<int>&)>& fn) {
  budget_meter meter(b);
  std::vector<int> man_pair(ctx.men.size(), -1), woman_pair(ctx.women.size(), -1);
  auto recurse = [&](auto&& self, std::size_t man) -> void {
    if (man == ctx.men.size()) {
      fn(man_pair, woman_pair);
      return;
    }
    meter.tick();
    self(self, man + 1);  // leave this man single
    for (int pi : ctx.of_man[man]) {
      int w = ctx.pairs[pi].woman;
      if (woman_pair[w] >= 0) continue;
      meter.tick();
      man_pair[man] = pi;
      woman_pair[w] = pi;
      self(self, man + 1);
      man_pair[man] = -1;
      woman_pair[w] = -1;
    }
  };
  recurse(recurse, 0);
}

}  // namespace detail

inline std::vector<matching> enumerate_matchings(const matching_instance& mi,
                                                 const enumeration_budget& budget) {
  detail::matching_ctx ctx(mi);
  std::vector<matching> out;
  detail::for_each_matching_idx(ctx, budget,
                                [&](const std::vector<int>& man_pair, const std::vector<int>&) {
                                  out.push_back(ctx.to_matching(man_pair));
                                });
  return out;
}

// Every matching no non-free pair weakly blocks. Tied pairs share a rank,
// so a tied alternative never strictly improves the man's side.
inline std::vector<matching> enumerate_weakly_stable_matchings(const matching_instance& mi,
                                                               const enumeration_budget& budget) {
  detail::matching_ctx ctx(mi);
  std::vector<matching> out;
  detail::for_each_matching_idx(
      ctx, budget, [&](const std::vector<int>& man_pair, const std::vector<int>& woman_pair) {
        if (ctx.stable(man_pair, woman_pair)) out.push_back(ctx.to_matching(man_pair));
      });
  return out;
}

inline std::size_t max_weakly_stable_size(const matching_instance& mi,
                                          const enumeration_budget& budget) {
  detail::matching_ctx ctx(mi);
  std::size_t best = 0;
  bool found = false;
  detail::for_each_matching_idx(
      ctx, budget, [&](const std::vector<int>& man_pair, const std::vector<int>& woman_pair) {
        if (!ctx.stable(man_pair, woman_pair)) return;
        found = true;
        std::size_t size = 0;
        for (int pi : man_pair)
          if (pi >= 0) ++size;
        best = std::max(best, size);
      });
  if (!found) throw std::logic_error("no weakly stable matching found; enumeration is broken");
  return best;
}

}  // namespace stableflow

// Preflow-push deferred acceptance. Terminals saturate their outgoing edges
// up front; a vertex holding excess forwards it along its best outgoing edge
// that has residual room and has not been refused by its head, and when no
// such edge remains it refuses its worst positive incoming edge, handing the
// flow back to the proposer. Refusals are permanent, so edge availability
// only ever shrinks, which bounds the total number of scheduler actions by
// the total capacity pushed plus retracted.

#pragma once

#include <cstdint>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "stableflow/instance.hpp"
#include "stableflow/stability.hpp"

namespace stableflow {

// Solver result with enough state to resume after an augmentation: the flow
// and the set of edges their heads have refused (in part or in full).
struct gs_solution {
  flow f;
  std::set<std::string> refused;
  std::uint64_t steps = 0;
};

namespace detail {

class gs_engine {
 public:
  explicit gs_engine(const instance_view& view)
      : view_(view),
        f_(view.edge_count(), 0),
        excess_(view.vertex_count(), 0),
        refused_(view.edge_count(), 0),
        queued_(view.vertex_count(), 0) {
    // Steps are pushes plus refusals; each moves at least one unit across
    // one edge and each edge sees at most its capacity of either, so this
    // bound holds with a generous margin. Exceeding it is a solver bug.
    step_bound_ = 4 * static_cast<std::uint64_t>(view.edge_count()) *
                  static_cast<std::uint64_t>(view.total_capacity());
  }

  void load(const gs_solution& prior) {
    for (const auto& [eid, val] : prior.f) f_[view_.eindex_at(eid)] = val;
    for (const std::string& eid : prior.refused) refused_[view_.eindex_at(eid)] = 1;
  }

  void saturate_initial() {
    for (int e = 0; e < view_.edge_count(); ++e)
      if (view_.terminal(view_.tail(e))) saturate(e);
  }

  void saturate(int e) {
    if (!view_.terminal(view_.tail(e)))
      throw std::invalid_argument("saturated edge must leave a terminal");
    std::int64_t add = view_.capacity(e) - f_[e];
    f_[e] = view_.capacity(e);
    int h = view_.head(e);
    if (!view_.terminal(h) && add > 0) {
      excess_[h] += add;
      enqueue(h);
    }
  }

  void run() {
    while (!queue_.empty()) {
      int v = queue_.front();
      queue_.pop_front();
      queued_[v] = 0;
      drain(v);
    }
  }

  gs_solution result() const {
    gs_solution out;
    out.f = view_.to_flow(f_);
    for (int e = 0; e < view_.edge_count(); ++e)
      if (refused_[e]) out.refused.insert(view_.edge_id(e));
    out.steps = steps_;
    return out;
  }

  const std::vector<std::int64_t>& flow_vec() const { return f_; }

 private:
  void enqueue(int v) {
    if (!queued_[v]) {
      queued_[v] = 1;
      queue_.push_back(v);
    }
  }

  void drain(int v) {
    while (excess_[v] > 0) {
      if (++steps_ > step_bound_)
        throw std::logic_error("deferred acceptance exceeded its step bound");
      int e = best_available_out(v);
      if (e >= 0) {
        std::int64_t delta = std::min(excess_[v], view_.capacity(e) - f_[e]);
        f_[e] += delta;
        int h = view_.head(e);
        if (!view_.terminal(h)) {
          excess_[h] += delta;
          enqueue(h);
        }
        excess_[v] -= delta;
      } else {
        int w = worst_positive_in(view_, f_, v);
        if (w < 0) throw std::logic_error("excess without positive incoming flow");
        std::int64_t delta = std::min(excess_[v], f_[w]);
        f_[w] -= delta;
        refused_[w] = 1;
        int t = view_.tail(w);
        if (!view_.terminal(t)) {
          excess_[t] += delta;
          enqueue(t);
        }
        excess_[v] -= delta;
      }
    }
  }

  // Best outgoing edge that still has room and was never refused. Both
  // disqualifiers are permanent, so scanning best-first reproduces a
  // monotone proposal cursor.
  int best_available_out(int v) const {
    for (int e : view_.out_pref(v))
      if (f_[e] < view_.capacity(e) && !refused_[e]) return e;
    return -1;
  }

  const instance_view& view_;
  std::vector<std::int64_t> f_;
  std::vector<std::int64_t> excess_;
  std::vector<char> refused_;
  std::vector<char> queued_;
  std::deque<int> queue_;
  std::uint64_t steps_ = 0;
  std::uint64_t step_bound_ = 0;
};

inline void require_valid(const instance& inst) {
  validation_report rep = validate(inst);
  if (!rep.ok())
    throw std::invalid_argument("invalid instance: " + rep.violations.front().rule + " at '" +
                                rep.violations.front().where + "'");
}

inline void certify(const instance_view& view, const gs_engine& engine) {
  if (!is_stable_idx(view, engine.flow_vec(), std::vector<char>(view.edge_count(), 0)))
    throw std::logic_error("solver output failed its stability post-check");
}

}  // namespace detail

// Classic stable flow. Restriction and free annotations are ignored; the
// result is certified against the independent checker before returning.
inline gs_solution solve_stable_flow_state(const instance& inst) {
  detail::require_valid(inst);
  instance_view view(inst);
  detail::gs_engine engine(view);
  engine.saturate_initial();
  engine.run();
  detail::certify(view, engine);
  return engine.result();
}

inline flow solve_stable_flow(const instance& inst) {
  return solve_stable_flow_state(inst).f;
}

// Resume a finished solve on an augmented instance. The augmented instance
// must contain every edge the prior state mentions; each edge listed in
// saturate must leave a terminal and is brought to full capacity, and only
// its head is activated. No old proposal is re-run.
inline gs_solution solve_on_augmented(const instance& augmented, const gs_solution& prior,
                                      const std::vector<std::string>& saturate) {
  detail::require_valid(augmented);
  instance_view view(augmented);
  detail::gs_engine engine(view);
  engine.load(prior);
  for (const std::string& eid : saturate) engine.saturate(view.eindex_at(eid));
  engine.run();
  detail::certify(view, engine);
  return engine.result();
}

}  // namespace stableflow

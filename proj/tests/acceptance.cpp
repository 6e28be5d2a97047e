// Acceptance gate for the solver stack. Each criterion prints one PASS/FAIL
// line with its wall-clock time against a pinned budget; the binary exits
// nonzero if any criterion fails. Tolerances and sample sizes are fixed here
// on purpose -- loosening them is a code change, not a flag.

#include <chrono>
#include <cstdio>
#include <exception>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "stableflow/stableflow.hpp"
#include "support/walk_oracle.hpp"

namespace sf = stableflow;

namespace {

bool oracle_bounds_feasible(const sf::instance& inst, sf::flow* witness = nullptr) {
  for (const sf::flow& f : sf::enumerate_stable_flows(inst, {}, {})) {
    bool ok = true;
    for (const sf::edge& e : inst.edges) {
      if (e.forced_lower > 0 && f.at(e.id) < e.forced_lower) ok = false;
      if (e.forbidden_upper && f.at(e.id) > *e.forbidden_upper) ok = false;
    }
    if (ok) {
      if (witness) *witness = f;
      return true;
    }
  }
  return false;
}

// Small base network plus a deterministic sprinkling of bounds on distinct
// edges. Partial upper bounds exercise the splitting path.
sf::instance annotated_instance(std::uint64_t seed, int nq, int np, bool allow_partial_upper) {
  sf::instance_gen_params p;
  p.vertices = 2 + static_cast<int>(seed % 6);
  p.edges = 1 + static_cast<int>(seed % 8);
  p.cap_max = 2;
  p.seed = seed;
  sf::instance inst = sf::random_instance(p);

  std::mt19937_64 rng(seed * 31 + 7);
  std::size_t m = inst.edges.size();
  std::set<std::size_t> taken;
  int want = nq + np;
  for (int k = 0; k < want && taken.size() < m; ++k) {
    std::size_t e = rng() % m;
    while (taken.count(e)) e = (e + 1) % m;
    taken.insert(e);
    auto cap = static_cast<std::uint64_t>(inst.edges[e].capacity);
    if (k < nq) {
      inst.edges[e].forced_lower = 1 + static_cast<std::int64_t>(rng() % cap);
    } else {
      std::int64_t upper = allow_partial_upper ? static_cast<std::int64_t>(rng() % cap) : 0;
      inst.edges[e].forbidden_upper = upper;
    }
  }
  return inst;
}

const sf::matching_pair& pair_rec(const sf::matching_instance& mi, const std::string& man,
                                  const std::string& woman) {
  for (const sf::matching_pair& p : mi.pairs)
    if (p.man == man && p.woman == woman) return p;
  throw std::runtime_error("pair " + man + "-" + woman + " not found");
}

bool literally_blocks(const sf::matching_instance& mi, const sf::matching& m,
                      const std::string& man, const std::string& woman) {
  const sf::matching_pair& p = pair_rec(mi, man, woman);
  if (p.free || m.count({man, woman})) return false;
  for (const auto& [a, b] : m) {
    if (a == man && pair_rec(mi, a, b).man_rank <= p.man_rank) return false;
    if (b == woman && pair_rec(mi, a, b).woman_rank <= p.woman_rank) return false;
  }
  return true;
}

}  // namespace

int main() {
  int failures = 0;

  auto criterion = [&](int k, const char* desc, double budget_s, auto&& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
      ok = body(note);
    } catch (const std::exception& e) {
      ok = false;
      note = std::string("exception: ") + e.what();
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_budget = elapsed < budget_s;
    bool pass = ok && in_budget;
    std::printf("[%d] %s %s (%.2fs, budget %.0fs)%s%s\n", k, pass ? "PASS" : "FAIL", desc,
                elapsed, budget_s, note.empty() ? "" : " -- ", note.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  };

  criterion(1, "chord optimum doubles only under freeness", 1.0, [](std::string& note) {
    sf::instance chord = sf::build_chord_example();
    std::set<std::string> free = sf::chord_free_set();
    sf::optimal_result mx = sf::optimal_free_stable_value(chord, free, sf::objective::maximize, {});
    sf::optimal_result mn = sf::optimal_free_stable_value(chord, free, sf::objective::minimize, {});
    std::int64_t cx = sf::optimal_free_stable_value(chord, {}, sf::objective::maximize, {}).value;
    std::int64_t cn = sf::optimal_free_stable_value(chord, {}, sf::objective::minimize, {}).value;
    bool ok = mx.value == 2 && mn.value == 1 && cx == 1 && cn == 1 &&
              sf::is_stable(chord, mx.witness, free);
    if (!ok) note = "expected free max 2 / min 1 and classic 1 / 1";
    return ok;
  });

  criterion(2, "preflow solver stays within its step bound and self-certifies", 60.0,
            [](std::string& note) {
              for (std::uint64_t i = 0; i < 1000; ++i) {
                sf::instance_gen_params p;
                p.vertices = 2 + static_cast<int>((i * 7 + 3) % 9);
                p.edges = static_cast<int>((i * 5 + 1) % 17);
                p.cap_max = 1 + static_cast<std::int64_t>(i % 3);
                p.terminal_fraction = 0.2 + 0.15 * static_cast<double>(i % 4);
                p.seed = i;
                sf::instance inst = sf::random_instance(p);
                sf::gs_solution sol = sf::solve_stable_flow_state(inst);
                std::int64_t total_cap = 0;
                for (const sf::edge& e : inst.edges) total_cap += e.capacity;
                std::int64_t bound = 4 * static_cast<std::int64_t>(inst.edges.size()) * total_cap;
                if (sol.steps > bound || !sf::check_feasible(inst, sol.f, {}).ok() ||
                    !sf::is_stable(inst, sol.f, {})) {
                  note = "seed " + std::to_string(i);
                  return false;
                }
              }
              return true;
            });

  criterion(3, "terminal profiles are invariant classically, not under freeness", 120.0,
            [](std::string& note) {
              for (std::uint64_t i = 0; i < 300; ++i) {
                sf::instance_gen_params p;
                p.vertices = 2 + static_cast<int>(i % 7);
                p.edges = static_cast<int>(i % 9);
                p.cap_max = 1 + static_cast<std::int64_t>(i % 2);
                p.seed = 3000 + i;
                sf::instance inst = sf::random_instance(p);
                if (!sf::check_terminal_invariance(inst, {}, {}).ok) {
                  note = "classic invariance broke at seed " + std::to_string(3000 + i);
                  return false;
                }
              }
              sf::instance chord = sf::build_chord_example();
              sf::invariance_result res =
                  sf::check_terminal_invariance(chord, sf::chord_free_set(), {});
              if (res.ok || !res.counterexample) {
                note = "freed chord failed to produce a counterexample";
                return false;
              }
              const auto& [f1, f2] = *res.counterexample;
              bool certified = sf::is_stable(chord, f1, sf::chord_free_set()) &&
                               sf::is_stable(chord, f2, sf::chord_free_set()) &&
                               sf::terminal_profile(chord, f1) != sf::terminal_profile(chord, f2);
              if (!certified) note = "counterexample did not certify";
              return certified;
            });

  criterion(4, "forced-edge solver matches enumeration on 300 instances", 120.0,
            [](std::string& note) {
              for (std::uint64_t i = 0; i < 300; ++i) {
                std::uint64_t seed = 4000 + i;
                sf::instance inst = annotated_instance(seed, static_cast<int>(i % 3), 0, false);
                sf::restricted_outcome out = sf::solve_forced(inst);
                if (out.feasible != oracle_bounds_feasible(inst)) {
                  note = "verdict mismatch at seed " + std::to_string(seed);
                  return false;
                }
                if (out.feasible && (!sf::check_feasible(inst, out.f, {true}).ok() ||
                                     !sf::is_stable(inst, out.f, {}))) {
                  note = "bad feasible output at seed " + std::to_string(seed);
                  return false;
                }
              }
              return true;
            });

  criterion(5, "forbidden-edge solver matches enumeration in both orders", 180.0,
            [](std::string& note) {
              for (std::uint64_t i = 0; i < 300; ++i) {
                std::uint64_t seed = 5000 + i;
                sf::instance inst =
                    annotated_instance(seed, 0, static_cast<int>(i % 4), true);
                sf::restricted_outcome fwd = sf::solve_forbidden(inst, sf::process_order::forward);
                sf::restricted_outcome rev = sf::solve_forbidden(inst, sf::process_order::reverse);
                bool oracle = oracle_bounds_feasible(inst);
                if (fwd.feasible != oracle || rev.feasible != oracle) {
                  note = "verdict mismatch at seed " + std::to_string(seed);
                  return false;
                }
                for (const sf::restricted_outcome* out : {&fwd, &rev}) {
                  if (!out->feasible) continue;
                  if (!sf::check_feasible(inst, out->f, {true}).ok() ||
                      !sf::is_stable(inst, out->f, {})) {
                    note = "bad feasible output at seed " + std::to_string(seed);
                    return false;
                  }
                }
              }
              return true;
            });

  criterion(6, "combined restricted solver matches enumeration on 200 instances", 120.0,
            [](std::string& note) {
              for (std::uint64_t i = 0; i < 200; ++i) {
                std::uint64_t seed = 6000 + i;
                sf::instance inst = annotated_instance(seed, static_cast<int>(i % 3),
                                                       static_cast<int>((i / 3) % 3), true);
                sf::restricted_outcome out = sf::solve_restricted(inst);
                if (out.feasible != oracle_bounds_feasible(inst)) {
                  note = "verdict mismatch at seed " + std::to_string(seed);
                  return false;
                }
                if (out.feasible && (!sf::check_feasible(inst, out.f, {true}).ok() ||
                                     !sf::is_stable(inst, out.f, {}))) {
                  note = "bad feasible output at seed " + std::to_string(seed);
                  return false;
                }
              }
              return true;
            });

  criterion(7, "tie gadgets grow the stable maximum by two per tie on 100 markets", 300.0,
            [](std::string& note) {
              int built = 0;
              std::uint64_t probe = 70000;
              while (built < 100) {
                sf::matching_gen_params p;
                p.men = 2 + static_cast<int>(built % 3);
                p.women = 2 + static_cast<int>((built / 3) % 3);
                p.density = 0.75 + 0.05 * static_cast<double>(built % 3);
                p.ties = 1 + static_cast<int>(built % 2);
                p.seed = probe++;
                if (probe > 70000 + 100000) {
                  note = "generator could not produce enough tied markets";
                  return false;
                }
                sf::matching_instance mi;
                try {
                  mi = sf::random_matching_instance(p);
                } catch (const std::invalid_argument&) {
                  continue;  // this draw had no man with two partners to tie
                }
                ++built;

                sf::gadgetized g = sf::gadgetize_ties(mi);
                std::size_t k_orig = sf::max_weakly_stable_size(mi, {});
                std::size_t k_gadget = sf::max_weakly_stable_size(g.inst, {});
                if (k_gadget != k_orig + g.map.cardinality_offset()) {
                  note = "size law broke at seed " + std::to_string(p.seed);
                  return false;
                }

                for (const sf::matching& original :
                     sf::enumerate_weakly_stable_matchings(mi, {})) {
                  sf::matching completed = sf::complete_matching_scenarios(g.map, original);
                  if (completed.size() != original.size() + g.map.cardinality_offset() ||
                      !sf::is_matching_stable(g.inst, completed) ||
                      sf::ungadgetize_matching(g.map, completed) != original) {
                    note = "scenario completion failed at seed " + std::to_string(p.seed);
                    return false;
                  }
                  for (const sf::tie_gadget& t : g.map.gadgets) {
                    for (const auto& [man, woman] :
                         std::vector<std::pair<std::string, std::string>>{
                             {t.man, t.a},
                             {t.d, t.c},
                             {t.b, t.routed_woman},
                             {t.man, t.kept_woman}}) {
                      if (literally_blocks(g.inst, completed, man, woman)) {
                        note = "dominance audit failed for " + man + "-" + woman + " at seed " +
                               std::to_string(p.seed);
                        return false;
                      }
                    }
                  }
                }
              }
              return true;
            });

  criterion(8, "stable matchings biject with stable flows on 100 tie-free markets", 60.0,
            [](std::string& note) {
              sf::enumeration_budget budget;
              budget.max_edges = 40;
              for (std::uint64_t i = 0; i < 100; ++i) {
                sf::matching_gen_params p;
                p.men = 2 + static_cast<int>(i % 3);
                p.women = 2 + static_cast<int>((i / 3) % 3);
                p.density = 0.5 + 0.1 * static_cast<double>(i % 4);
                p.seed = 80000 + i;
                sf::matching_instance mi = sf::random_matching_instance(p);
                sf::matching_flow_result conv = sf::matching_to_flow(mi);

                std::vector<sf::matching> sm = sf::enumerate_weakly_stable_matchings(mi, {});
                std::vector<sf::flow> sflows = sf::enumerate_stable_flows(conv.inst, {}, budget);
                std::set<sf::matching> expected(sm.begin(), sm.end());
                std::set<sf::matching> got;
                bool ok = sm.size() == sflows.size();
                for (const sf::flow& f : sflows) {
                  sf::matching m = sf::flow_to_matching(conv, f);
                  ok = ok && sf::matching_to_flow_values(conv, m) == f &&
                       sf::flow_value(conv.inst, f) == static_cast<std::int64_t>(m.size());
                  got.insert(m);
                }
                ok = ok && got == expected;
                if (!ok) {
                  note = "bijection broke at seed " + std::to_string(80000 + i);
                  return false;
                }
              }
              return true;
            });

  criterion(9, "blocking-walk checker agrees with the literal search on 500 samples", 120.0,
            [](std::string& note) {
              int samples = 0;
              std::uint64_t seed = 90000;
              while (samples < 500) {
                sf::instance_gen_params p;
                p.vertices = 2 + static_cast<int>(seed % 6);
                p.edges = 1 + static_cast<int>(seed % 8);
                p.cap_max = 2;
                p.seed = seed++;
                sf::instance inst = sf::random_instance(p);
                std::vector<sf::flow> flows = sf::enumerate_feasible_flows(inst, {});
                if (flows.empty()) continue;

                std::set<std::string> every_third;
                for (std::size_t e = 0; e < inst.edges.size(); e += 3)
                  every_third.insert(inst.edges[e].id);

                std::size_t stride = 1 + flows.size() / 3;
                for (std::size_t fi = 0; fi < flows.size() && samples < 500; fi += stride) {
                  for (const std::set<std::string>& free :
                       {std::set<std::string>{}, every_third}) {
                    std::optional<sf::blocking_walk> walk =
                        sf::find_blocking_walk(inst, flows[fi], free);
                    bool oracle =
                        testsupport::oracle_has_blocking_walk(inst, flows[fi], free, true);
                    if (walk.has_value() != oracle) {
                      note = "verdict mismatch at seed " + std::to_string(seed - 1);
                      return false;
                    }
                    if (walk &&
                        !testsupport::oracle_walk_valid(inst, flows[fi], free, *walk)) {
                      note = "invalid certificate at seed " + std::to_string(seed - 1);
                      return false;
                    }
                    ++samples;
                  }
                }
              }
              return true;
            });

  if (failures == 0) {
    std::printf("acceptance: all 9 criteria passed\n");
  } else {
    std::printf("acceptance: %d criteria FAILED\n", failures);
  }
  return failures == 0 ? 0 : 1;
}

// Batch CLI over the stableflow library. Exit codes: 0 = solved / property
// holds, 2 = mathematical verdict against (infeasible, unstable, invalid
// instance), 1 = usage or data error. Verdicts go to stdout as JSON;
// diagnostics go to stderr.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "stableflow/stableflow.hpp"

namespace sf = stableflow;
using sf::json;

namespace {

json read_json_input(const std::string& path) {
  if (path == "-") return json::parse(std::cin);
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return json::parse(in);
}

void emit(const json& payload, const std::string& output_path) {
  std::string text = payload.dump(2) + "\n";
  if (output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output_path);
    if (!out) throw std::invalid_argument("cannot write '" + output_path + "'");
    out << text;
  }
}

// Instance loading for subcommands that need a valid one; invalid data is
// an operational error (exit 1), not a verdict.
sf::instance load_valid_instance(const std::string& path) {
  sf::instance inst = sf::instance_from_json(read_json_input(path));
  sf::validation_report rep = sf::validate(inst);
  if (!rep.ok()) {
    std::cerr << "invalid instance:\n";
    for (const sf::violation& v : rep.violations)
      std::cerr << "  " << v.rule << " at '" << v.where << "': " << v.detail << "\n";
    throw std::invalid_argument("instance failed validation");
  }
  return inst;
}

void budget_flags(CLI::App* cmd, sf::enumeration_budget& b) {
  cmd->add_option("--max-edges", b.max_edges, "Enumeration cap on edge count");
  cmd->add_option("--max-capacity", b.max_capacity, "Enumeration cap on edge capacity");
  cmd->add_option("--max-states", b.max_states, "Hard cap on visited assignments");
  cmd->add_option("--time-limit", b.time_limit_seconds, "Enumeration time limit in seconds");
}

json solution_payload(const sf::instance& inst, const sf::flow& f) {
  json profile = json::object();
  for (const auto& [eid, val] : sf::terminal_profile(inst, f)) profile[eid] = val;
  return {{"flow", sf::flow_to_json(f)},
          {"value", sf::flow_value(inst, f)},
          {"terminal_profile", profile}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stable flow solver for preference-annotated networks with restricted edges"};
  app.require_subcommand(0, 1);

  bool show_schema = false;
  app.add_flag("--schema", show_schema, "Print the JSON wire formats and exit");

  std::string in_path, flow_path, output_path;
  bool restricted = false, reverse = false, free_aware = false, stable_only = false;
  bool use_free = false, to_flow = false;
  std::string objective = "max";

  CLI::App* c_validate = app.add_subcommand("validate", "Validate an instance file");
  c_validate->add_option("instance", in_path, "Instance JSON file, or - for stdin")->required();

  CLI::App* c_solve = app.add_subcommand("solve", "Find a stable flow");
  c_solve->add_option("instance", in_path)->required();
  c_solve->add_flag("--restricted", restricted, "Honor forced and forbidden annotations");
  c_solve->add_flag("--reverse", reverse, "Process forbidden edges in reverse order");
  c_solve->add_option("--output", output_path, "Write the payload to a file instead of stdout");

  CLI::App* c_check = app.add_subcommand("check", "Check a flow for stability");
  c_check->add_option("instance", in_path)->required();
  c_check->add_option("--flow", flow_path, "Flow JSON file, or - for stdin")->required();
  c_check->add_flag("--free-aware", free_aware, "Honor the instance's free edges");

  CLI::App* c_oracle = app.add_subcommand("oracle", "Brute-force enumeration utilities");
  c_oracle->require_subcommand(1);
  sf::enumeration_budget enum_budget, opt_budget, inv_budget;
  CLI::App* c_enum = c_oracle->add_subcommand("enumerate", "List feasible (or stable) flows");
  c_enum->add_option("instance", in_path)->required();
  c_enum->add_flag("--stable", stable_only, "List only stable flows");
  c_enum->add_flag("--free", use_free, "Honor the instance's free edges");
  budget_flags(c_enum, enum_budget);
  CLI::App* c_opt = c_oracle->add_subcommand("optimal", "Best stable flow value");
  c_opt->add_option("instance", in_path)->required();
  c_opt->add_option("--objective", objective, "max or min")
      ->check(CLI::IsMember({"max", "min"}));
  c_opt->add_flag("--free", use_free, "Honor the instance's free edges");
  budget_flags(c_opt, opt_budget);
  CLI::App* c_inv = c_oracle->add_subcommand("invariance", "Terminal-profile invariance check");
  c_inv->add_option("instance", in_path)->required();
  c_inv->add_flag("--free", use_free, "Honor the instance's free edges");
  budget_flags(c_inv, inv_budget);

  CLI::App* c_gadget = app.add_subcommand("gadget", "Rewrite matching ties into gadgets");
  c_gadget->add_option("matching", in_path, "Matching instance JSON file")->required();
  c_gadget->add_flag("--to-flow", to_flow, "Emit the tie-free result as a flow instance");
  c_gadget->add_option("--output", output_path);

  CLI::App* c_gen = app.add_subcommand("gen", "Generate a seeded random instance");
  std::string kind = "flow";
  sf::instance_gen_params fp;
  sf::matching_gen_params mp;
  c_gen->add_option("--kind", kind, "flow or matching")->check(CLI::IsMember({"flow", "matching"}));
  c_gen->add_option("--vertices", fp.vertices);
  c_gen->add_option("--edges", fp.edges);
  c_gen->add_option("--cap-min", fp.cap_min);
  c_gen->add_option("--cap-max", fp.cap_max);
  c_gen->add_option("--terminal-fraction", fp.terminal_fraction);
  c_gen->add_option("--forced-density", fp.forced_density);
  c_gen->add_option("--forbidden-density", fp.forbidden_density);
  c_gen->add_option("--free-density", fp.free_density);
  c_gen->add_option("--men", mp.men);
  c_gen->add_option("--women", mp.women);
  c_gen->add_option("--density", mp.density);
  c_gen->add_option("--ties", mp.ties);
  std::uint64_t seed = 1;
  c_gen->add_option("--seed", seed);
  c_gen->add_option("--output", output_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage problems are always exit 1; help/version remain 0.
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (show_schema) {
      emit(sf::schema_json(), output_path);
      return 0;
    }
    if (app.get_subcommands().empty()) {
      std::cerr << app.help();
      return 1;
    }

    if (c_validate->parsed()) {
      sf::instance inst = sf::instance_from_json(read_json_input(in_path));
      sf::validation_report rep = sf::validate(inst);
      emit(sf::report_to_json(rep), output_path);
      return rep.ok() ? 0 : 2;
    }

    if (c_solve->parsed()) {
      sf::instance inst = load_valid_instance(in_path);
      if (!restricted) {
        sf::flow f = sf::solve_stable_flow(inst);
        emit(solution_payload(inst, f), output_path);
        return 0;
      }
      sf::restricted_outcome out = sf::solve_restricted(
          inst, reverse ? sf::process_order::reverse : sf::process_order::forward);
      if (!out.feasible) {
        emit(sf::outcome_to_json(out), output_path);
        return 2;
      }
      json payload = solution_payload(inst, out.f);
      payload["feasible"] = true;
      payload["p1"] = out.p1;
      payload["p2"] = out.p2;
      json aux = json::array();
      for (const sf::aux_record& r : out.auxiliary)
        aux.push_back({{"forbidden_edge", r.forbidden_edge},
                       {"kind", r.kind == sf::aux_kind::sv ? "sv" : "ut"},
                       {"aux_edge", r.aux_edge},
                       {"aux_terminal", r.aux_terminal}});
      payload["auxiliary"] = aux;
      emit(payload, output_path);
      return 0;
    }

    if (c_check->parsed()) {
      sf::instance inst = load_valid_instance(in_path);
      sf::flow f = sf::flow_from_json(read_json_input(flow_path));
      sf::instance_view view(inst);
      view.to_vec(f);  // reject unknown edge ids before verdicts
      sf::validation_report feas = sf::check_feasible(inst, f, {false});
      if (!feas.ok()) {
        json payload = sf::report_to_json(feas);
        payload["feasible"] = false;
        emit(payload, output_path);
        return 2;
      }
      std::set<std::string> free = free_aware ? sf::free_edge_ids(inst) : std::set<std::string>{};
      std::optional<sf::blocking_walk> walk = sf::find_blocking_walk(inst, f, free);
      if (walk) {
        emit({{"stable", false}, {"walk", sf::walk_to_json(*walk)}}, output_path);
        return 2;
      }
      emit({{"stable", true}}, output_path);
      return 0;
    }

    if (c_oracle->parsed()) {
      sf::instance inst = load_valid_instance(in_path);
      std::set<std::string> free = use_free ? sf::free_edge_ids(inst) : std::set<std::string>{};
      if (c_enum->parsed()) {
        std::vector<sf::flow> flows = stable_only
                                          ? sf::enumerate_stable_flows(inst, free, enum_budget)
                                          : sf::enumerate_feasible_flows(inst, enum_budget);
        json list = json::array();
        for (const sf::flow& f : flows) list.push_back(sf::flow_to_json(f));
        emit({{"count", flows.size()}, {"flows", list}}, output_path);
        return 0;
      }
      if (c_opt->parsed()) {
        sf::optimal_result best = sf::optimal_free_stable_value(
            inst, free, objective == "max" ? sf::objective::maximize : sf::objective::minimize,
            opt_budget);
        emit({{"value", best.value}, {"flow", sf::flow_to_json(best.witness)}}, output_path);
        return 0;
      }
      sf::invariance_result inv = sf::check_terminal_invariance(inst, free, inv_budget);
      json payload = {{"ok", inv.ok}};
      if (inv.counterexample)
        payload["counterexample"] = {{"first", sf::flow_to_json(inv.counterexample->first)},
                                     {"second", sf::flow_to_json(inv.counterexample->second)}};
      else
        payload["counterexample"] = nullptr;
      emit(payload, output_path);
      return inv.ok ? 0 : 2;
    }

    if (c_gadget->parsed()) {
      sf::matching_instance mi = sf::matching_instance_from_json(read_json_input(in_path));
      sf::gadgetized g = sf::gadgetize_ties(mi);  // throws on invalid input
      json gadgets = json::array();
      for (const sf::tie_gadget& tg : g.map.gadgets)
        gadgets.push_back({{"man", tg.man},
                           {"kept_woman", tg.kept_woman},
                           {"routed_woman", tg.routed_woman},
                           {"a", tg.a},
                           {"b", tg.b},
                           {"c", tg.c},
                           {"d", tg.d}});
      json payload;
      if (to_flow) {
        sf::matching_flow_result conv = sf::matching_to_flow(g.inst);
        payload = {{"instance", sf::instance_to_json(conv.inst)},
                   {"source", conv.source},
                   {"sink", conv.sink}};
      } else {
        payload = {{"instance", sf::matching_instance_to_json(g.inst)}};
      }
      payload["gadgets"] = gadgets;
      payload["cardinality_offset"] = g.map.cardinality_offset();
      emit(payload, output_path);
      return 0;
    }

    if (c_gen->parsed()) {
      if (kind == "flow") {
        fp.seed = seed;
        emit(sf::instance_to_json(sf::random_instance(fp)), output_path);
      } else {
        mp.seed = seed;
        emit(sf::matching_instance_to_json(sf::random_matching_instance(mp)), output_path);
      }
      return 0;
    }

    std::cerr << app.help();
    return 1;
  } catch (const sf::budget_exceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

#include "planlab/cli.hpp"

#include <algorithm>
#include <random>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "planlab/errors.hpp"
#include "planlab/fo_mc.hpp"
#include "planlab/generators.hpp"
#include "planlab/instance_io.hpp"
#include "planlab/oracle.hpp"
#include "planlab/postunique.hpp"
#include "planlab/zero_two.hpp"

namespace planlab {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Inapplicable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Instance load_instance(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  return parse_instance(text);
}

json names_of(const Plan& plan, const Instance& inst) {
  json a = json::array();
  for (auto id : plan.steps) a.push_back(inst.actions[id].name);
  return a;
}

json profile_json(const RestrictionProfile& p) {
  return json{{"P", p.post_unique}, {"U", p.unary},        {"B", p.binary},
              {"S", p.single_valued}, {"max_pre", p.max_pre}, {"max_eff", p.max_eff}};
}

// --- solve ------------------------------------------------------------------

enum class Outcome { Solvable, Unsolvable, Budget };

struct SolveOutput {
  Outcome outcome = Outcome::Unsolvable;
  std::optional<Plan> plan;
  json stats = json::object();
};

std::string zero_two_obstacle(const Instance& inst) {
  for (const auto& a : inst.actions) {
    if (!a.pre.empty()) return "action " + a.name + " has a precondition";
    if (a.eff.size() > 2)
      return "action " + a.name + " has " + std::to_string(a.eff.size()) + " effects";
  }
  return {};
}

SolveOutput run_oracle(const Instance& inst, std::size_t k) {
  const auto r = shortest_plan(inst, k);
  SolveOutput out;
  out.stats["states"] = r.states;
  if (r.status == SearchStatus::BudgetExhausted) out.outcome = Outcome::Budget;
  if (r.status == SearchStatus::Found) {
    out.outcome = Outcome::Solvable;
    out.plan = r.plan;
  }
  return out;
}

SolveOutput run_postunique(const Instance& inst, std::size_t k) {
  try {
    ProducerIndex check(inst);
  } catch (const ContractError& e) {
    throw Inapplicable(e.what());
  }
  const auto r = solve_postunique(inst, k);
  SolveOutput out;
  out.stats["nodes"] = r.nodes;
  out.stats["node_bound"] = postunique_node_bound(k);
  out.stats["successes"] = r.successes;
  out.stats["failures"] = r.failures;
  out.stats["minimal_plans"] = r.plans.size();
  if (!r.plans.empty()) {
    out.outcome = Outcome::Solvable;
    out.plan = *std::min_element(r.plans.begin(), r.plans.end(), [](const Plan& a, const Plan& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a.steps < b.steps;
    });
  }
  return out;
}

SolveOutput run_zero_two(const Instance& inst, std::size_t k, const std::string& dot_path) {
  if (auto why = zero_two_obstacle(inst); !why.empty()) throw Inapplicable(why);
  const auto r = solve_zero_two(inst, k);
  SolveOutput out;
  out.stats["transformed"] = r.transformed;
  out.stats["steiner_nodes"] = r.dst.node_count;
  out.stats["steiner_arcs"] = r.dst.arcs.size();
  out.stats["terminals"] = r.dst.terminals.size();
  out.stats["steiner_bound"] = r.steiner_bound;
  out.stats["dp_cells"] = r.dp_cells;
  if (r.plan) {
    out.outcome = Outcome::Solvable;
    out.plan = r.plan;
    out.stats["steiner_weight"] = r.steiner_weight;
  }
  if (!dot_path.empty()) {
    // node and arc labels come from whichever instance the graph was built on
    if (!r.transformed) {
      write_file(dot_path, steiner_to_dot(r.dst, inst, r.tree));
    } else {
      const auto t = eliminate_two_effect_good_actions(inst, k);
      write_file(dot_path, steiner_to_dot(r.dst, t.instance, r.tree));
    }
  }
  return out;
}

SolveOutput run_fo_mc(const Instance& inst, std::size_t k, std::optional<Fragment> requested,
                      const std::string& dump_path) {
  const auto prof = classify(inst);
  Fragment f = requested.value_or(prof.unary && k <= kMaxSigma1K ? Fragment::Sigma1
                                                                 : Fragment::Sigma22);
  if (f == Fragment::Sigma1 && !prof.unary)
    throw Inapplicable("sigma1 needs a unary instance (exactly one effect per action)");
  if (f == Fragment::Sigma1 && k > kMaxSigma1K)
    throw Inapplicable("sigma1 supports k <= " + std::to_string(kMaxSigma1K));

  if (!dump_path.empty()) {
    std::ostringstream dump;
    if (k >= 1) {
      const auto structure =
          f == Fragment::Sigma1 ? build_extended_structure(inst, k) : build_structure(inst);
      const auto sentence = f == Fragment::Sigma1 ? build_sigma1_formula(k) : build_sigma22_formula(k);
      dump << "# structure\n" << to_text(structure) << "# formula\n" << to_sexpr(sentence) << "\n";
    } else {
      dump << "# k = 0: decided on the initial state\n";
    }
    write_file(dump_path, dump.str());
  }

  const auto r = solve_via_mc(inst, k, f);
  SolveOutput out;
  out.stats["fragment"] = to_string(f);
  out.stats["assignments"] = r.assignments;
  out.stats["formula_nodes"] = r.formula_nodes;
  out.stats["trivial"] = r.trivial;
  if (r.solvable) {
    out.outcome = Outcome::Solvable;
    out.plan = r.witness;
  }
  return out;
}

struct SolveArgs {
  std::string file;
  std::size_t k = 0;
  std::string solver = "auto";
  std::string fragment;
  bool stats = false;
  std::string dot;
  std::string dump_fo;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance(a.file);
  std::optional<Fragment> fragment;
  if (a.fragment == "sigma22") fragment = Fragment::Sigma22;
  if (a.fragment == "sigma1") fragment = Fragment::Sigma1;

  std::string solver = a.solver == "auto" ? auto_route(classify(inst), a.k) : a.solver;
  SolveOutput r;
  try {
    if (solver == "oracle") r = run_oracle(inst, a.k);
    else if (solver == "post-unique") r = run_postunique(inst, a.k);
    else if (solver == "zero-two") r = run_zero_two(inst, a.k, a.dot);
    else r = run_fo_mc(inst, a.k, fragment, a.dump_fo);
  } catch (const Inapplicable& e) {
    out << json{{"error", e.what()}, {"solver", solver}}.dump() << "\n";
    err << "solver " << solver << " does not apply: " << e.what() << "\n";
    return kExitInapplicable;
  }

  if (r.plan) {
    const auto rep = validate_plan(inst, *r.plan);
    if (!rep.valid || r.plan->size() > a.k) {
      err << "internal error: solver " << solver << " returned a plan that fails validation\n";
      return kExitInternal;
    }
  }

  json j;
  j["solvable"] = r.outcome == Outcome::Budget ? json(nullptr) : json(r.outcome == Outcome::Solvable);
  j["length"] = r.plan ? json(r.plan->size()) : json(nullptr);
  j["plan"] = r.plan ? names_of(*r.plan, inst) : json(nullptr);
  j["solver"] = solver;
  j["stats"] = a.stats ? r.stats : json::object();
  out << j.dump() << "\n";

  switch (r.outcome) {
    case Outcome::Solvable:
      err << "plan of length " << r.plan->size() << " found by " << solver << "\n";
      return kExitOk;
    case Outcome::Unsolvable:
      err << "no plan of length <= " << a.k << " (" << solver << ")\n";
      return kExitNegative;
    case Outcome::Budget:
      err << "state budget exhausted (PLAN_LAB_BUDGET)\n";
      return kExitBudget;
  }
  return kExitInternal;
}

// --- classify / validate ------------------------------------------------------

int cmd_classify(const std::string& file, std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance(file);
  const auto p = classify(inst);
  json j = profile_json(p);
  j["route"] = auto_route(p);
  out << j.dump() << "\n";
  for (const auto& w : lint_instance(inst)) err << "warning: " << w << "\n";
  return kExitOk;
}

int cmd_validate(const std::string& inst_file, const std::string& plan_file, std::ostream& out,
                 std::ostream& err) {
  const Instance inst = load_instance(inst_file);
  std::string text;
  try {
    text = read_file(plan_file);
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  const Plan plan = parse_plan(text, inst);
  const auto rep = validate_plan(inst, plan);
  json j;
  j["valid"] = rep.valid;
  j["length"] = plan.size();
  if (rep.valid) {
    out << j.dump() << "\n";
    err << "valid plan of length " << plan.size() << "\n";
    return kExitOk;
  }
  const std::string kind = rep.failure == PlanFailure::Precondition ? "precondition" : "goal";
  const std::string detail =
      kind + " " + inst.var_names[rep.var] + " at step " + std::to_string(rep.step);
  j["failure"] = kind;
  j["step"] = rep.step;
  j["var"] = inst.var_names[rep.var];
  j["detail"] = detail;
  out << j.dump() << "\n";
  err << detail << "\n";
  return kExitNegative;
}

// --- generate -----------------------------------------------------------------

std::vector<std::vector<std::uint32_t>> parse_sets(const std::string& text) {
  static const std::regex set_re(R"(\{\s*([0-9\s,]*)\}\s*)");
  std::vector<std::vector<std::uint32_t>> sets;
  std::string rest = text;
  std::size_t pos = 0;
  while (pos < rest.size()) {
    while (pos < rest.size() && (rest[pos] == ',' || rest[pos] == ' ')) ++pos;
    if (pos == rest.size()) break;
    std::smatch m;
    const std::string tail = rest.substr(pos);
    if (!std::regex_search(tail, m, set_re, std::regex_constants::match_continuous))
      throw UsageError("cannot parse sets near '" + tail + "'");
    std::vector<std::uint32_t> set;
    std::stringstream in(m[1].str());
    std::string item;
    while (std::getline(in, item, ',')) {
      item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
      if (!item.empty()) set.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    }
    sets.push_back(std::move(set));
    pos += static_cast<std::size_t>(m.length(0));
  }
  return sets;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> parse_edges(const std::string& text) {
  static const std::regex edge_re(R"(^\s*([0-9]+)\s*-\s*([0-9]+)\s*$)");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(' ') == std::string::npos) continue;
    std::smatch m;
    if (!std::regex_match(item, m, edge_re)) throw UsageError("cannot parse edge '" + item + "'");
    edges.emplace_back(static_cast<std::uint32_t>(std::stoul(m[1].str())),
                       static_cast<std::uint32_t>(std::stoul(m[2].str())));
  }
  return edges;
}

struct GenArgs {
  std::string out;
  std::uint64_t seed = 0;
  // hitting-set
  std::string sets;
  std::size_t universe = 0;
  std::size_t k = 0;
  // graphs
  std::size_t parts = 0;
  std::size_t part_size = 1;
  std::string edges;
  unsigned edge_percent = 0;
  bool random_edges = false;
  // or2
  unsigned v1 = 0, v2 = 0;
  // compositions
  std::vector<std::string> inputs;
  // random
  std::size_t vars = 3, domain = 2, actions = 4, goal_percent = 50;
  bool P = false, U = false, B = false, S = false;
  std::optional<std::size_t> max_pre, max_eff;
};

MulticoloredGraph graph_from(const GenArgs& a) {
  MulticoloredGraph g{a.parts, a.part_size, {}};
  if (a.part_size == 0) throw UsageError("--size must be positive");
  if (a.random_edges) {
    std::mt19937_64 rng(a.seed);
    for (std::uint32_t x = 0; x < g.vertex_count(); ++x)
      for (std::uint32_t y = x + 1; y < g.vertex_count(); ++y)
        if (g.part_of(x) != g.part_of(y) && rng() % 100 < a.edge_percent) g.edges.emplace_back(x, y);
  } else {
    g.edges = parse_edges(a.edges);
  }
  try {
    return normalized(g);
  } catch (const ContractError& e) {
    throw UsageError(e.what());
  }
}

json graph_json(const MulticoloredGraph& g) {
  json edges = json::array();
  for (auto [x, y] : g.edges) edges.push_back({x, y});
  return json{{"parts", g.parts}, {"part_size", g.part_size}, {"edges", edges}};
}

int cmd_generate(const std::string& kind, const GenArgs& a, std::ostream& out, std::ostream& err) {
  Instance inst;
  json meta;
  meta["generator"] = kind;
  try {
    if (kind == "hitting-set") {
      HittingSetInput in{a.universe, parse_sets(a.sets), a.k};
      auto r = from_hitting_set(in);
      inst = std::move(r.instance);
      meta["source"] = json{{"universe", in.universe}, {"sets", in.sets}, {"k", in.k}};
      meta["bound"] = r.k;
      meta["expected_solvable"] = has_hitting_set(in);
    } else if (kind == "mcc-ubs" || kind == "mcc-03") {
      const auto g = graph_from(a);
      auto r = kind == "mcc-ubs" ? from_mcc_ubs(g) : from_mcc_03(g);
      inst = std::move(r.instance);
      meta["source"] = graph_json(g);
      meta["bound"] = r.k;
      meta["expected_solvable"] = has_multicolored_clique(g);
    } else if (kind == "or2") {
      inst = or2_instance(a.v1, a.v2);
      meta["source"] = json{{"v1", a.v1}, {"v2", a.v2}};
      meta["bound"] = 6;
      meta["expected_solvable"] = a.v1 == 1 || a.v2 == 1;
    } else if (kind == "compose-pub") {
      std::vector<Bounded> comps;
      json src = json::array();
      for (const auto& item : a.inputs) {
        const auto colon = item.rfind(':');
        if (colon == std::string::npos) throw UsageError("--input expects FILE:K, got '" + item + "'");
        const std::string file = item.substr(0, colon);
        std::size_t k = 0;
        try {
          k = std::stoul(item.substr(colon + 1));
        } catch (const std::exception&) {
          throw UsageError("bad bound in '" + item + "'");
        }
        comps.push_back({load_instance(file), k});
        src.push_back(json{{"file", file}, {"k", k}});
      }
      auto r = compose_pub(comps);
      inst = std::move(r.instance);
      meta["source"] = json{{"components", src}, {"prefixes", r.prefixes}};
      meta["k"] = r.k;
      meta["bound"] = r.bound;
    } else if (kind == "compose-02") {
      std::vector<Instance> comps;
      for (const auto& f : a.inputs) comps.push_back(load_instance(f));
      auto r = compose_zero_two(comps, a.k);
      inst = std::move(r.instance);
      meta["source"] = json{{"components", a.inputs}, {"prefixes", r.prefixes}};
      meta["k"] = r.k;
      meta["k_inner"] = r.k_inner;
      meta["bound"] = r.bound;
    } else {
      RandomProfile p{a.P, a.U, a.B, a.S, a.max_pre, a.max_eff};
      RandomSizes s{a.vars, a.domain, a.actions, static_cast<unsigned>(a.goal_percent)};
      inst = random_instance(p, s, a.seed);
      meta["source"] = json{{"vars", a.vars},       {"domain", a.domain}, {"actions", a.actions},
                            {"goal_percent", a.goal_percent}, {"P", a.P}, {"U", a.U},
                            {"B", a.B},             {"S", a.S}};
      if (a.max_pre) meta["source"]["max_pre"] = *a.max_pre;
      if (a.max_eff) meta["source"]["max_eff"] = *a.max_eff;
      meta["seed"] = a.seed;
    }
  } catch (const ContractError& e) {
    throw UsageError(e.what());
  }

  meta["vars"] = inst.var_count();
  meta["actions"] = inst.action_count();
  const std::string meta_path = a.out + ".meta.json";
  write_file(a.out, serialize_instance(inst));
  write_file(meta_path, meta.dump(2) + "\n");
  json j{{"instance", a.out}, {"meta", meta_path}, {"vars", inst.var_count()},
         {"actions", inst.action_count()}};
  if (meta.contains("bound")) j["bound"] = meta["bound"];
  out << j.dump() << "\n";
  err << "wrote " << a.out << " (" << inst.var_count() << " vars, " << inst.action_count()
      << " actions)\n";
  return kExitOk;
}

}  // namespace

std::string auto_route(const RestrictionProfile& p, std::optional<std::size_t> k) {
  if (p.post_unique) return "post-unique";
  if (p.max_pre == 0 && p.max_eff <= 2) return "zero-two";
  if (p.unary && (!k || *k <= kMaxSigma1K)) return "fo-mc";
  return "oracle";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounded-length SAS+ planning: classification, solvers, generators", "plan_lab"};
  app.require_subcommand(1);

  std::string file;
  auto* classify_cmd = app.add_subcommand("classify", "Report restriction profile and route");
  classify_cmd->add_option("instance", file, "Instance file")->required();

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "Look for a plan of length at most k");
  solve_cmd->add_option("instance", sa.file, "Instance file")->required();
  solve_cmd->add_option("--k", sa.k, "Plan length bound")->required();
  solve_cmd->add_option("--solver", sa.solver, "auto, oracle, post-unique, zero-two or fo-mc")
      ->check(CLI::IsMember({"auto", "oracle", "post-unique", "zero-two", "fo-mc"}));
  solve_cmd->add_option("--fragment", sa.fragment, "fo-mc formula: sigma22 or sigma1")
      ->check(CLI::IsMember({"sigma22", "sigma1"}));
  solve_cmd->add_flag("--stats", sa.stats, "Include search statistics");
  solve_cmd->add_option("--dot", sa.dot, "zero-two: write the Steiner graph as DOT");
  solve_cmd->add_option("--dump-fo", sa.dump_fo, "fo-mc: write the structure and formula");

  std::string plan_file;
  auto* validate_cmd = app.add_subcommand("validate", "Check a plan against an instance");
  validate_cmd->add_option("instance", file, "Instance file")->required();
  validate_cmd->add_option("plan", plan_file, "Plan file")->required();

  GenArgs ga;
  auto* gen = app.add_subcommand("generate", "Write a generated instance and its metadata");
  gen->require_subcommand(1);
  auto common = [&](CLI::App* c) {
    c->add_option("--out", ga.out, "Output instance path")->required();
    c->add_option("--seed", ga.seed, "Random seed");
  };
  auto graph_opts = [&](CLI::App* c) {
    c->add_option("--parts", ga.parts, "Number of color classes")->required();
    c->add_option("--size", ga.part_size, "Vertices per class");
    c->add_option("--edges", ga.edges, "Edges as 'x-y,...' over ids part*size+t");
    c->add_option("--edge-percent", ga.edge_percent, "Random edges with this probability")
        ->check(CLI::Range(0u, 100u));
  };
  auto* hs = gen->add_subcommand("hitting-set", "Hitting set reduction");
  hs->add_option("--sets", ga.sets, "Sets like {1,2},{2,3}")->required();
  hs->add_option("--universe", ga.universe, "Elements are 1..universe")->required();
  hs->add_option("--k", ga.k, "Hitting set size bound")->required();
  auto* ubs = gen->add_subcommand("mcc-ubs", "Multicolored clique to unary binary instance");
  auto* m03 = gen->add_subcommand("mcc-03", "Multicolored clique to (0,3) instance");
  graph_opts(ubs);
  graph_opts(m03);
  auto* or2 = gen->add_subcommand("or2", "Single OR2 gadget");
  or2->add_option("--v1", ga.v1, "Initial value of v1")->check(CLI::Range(0u, 1u));
  or2->add_option("--v2", ga.v2, "Initial value of v2")->check(CLI::Range(0u, 1u));
  auto* cpub = gen->add_subcommand("compose-pub", "OR-composition of P,U,B instances");
  cpub->add_option("--input", ga.inputs, "Component as FILE:K (repeat)")->required();
  auto* c02 = gen->add_subcommand("compose-02", "OR-composition of (0,2) instances");
  c02->add_option("--input", ga.inputs, "Component file (repeat)")->required();
  c02->add_option("--k", ga.k, "Common bound")->required();
  auto* rnd = gen->add_subcommand("random", "Seeded random instance");
  rnd->add_option("--vars", ga.vars);
  rnd->add_option("--domain", ga.domain);
  rnd->add_option("--actions", ga.actions);
  rnd->add_option("--goal-percent", ga.goal_percent)->check(CLI::Range(0, 100));
  rnd->add_flag("--P", ga.P, "Post-unique");
  rnd->add_flag("--U", ga.U, "Unary");
  rnd->add_flag("--B", ga.B, "Binary");
  rnd->add_flag("--S", ga.S, "Single-valued");
  rnd->add_option("--max-pre", ga.max_pre);
  rnd->add_option("--max-eff", ga.max_eff);
  for (auto* c : {hs, ubs, m03, or2, cpub, c02, rnd}) common(c);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    out << json{{"error", e.what()}, {"kind", "usage"}}.dump() << "\n";
    return kExitUsage;
  }

  try {
    if (*classify_cmd) return cmd_classify(file, out, err);
    if (*solve_cmd) return cmd_solve(sa, out, err);
    if (*validate_cmd) return cmd_validate(file, plan_file, out, err);
    for (auto* c : {hs, ubs, m03, or2, cpub, c02, rnd}) {
      if (!*c) continue;
      if (c == ubs || c == m03) {
        ga.random_edges = c->count("--edge-percent") > 0;
        if (ga.random_edges == (c->count("--edges") > 0))
          throw UsageError("give exactly one of --edges and --edge-percent");
      }
      return cmd_generate(c->get_name(), ga, out, err);
    }
  } catch (const ParseError& e) {
    out << json{{"error", e.what()}, {"kind", "parse"}}.dump() << "\n";
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    out << json{{"error", e.what()}, {"kind", "usage"}}.dump() << "\n";
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    out << json{{"error", e.what()}, {"kind", "internal"}}.dump() << "\n";
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace planlab

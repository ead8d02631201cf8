#include "planlab/zero_two.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "planlab/errors.hpp"

namespace planlab {

namespace {

void require_zero_two(const Instance& instance) {
  const auto p = classify(instance);
  if (p.max_pre != 0)
    throw ContractError("instance has preconditions (max_pre = " + std::to_string(p.max_pre) + ")");
  if (p.max_eff > 2)
    throw ContractError("instance has actions with more than two effects (max_eff = " +
                        std::to_string(p.max_eff) + ")");
}

// Good effect first, bad second, for a two-effect mixed action.
std::pair<Assignment, Assignment> split_mixed(const Instance& instance, ActionId id) {
  const auto pol = effect_polarity(instance, id);
  const auto& eff = instance.actions[id].eff.entries();
  if (pol.effects[0].polarity == Polarity::Good) return {eff[0], eff[1]};
  return {eff[1], eff[0]};
}

}  // namespace

TransformResult eliminate_two_effect_good_actions(const Instance& instance, std::size_t k) {
  check_instance(instance);
  require_zero_two(instance);

  InstanceBuilder b(std::max<Value>(instance.domain_size, 2));
  for (VarId v = 0; v < instance.var_count(); ++v) {
    b.add_var(instance.var_names[v], instance.init[v], instance.goal.get(v));
  }
  TransformResult out;
  out.k_prime = k * (k + 3) + 1;
  out.g = b.add_var("chain.g", 0, 0);
  out.chains.resize(instance.actions.size());
  out.chain_vars.resize(instance.actions.size());

  auto add = [&](ActionId src, const std::string& name, PartialState eff) {
    const ActionId id = b.add_action(name, {}, std::move(eff));
    out.origin.push_back(src);
    out.chains[src].push_back(id);
    return id;
  };

  for (ActionId src = 0; src < instance.actions.size(); ++src) {
    const Action& a = instance.actions[src];
    const auto pol = effect_polarity(instance, src).action;
    if (a.eff.empty() || pol == Polarity::Bad) continue;

    auto& vars = out.chain_vars[src];
    for (std::size_t i = 1; i <= k + 2; ++i)
      vars.push_back(b.add_var("chain." + a.name + "." + std::to_string(i), 0, 0));
    auto chain_var = [&](std::size_t i) { return vars[i - 1]; };  // 1-based
    auto name = [&](std::size_t i) { return a.name + "." + std::to_string(i); };

    if (pol == Polarity::Mixed) {
      const auto [good, bad] = split_mixed(instance, src);
      add(src, name(1), {{bad.var, bad.value}, {chain_var(1), 0}});
      for (std::size_t i = 2; i < k + 3; ++i)
        add(src, name(i), {{chain_var(i - 1), 1}, {chain_var(i), 0}});
      add(src, name(k + 3), {{chain_var(k + 2), 1}, {good.var, good.value}});
    } else if (a.eff.size() == 1) {
      const Assignment e = a.eff.entries()[0];
      add(src, name(1), {{out.g, 1}, {chain_var(1), 0}});
      for (std::size_t i = 2; i < k + 3; ++i)
        add(src, name(i), {{chain_var(i - 1), 1}, {chain_var(i), 0}});
      add(src, name(k + 3), {{chain_var(k + 2), 1}, {e.var, e.value}});
    } else {
      const Assignment e1 = a.eff.entries()[0];
      const Assignment e2 = a.eff.entries()[1];
      add(src, name(1), {{out.g, 1}, {chain_var(1), 0}});
      for (std::size_t i = 2; i < k + 2; ++i)
        add(src, name(i), {{chain_var(i - 1), 1}, {chain_var(i), 0}});
      add(src, name(k + 2), {{chain_var(k + 1), 1}, {e1.var, e1.value}});
      add(src, name(k + 3), {{chain_var(k + 1), 1}, {e2.var, e2.value}});
    }
  }
  out.a_g = b.add_action("a_g", {}, {{out.g, 0}});
  out.origin.push_back(std::nullopt);
  out.instance = b.build();
  return out;
}

SteinerInstance build_dst(const Instance& instance, std::size_t bound) {
  check_instance(instance);
  require_zero_two(instance);
  SteinerInstance dst;
  dst.node_count = instance.var_count() + 1;
  dst.bound = bound;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> seen;
  auto arc = [&](std::uint32_t tail, std::uint32_t head, ActionId id) {
    if (seen.emplace(std::pair{tail, head}, dst.arcs.size()).second)
      dst.arcs.push_back({tail, head, id});
  };
  for (ActionId id = 0; id < instance.actions.size(); ++id) {
    const Action& a = instance.actions[id];
    if (a.eff.empty()) continue;
    const auto pol = effect_polarity(instance, id).action;
    if (pol == Polarity::Bad) continue;
    if (pol == Polarity::Good) {
      if (a.eff.size() != 1)
        throw ContractError("good action " + a.name + " has two effects; transform first");
      arc(dst.root, steiner_node(a.eff.entries()[0].var), id);
    } else {
      const auto [good, bad] = split_mixed(instance, id);
      arc(steiner_node(bad.var), steiner_node(good.var), id);
    }
  }
  for (VarId v : delta_vars(instance)) dst.terminals.push_back(steiner_node(v));
  return dst;
}

std::optional<SteinerSolution> dreyfus_wagner(const SteinerInstance& dst,
                                              DreyfusWagnerStats* stats) {
  const std::size_t t = dst.terminals.size();
  if (t > kMaxSteinerTerminals)
    throw ContractError("too many Steiner terminals (" + std::to_string(t) + " > " +
                        std::to_string(kMaxSteinerTerminals) + ")");
  const std::size_t n = dst.node_count;
  if (stats) stats->cells = 0;
  if (t == 0) return SteinerSolution{};

  constexpr std::uint32_t inf = std::numeric_limits<std::uint32_t>::max() / 4;
  constexpr std::size_t none = ~std::size_t{0};

  // Out-arcs and all-pairs hop distances with next-arc pointers.
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t i = 0; i < dst.arcs.size(); ++i) out[dst.arcs[i].tail].push_back(i);
  std::vector<std::uint32_t> dist(n * n, inf);
  std::vector<std::size_t> first_arc(n * n, none);  // first arc on a shortest u->w path
  for (std::size_t u = 0; u < n; ++u) {
    std::vector<std::size_t> queue{u};
    dist[u * n + u] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const std::size_t x = queue[qi];
      for (std::size_t ai : out[x]) {
        const std::size_t y = dst.arcs[ai].head;
        if (dist[u * n + y] != inf) continue;
        dist[u * n + y] = dist[u * n + x] + 1;
        first_arc[u * n + y] = x == u ? ai : first_arc[u * n + x];
        queue.push_back(y);
      }
    }
  }

  // dp[S][v]: cheapest arborescence rooted at v reaching every terminal in S.
  // Back-pointers: via[S][v] is the branching node u; split[S][u] the subset.
  const std::size_t full = (std::size_t{1} << t) - 1;
  std::vector<std::uint32_t> dp((full + 1) * n, inf);
  std::vector<std::uint32_t> branch((full + 1) * n, inf);
  std::vector<std::size_t> via((full + 1) * n, none);
  std::vector<std::size_t> split((full + 1) * n, 0);
  if (stats) stats->cells = (full + 1) * n;

  for (std::size_t i = 0; i < t; ++i) {
    const std::size_t s = std::size_t{1} << i;
    for (std::size_t v = 0; v < n; ++v) {
      dp[s * n + v] = dist[v * n + dst.terminals[i]];
      via[s * n + v] = dst.terminals[i];
    }
  }
  for (std::size_t s = 1; s <= full; ++s) {
    if ((s & (s - 1)) == 0) continue;
    for (std::size_t u = 0; u < n; ++u) {
      std::uint32_t best = inf;
      std::size_t arg = 0;
      // Proper non-empty subsets containing the lowest bit of s: each split once.
      const std::size_t low = s & (~s + 1);
      for (std::size_t a = (s - 1) & s; a > 0; a = (a - 1) & s) {
        if (!(a & low)) continue;
        const std::uint32_t c = dp[a * n + u] + dp[(s ^ a) * n + u];
        if (c < best) {
          best = c;
          arg = a;
        }
      }
      branch[s * n + u] = best;
      split[s * n + u] = arg;
    }
    for (std::size_t v = 0; v < n; ++v) {
      std::uint32_t best = inf;
      std::size_t arg = none;
      for (std::size_t u = 0; u < n; ++u) {
        if (dist[v * n + u] >= inf || branch[s * n + u] >= inf) continue;
        const std::uint32_t c = dist[v * n + u] + branch[s * n + u];
        if (c < best) {
          best = c;
          arg = u;
        }
      }
      dp[s * n + v] = best;
      via[s * n + v] = arg;
    }
  }

  const std::uint32_t opt = dp[full * n + dst.root];
  if (opt >= inf || opt > dst.bound) return std::nullopt;

  // Reconstruct, then prune to an arborescence.
  std::vector<char> used(dst.arcs.size(), 0);
  auto path = [&](std::size_t from, std::size_t to) {
    while (from != to) {
      const std::size_t ai = first_arc[from * n + to];
      used[ai] = 1;
      from = dst.arcs[ai].head;
    }
  };
  auto rebuild = [&](auto&& self, std::size_t s, std::size_t v) -> void {
    const std::size_t u = via[s * n + v];
    path(v, u);
    if ((s & (s - 1)) == 0) return;
    const std::size_t a = split[s * n + u];
    self(self, a, u);
    self(self, s ^ a, u);
  };
  rebuild(rebuild, full, dst.root);

  std::vector<std::vector<std::size_t>> tree_out(n);
  for (std::size_t i = 0; i < dst.arcs.size(); ++i) {
    if (used[i]) tree_out[dst.arcs[i].tail].push_back(i);
  }
  std::vector<std::size_t> in_arc(n, none);
  std::vector<char> reached(n, 0);
  std::vector<std::size_t> queue{dst.root};
  reached[dst.root] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (std::size_t ai : tree_out[queue[qi]]) {
      const std::size_t y = dst.arcs[ai].head;
      if (reached[y]) continue;
      reached[y] = 1;
      in_arc[y] = ai;
      queue.push_back(y);
    }
  }
  std::vector<char> keep(n, 0);
  for (std::uint32_t term : dst.terminals) {
    for (std::size_t x = term; x != dst.root && !keep[x]; x = dst.arcs[in_arc[x]].tail) keep[x] = 1;
  }
  SteinerSolution sol;
  for (std::size_t x = 0; x < n; ++x) {
    if (keep[x]) sol.arcs.push_back(in_arc[x]);
  }
  std::sort(sol.arcs.begin(), sol.arcs.end());
  sol.weight = sol.arcs.size();
  if (sol.weight != opt) throw std::logic_error("Steiner tree reconstruction lost optimality");
  return sol;
}

Plan extract_plan(const Instance& instance, const SteinerInstance& dst,
                  const std::vector<std::size_t>& arcs) {
  const std::size_t n = dst.node_count;
  constexpr std::size_t none = ~std::size_t{0};
  std::vector<std::size_t> in_arc(n, none);
  for (std::size_t ai : arcs) {
    if (ai >= dst.arcs.size()) throw ContractError("arc index out of range");
    const auto& a = dst.arcs[ai];
    if (a.head == dst.root) throw ContractError("arc into the root");
    if (in_arc[a.head] != none) throw ContractError("node with two incoming arcs: not a tree");
    in_arc[a.head] = ai;
  }
  // Depth by walking to the root; a cycle never reaches it.
  std::vector<std::size_t> depth(n, none);
  depth[dst.root] = 0;
  auto depth_of = [&](std::size_t x) {
    std::vector<std::size_t> trail;
    while (depth[x] == none) {
      if (in_arc[x] == none || trail.size() > n)
        throw ContractError("arc set is not a tree rooted at the root");
      trail.push_back(x);
      x = dst.arcs[in_arc[x]].tail;
    }
    std::size_t d = depth[x];
    for (auto it = trail.rbegin(); it != trail.rend(); ++it) depth[*it] = ++d;
  };
  for (std::size_t ai : arcs) depth_of(dst.arcs[ai].tail);

  std::vector<std::pair<std::size_t, ActionId>> order;
  for (std::size_t ai : arcs) order.emplace_back(depth[dst.arcs[ai].tail], dst.arcs[ai].action);
  std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first > y.first;
    return x.second < y.second;
  });
  Plan plan;
  for (const auto& [d, id] : order) {
    if (id >= instance.actions.size()) throw ContractError("arc maps to an unknown action");
    plan.steps.push_back(id);
  }
  return plan;
}

ZeroTwoResult solve_zero_two(const Instance& instance, std::size_t k) {
  check_instance(instance);
  require_zero_two(instance);

  bool needs_transform = false;
  for (ActionId id = 0; id < instance.actions.size(); ++id) {
    if (instance.actions[id].eff.size() == 2 &&
        effect_polarity(instance, id).action == Polarity::Good)
      needs_transform = true;
  }

  ZeroTwoResult result;
  result.transformed = needs_transform;
  std::optional<TransformResult> tr;
  const Instance* work = &instance;
  result.steiner_bound = k;
  if (needs_transform) {
    tr = eliminate_two_effect_good_actions(instance, k);
    work = &tr->instance;
    result.steiner_bound = tr->k_prime;
  }

  result.dst = build_dst(*work, result.steiner_bound);
  DreyfusWagnerStats stats;
  const auto sol = dreyfus_wagner(result.dst, &stats);
  result.dp_cells = stats.cells;
  if (!sol) return result;
  result.steiner_weight = sol->weight;
  result.tree = sol->arcs;
  result.inner_plan = extract_plan(*work, result.dst, sol->arcs);
  if (!validate_plan(*work, result.inner_plan).valid)
    throw std::logic_error("extracted plan does not validate");

  Plan plan;
  if (tr) {
    std::vector<char> taken(instance.actions.size(), 0);
    for (ActionId id : result.inner_plan.steps) {
      const auto src = tr->origin[id];
      if (src && !taken[*src]) {
        taken[*src] = 1;
        plan.steps.push_back(*src);
      }
    }
  } else {
    plan = result.inner_plan;
  }
  if (!validate_plan(instance, plan).valid)
    throw std::logic_error("projected plan does not validate");
  if (plan.size() > k) throw std::logic_error("projected plan exceeds the bound");
  result.plan = std::move(plan);
  return result;
}

std::string steiner_to_dot(const SteinerInstance& dst, const Instance& instance,
                           const std::vector<std::size_t>& highlight) {
  std::vector<char> bold(dst.arcs.size(), 0);
  for (std::size_t ai : highlight) {
    if (ai < bold.size()) bold[ai] = 1;
  }
  std::vector<char> terminal(dst.node_count, 0);
  for (auto t : dst.terminals) terminal[t] = 1;
  auto label = [&](std::size_t node) {
    return node == dst.root ? std::string("s") : instance.var_names.at(node - 1);
  };
  std::ostringstream out;
  out << "digraph steiner {\n";
  for (std::size_t x = 0; x < dst.node_count; ++x) {
    out << "  n" << x << " [label=\"" << label(x) << "\"";
    if (terminal[x]) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (std::size_t i = 0; i < dst.arcs.size(); ++i) {
    const auto& a = dst.arcs[i];
    out << "  n" << a.tail << " -> n" << a.head << " [label=\""
        << instance.actions.at(a.action).name << "\"";
    if (bold[i]) out << ", style=bold";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace planlab

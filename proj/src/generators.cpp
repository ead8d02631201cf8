#include "planlab/generators.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "planlab/errors.hpp"
#include "planlab/instance_io.hpp"

namespace planlab {

namespace {

std::string num(std::size_t x) { return std::to_string(x); }

}  // namespace

// --- hitting set ----------------------------------------------------------

Bounded from_hitting_set(const HittingSetInput& input) {
  for (const auto& c : input.sets)
    for (auto s : c)
      if (s < 1 || s > input.universe)
        throw ContractError("hitting set element " + num(s) + " outside 1.." + num(input.universe));

  InstanceBuilder b(2);
  for (std::size_t c = 0; c < input.sets.size(); ++c) b.add_var("c" + num(c + 1), 0, 1);
  for (std::uint32_t s = 1; s <= input.universe; ++s) {
    PartialState eff;
    for (std::size_t c = 0; c < input.sets.size(); ++c) {
      const auto& set = input.sets[c];
      if (std::find(set.begin(), set.end(), s) != set.end()) eff.set(static_cast<VarId>(c), 1);
    }
    b.add_action("a" + num(s), {}, std::move(eff));
  }
  return {b.build(), input.k};
}

bool has_hitting_set(const HittingSetInput& input) {
  const std::size_t u = input.universe;
  if (u >= 63) throw ContractError("brute-force hitting set limited to 62 elements");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << u); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) > input.k) continue;
    bool ok = true;
    for (const auto& c : input.sets) {
      bool hit = false;
      for (auto s : c) hit = hit || ((mask >> (s - 1)) & 1U);
      if (!hit) { ok = false; break; }
    }
    if (ok) return true;
  }
  return false;
}

// --- multicolored clique --------------------------------------------------

MulticoloredGraph normalized(const MulticoloredGraph& graph) {
  MulticoloredGraph g = graph;
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  g.edges.clear();
  for (auto [a, c] : graph.edges) {
    if (a >= graph.vertex_count() || c >= graph.vertex_count())
      throw ContractError("edge endpoint out of range");
    if (graph.part_of(a) == graph.part_of(c)) throw ContractError("edge inside a part");
    if (a > c) std::swap(a, c);
    if (seen.insert({a, c}).second) g.edges.emplace_back(a, c);
  }
  return g;
}

bool has_multicolored_clique(const MulticoloredGraph& graph) {
  const auto g = normalized(graph);
  std::set<std::pair<std::uint32_t, std::uint32_t>> adj(g.edges.begin(), g.edges.end());
  std::vector<std::uint32_t> pick;
  auto rec = [&](auto&& self, std::size_t part) -> bool {
    if (part == g.parts) return true;
    for (std::size_t t = 0; t < g.part_size; ++t) {
      const auto v = g.vertex(part, t);
      bool ok = true;
      for (auto w : pick) ok = ok && adj.count({w, v});
      if (!ok) continue;
      pick.push_back(v);
      if (self(self, part + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return rec(rec, 0);
}

std::size_t binom2(std::size_t k) { return k * (k - (k > 0 ? 1 : 0)) / 2; }

namespace {

std::string vertex_name(const MulticoloredGraph& g, std::uint32_t v) {
  return "p" + num(g.part_of(v) + 1) + "v" + num(v % g.part_size + 1);
}

}  // namespace

Bounded from_mcc_ubs(const MulticoloredGraph& graph) {
  const auto g = normalized(graph);
  const std::size_t k = g.parts;
  InstanceBuilder b(2);

  std::vector<VarId> edge_var;
  for (auto [x, y] : g.edges)
    edge_var.push_back(b.add_var("e." + vertex_name(g, x) + "." + vertex_name(g, y), 0));

  // x(v, j) for j != part(v); goal 0
  std::map<std::pair<std::uint32_t, std::size_t>, VarId> vertex_var;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
    for (std::size_t j = 0; j < k; ++j)
      if (j != g.part_of(v))
        vertex_var[{v, j}] = b.add_var("x." + vertex_name(g, v) + "." + num(j + 1), 0, 0);

  std::map<std::pair<std::size_t, std::size_t>, VarId> check_var;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j) check_var[{i, j}] = b.add_var("chk." + num(i + 1) + "." + num(j + 1), 0, 1);

  std::vector<VarId> clean_var;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
    clean_var.push_back(b.add_var("cl." + vertex_name(g, v), 0));

  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [x, y] = g.edges[e];
    const std::string en = vertex_name(g, x) + "." + vertex_name(g, y);
    b.add_action("ae." + en, {}, {{edge_var[e], 1}});
    b.add_action("ae." + en + ".1", {{edge_var[e], 1}}, {{vertex_var.at({x, g.part_of(y)}), 1}});
    b.add_action("ae." + en + ".2", {{edge_var[e], 1}}, {{vertex_var.at({y, g.part_of(x)}), 1}});
  }
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    const std::size_t i = g.part_of(v);
    const std::string vn = vertex_name(g, v);
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      b.add_action("av." + vn + "." + num(j + 1), {{vertex_var.at({v, j}), 1}},
                   {{check_var.at({i, j}), 1}});
    }
    b.add_action("acl." + vn, {}, {{clean_var[v], 1}});
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      b.add_action("acl." + vn + "." + num(j + 1), {{clean_var[v], 1}},
                   {{vertex_var.at({v, j}), 0}});
    }
  }
  return {b.build(), 7 * binom2(k) + k};
}

Bounded from_mcc_03(const MulticoloredGraph& graph) {
  const auto g = normalized(graph);
  const std::size_t k = g.parts;
  InstanceBuilder b(2);
  std::vector<VarId> vv;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) vv.push_back(b.add_var(vertex_name(g, v), 0, 0));
  std::map<std::pair<std::size_t, std::size_t>, VarId> pv;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      pv[{i, j}] = b.add_var("pair." + num(i + 1) + "." + num(j + 1), 0, 1);

  for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
    b.add_action("reset." + vertex_name(g, v), {}, {{vv[v], 0}});
  for (auto [x, y] : g.edges) {
    auto i = g.part_of(x), j = g.part_of(y);
    if (i > j) std::swap(i, j);
    b.add_action("edge." + vertex_name(g, x) + "." + vertex_name(g, y), {},
                 {{vv[x], 1}, {vv[y], 1}, {pv.at({i, j}), 1}});
  }
  return {b.build(), binom2(k) + k};
}

// --- OR gadget ------------------------------------------------------------

Or2Gadget or2_gadget(InstanceBuilder& b, VarId v1, VarId v2, const std::string& prefix) {
  const auto& peek = b.peek();
  if (v1 >= peek.var_count() || v2 >= peek.var_count())
    throw ContractError("OR2 input is not a variable of the instance");
  if (peek.domain_size != 2) throw ContractError("OR2 gadget needs a binary instance");

  Or2Gadget g;
  g.o1 = b.add_var(prefix + "o1", 0);
  g.o2 = b.add_var(prefix + "o2", 0);
  g.o = b.add_var(prefix + "o", 0);
  g.i1 = b.add_var(prefix + "i1", 0);
  g.i2 = b.add_var(prefix + "i2", 0);
  g.actions = {
      b.add_action(prefix + "a_o", {{g.o1, 1}, {g.o2, 1}}, {{g.o, 1}}),
      b.add_action(prefix + "a_o1", {{g.i1, 1}, {g.i2, 0}}, {{g.o1, 1}}),
      b.add_action(prefix + "a_o2", {{g.i1, 0}, {g.i2, 1}}, {{g.o2, 1}}),
      b.add_action(prefix + "a_i1", {}, {{g.i1, 1}}),
      b.add_action(prefix + "a_i2", {}, {{g.i2, 1}}),
      b.add_action(prefix + "a_v1", {{v1, 1}}, {{g.i1, 0}}),
      b.add_action(prefix + "a_v2", {{v2, 1}}, {{g.i2, 0}}),
  };
  return g;
}

std::size_t ceil_log2(std::size_t t) {
  std::size_t d = 0;
  while ((std::size_t{1} << d) < t) ++d;
  return d;
}

OrTree or_tree(InstanceBuilder& b, const std::vector<VarId>& inputs, const std::string& prefix) {
  if (inputs.empty()) throw ContractError("OR tree needs at least one input");
  OrTree tree;
  auto gadget = [&](VarId x, VarId y) {
    ++tree.gadgets;
    return or2_gadget(b, x, y, prefix + num(tree.gadgets) + ".").o;
  };
  if (inputs.size() == 1) {
    tree.o = gadget(inputs[0], inputs[0]);
    tree.depth = 1;
    return tree;
  }
  std::vector<VarId> level = inputs;
  while (level.size() > 1) {
    std::vector<VarId> next;
    for (std::size_t i = 0; i < level.size(); i += 2)
      next.push_back(gadget(level[i], i + 1 < level.size() ? level[i + 1] : level[i]));
    level = std::move(next);
    ++tree.depth;
  }
  tree.o = level[0];
  return tree;
}

Instance or2_instance(Value v1, Value v2) {
  if (v1 > 1 || v2 > 1) throw ContractError("OR2 inputs must be 0 or 1");
  InstanceBuilder b(2);
  const VarId x = b.add_var("v1", v1);
  const VarId y = b.add_var("v2", v2);
  const auto g = or2_gadget(b, x, y, "");
  b.set_goal(g.o, 1);
  return b.build();
}

// --- compositions ---------------------------------------------------------

namespace {

/// Copies every variable and action of `src` into `b` with a name prefix.
/// Returns the new id of each source variable.
std::vector<VarId> embed(InstanceBuilder& b, const Instance& src, const std::string& prefix,
                         const TotalState& init, bool with_goal, const Action* skip = nullptr) {
  std::vector<VarId> map;
  for (VarId v = 0; v < src.var_count(); ++v)
    map.push_back(b.add_var(prefix + src.var_names[v], init[v],
                            with_goal ? src.goal.get(v) : std::nullopt));
  auto remap = [&](const PartialState& s) {
    PartialState out;
    for (const auto& [v, x] : s) out.set(map[v], x);
    return out;
  };
  for (const auto& a : src.actions) {
    if (skip && &a == skip) continue;
    b.add_action(prefix + a.name, remap(a.pre), remap(a.eff));
  }
  return map;
}

}  // namespace

Composition compose_pub(const std::vector<Bounded>& components) {
  if (components.size() < 2) throw ContractError("composition needs at least two components");
  Composition out;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& inst = components[i].instance;
    check_instance(inst);
    const auto p = classify(inst);
    if (!p.post_unique || !p.unary || !p.binary)
      throw ContractError("component " + num(i + 1) + " is not post-unique, unary and binary");
    out.k = std::max(out.k, components[i].k);
  }

  InstanceBuilder b(2);
  std::vector<VarId> detectors;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& [inst, ki] = components[i];
    const std::string pre = "c" + num(i + 1) + ".";
    out.prefixes.push_back(pre);
    const auto map = embed(b, inst, pre, inst.init, false);

    // padding chain p_{k_i} .. p_k; the last one feeds the OR tree
    PartialState goal;
    for (const auto& [v, x] : inst.goal) goal.set(map[v], x);
    VarId last = 0;
    for (std::size_t j = ki; j <= out.k; ++j) {
      const VarId p = b.add_var("pad" + num(i + 1) + "." + num(j), 0);
      PartialState cond = j == ki ? goal : PartialState{{last, 1}};
      b.add_action("pad" + num(i + 1) + "." + num(j) + ".a", std::move(cond), {{p, 1}});
      last = p;
    }
    detectors.push_back(last);
  }
  const auto tree = or_tree(b, detectors, "or");
  b.set_goal(tree.o, 1);
  out.instance = b.build();
  out.bound = out.k + 1 + 6 * ceil_log2(components.size());
  return out;
}

Composition compose_zero_two(const std::vector<Instance>& components, std::size_t k) {
  if (components.empty()) throw ContractError("composition needs at least one component");
  Composition out;
  out.k = k;
  out.k_inner = k * (k + 3) + 1;
  const std::size_t kp = out.k_inner;
  out.bound = 4 * kp + 1;

  std::vector<TransformResult> transformed;
  Value domain = 2;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& inst = components[i];
    const auto delta = delta_vars(inst);
    if (delta.empty())
      throw ContractError("component " + num(i + 1) +
                          " has its goal satisfied initially; such a component is solved by the "
                          "empty plan and cannot be composed");
    if (delta.size() > kp)
      throw ContractError("component " + num(i + 1) + " has more than k(k+3)+1 goal variables "
                          "differing from the initial state");
    transformed.push_back(eliminate_two_effect_good_actions(inst, k));
    domain = std::max(domain, transformed.back().instance.domain_size);
  }

  InstanceBuilder b(domain);
  std::vector<std::vector<VarId>> maps;
  for (std::size_t i = 0; i < transformed.size(); ++i) {
    const auto& t = transformed[i];
    const Instance& src = t.instance;
    TotalState init = src.init;
    for (const auto& [v, x] : src.goal) init[v] = x;
    const std::string pre = "c" + num(i + 1) + ".";
    out.prefixes.push_back(pre);
    maps.push_back(embed(b, src, pre, init, true, &src.actions[t.a_g]));
  }

  std::vector<VarId> bvar;
  for (std::size_t j = 1; j <= kp; ++j) bvar.push_back(b.add_var("b" + num(j), 1, 0));
  std::vector<std::vector<VarId>> pvar(transformed.size());
  for (std::size_t i = 0; i < transformed.size(); ++i)
    for (std::size_t j = 1; j < 2 * kp; ++j)
      pvar[i].push_back(b.add_var("p" + num(i + 1) + "." + num(j), 0, 0));
  const VarId r = b.add_var("r", 0, 0);

  b.add_action("a_r", {}, {{r, 0}});
  for (std::size_t i = 0; i < transformed.size(); ++i) {
    const std::string ai = "a_" + num(i + 1);
    auto p = [&](std::size_t j) { return pvar[i][j - 1]; };  // 1-based
    b.add_action(sanitize_name(ai + "(r)"), {}, {{r, 1}, {p(1), 0}});
    for (std::size_t j = 1; j + 1 < 2 * kp; ++j)
      b.add_action(sanitize_name(ai + "," + num(j)), {}, {{p(j), 1}, {p(j + 1), 0}});
    b.add_action(sanitize_name(ai + "(g)"), {},
                 {{p(2 * kp - 1), 1}, {maps[i][transformed[i].g], 0}});

    const Instance& src = components[i];
    const auto delta = delta_vars(src);
    for (std::size_t j = 1; j <= kp; ++j) {
      const VarId v = delta[std::min(j, delta.size()) - 1];
      b.add_action(sanitize_name(ai + "(b_" + num(j) + ")"), {},
                   {{maps[i][v], src.init[v]}, {bvar[j - 1], 0}});
    }
  }
  out.instance = b.build();
  return out;
}

// --- random ---------------------------------------------------------------

Instance random_instance(const RandomProfile& profile, const RandomSizes& sizes,
                         std::uint64_t seed) {
  const std::size_t n = sizes.vars;
  const std::size_t d = sizes.domain;
  const std::size_t m = sizes.actions;
  const std::size_t max_pre = std::min(profile.max_pre.value_or(n), n);
  const std::size_t max_eff = std::min(profile.max_eff.value_or(n), n);

  if (d < 1) throw ContractError("domain size must be at least 1");
  if (profile.binary && d != 2) throw ContractError("binary profile needs domain size 2");
  if (m > 0 && (n == 0 || max_eff == 0))
    throw ContractError("actions need at least one effect but none is allowed");
  if (profile.post_unique && m > n * d)
    throw ContractError("post-unique profile allows at most vars*domain actions");

  std::mt19937_64 rng(seed);
  auto draw = [&](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };

  InstanceBuilder b(static_cast<Value>(d));
  for (std::size_t v = 0; v < n; ++v) {
    const auto init = static_cast<Value>(draw(d));
    std::optional<Value> goal;
    if (draw(100) < sizes.goal_percent) goal = static_cast<Value>(draw(d));
    b.add_var(default_var_name(static_cast<VarId>(v)), init, goal);
  }

  std::set<std::pair<VarId, Value>> produced;
  std::map<VarId, Value> prevail;
  for (std::size_t a = 0; a < m; ++a) {
    PartialState eff;
    const std::size_t want = profile.unary ? 1 : 1 + draw(max_eff);
    if (profile.post_unique) {
      // the first effect must exist: pick among all unused pairs
      std::vector<std::pair<VarId, Value>> free;
      for (VarId v = 0; v < n; ++v)
        for (Value x = 0; x < d; ++x)
          if (!produced.count({v, x})) free.emplace_back(v, x);
      const auto first = free[draw(free.size())];
      eff.set(first.first, first.second);
      // keep one unused pair for every later action
      const std::size_t spare = free.size() - (m - a);
      for (std::size_t tries = 0; eff.size() < want && eff.size() <= spare && tries < 4 * n;
           ++tries) {
        const auto v = static_cast<VarId>(draw(n));
        const auto x = static_cast<Value>(draw(d));
        if (!eff.defined(v) && !produced.count({v, x})) eff.set(v, x);
      }
      for (const auto& [v, x] : eff) produced.insert({v, x});
    } else {
      while (eff.size() < want) {
        const auto v = static_cast<VarId>(draw(n));
        if (!eff.defined(v)) eff.set(v, static_cast<Value>(draw(d)));
      }
    }

    PartialState pre;
    const std::size_t npre = draw(max_pre + 1);
    for (std::size_t tries = 0; pre.size() < npre && tries < 4 * n; ++tries) {
      const auto v = static_cast<VarId>(draw(n));
      if (pre.defined(v)) continue;
      auto x = static_cast<Value>(draw(d));
      if (profile.single_valued && !eff.defined(v)) {
        x = prevail.emplace(v, x).first->second;
      }
      pre.set(v, x);
    }
    b.add_action("a" + num(a + 1), std::move(pre), std::move(eff));
  }
  return b.build();
}

}  // namespace planlab

#include "planlab/sas.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "planlab/errors.hpp"

namespace planlab {

// --- PartialState ---------------------------------------------------------

PartialState::PartialState(std::initializer_list<Assignment> entries) {
  for (const auto& a : entries) set(a.var, a.value);
}

std::optional<Value> PartialState::get(VarId v) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                             [](const Assignment& a, VarId key) { return a.var < key; });
  if (it == entries_.end() || it->var != v) return std::nullopt;
  return it->value;
}

void PartialState::set(VarId v, Value x) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                             [](const Assignment& a, VarId key) { return a.var < key; });
  if (it != entries_.end() && it->var == v) {
    it->value = x;
  } else {
    entries_.insert(it, Assignment{v, x});
  }
}

bool PartialState::insert(VarId v, Value x) {
  if (defined(v)) return false;
  set(v, x);
  return true;
}

void PartialState::erase(VarId v) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                             [](const Assignment& a, VarId key) { return a.var < key; });
  if (it != entries_.end() && it->var == v) entries_.erase(it);
}

// --- Instance -------------------------------------------------------------

std::string default_var_name(VarId v) { return "v" + std::to_string(v + 1); }

namespace {

void check_partial(const Instance& instance, const PartialState& s,
                   const std::string& where) {
  for (const auto& [v, x] : s) {
    if (v >= instance.var_count())
      throw StructuralError(where + ": variable index " + std::to_string(v) +
                            " out of range");
    if (x >= instance.domain_size)
      throw StructuralError(where + ": value " + std::to_string(x) +
                            " out of range for variable " + std::to_string(v));
  }
}

}  // namespace

void check_instance(const Instance& instance) {
  if (instance.domain_size < 1) throw StructuralError("domain size must be at least 1");
  if (instance.var_names.size() != instance.var_count())
    throw StructuralError("variable name count does not match variable count");
  for (std::size_t v = 0; v < instance.init.size(); ++v) {
    if (instance.init[v] >= instance.domain_size)
      throw StructuralError("init value out of range for variable " + std::to_string(v));
  }
  check_partial(instance, instance.goal, "goal");
  std::unordered_set<std::string> names;
  for (const auto& a : instance.actions) {
    check_partial(instance, a.pre, "action " + a.name + " pre");
    check_partial(instance, a.eff, "action " + a.name + " eff");
    if (!names.insert(a.name).second)
      throw StructuralError("duplicate action name " + a.name);
  }
  names.clear();
  for (const auto& n : instance.var_names) {
    if (!names.insert(n).second) throw StructuralError("duplicate variable name " + n);
  }
}

std::vector<std::string> lint_instance(const Instance& instance) {
  std::vector<std::string> warnings;
  for (const auto& a : instance.actions) {
    if (a.eff.empty()) warnings.push_back("action " + a.name + " has no effects");
  }
  return warnings;
}

VarId InstanceBuilder::add_var(std::string name, Value init, std::optional<Value> goal) {
  const auto v = static_cast<VarId>(instance_.init.size());
  instance_.var_names.push_back(std::move(name));
  instance_.init.push_back(init);
  if (goal) instance_.goal.set(v, *goal);
  return v;
}

ActionId InstanceBuilder::add_action(std::string name, PartialState pre, PartialState eff) {
  const auto id = static_cast<ActionId>(instance_.actions.size());
  instance_.actions.push_back(Action{std::move(name), std::move(pre), std::move(eff)});
  return id;
}

Instance InstanceBuilder::build() const {
  check_instance(instance_);
  return instance_;
}

// --- plan semantics -------------------------------------------------------

bool action_valid_in(const TotalState& state, const Action& action) {
  for (const auto& [v, x] : action.pre) {
    if (v >= state.size())
      throw StructuralError("action " + action.name + " references variable " +
                            std::to_string(v) + " outside the state");
    if (state[v] != x) return false;
  }
  return true;
}

TotalState apply(const TotalState& state, const Action& action) {
  TotalState out = state;
  for (const auto& [v, x] : action.eff) {
    if (v >= out.size())
      throw StructuralError("action " + action.name + " references variable " +
                            std::to_string(v) + " outside the state");
    out[v] = x;
  }
  return out;
}

bool is_goal_state(const Instance& instance, const TotalState& state) {
  for (const auto& [v, x] : instance.goal) {
    if (state.at(v) != x) return false;
  }
  return true;
}

ValidationReport validate_plan(const Instance& instance, const Plan& plan) {
  ValidationReport report;
  TotalState state = instance.init;
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const ActionId id = plan.steps[i];
    if (id >= instance.actions.size())
      throw StructuralError("plan step " + std::to_string(i) + " references unknown action " +
                            std::to_string(id));
    const Action& a = instance.actions[id];
    for (const auto& [v, x] : a.pre) {
      if (v >= state.size()) throw StructuralError("action " + a.name + " out of range");
      if (state[v] != x) {
        report.failure = PlanFailure::Precondition;
        report.step = i;
        report.var = v;
        report.final_state = std::move(state);
        return report;
      }
    }
    for (const auto& [v, x] : a.eff) state[v] = x;
  }
  for (const auto& [v, x] : instance.goal) {
    if (state[v] != x) {
      report.failure = PlanFailure::GoalMiss;
      report.step = plan.steps.size();
      report.var = v;
      report.final_state = std::move(state);
      return report;
    }
  }
  report.valid = true;
  report.final_state = std::move(state);
  return report;
}

bool is_valid_plan(const Instance& instance, std::span<const ActionId> steps) {
  TotalState state = instance.init;
  for (ActionId id : steps) {
    const Action& a = instance.actions.at(id);
    if (!action_valid_in(state, a)) return false;
    for (const auto& [v, x] : a.eff) state[v] = x;
  }
  return is_goal_state(instance, state);
}

bool is_minimal_plan(const Instance& instance, std::span<const ActionId> steps) {
  if (!is_valid_plan(instance, steps)) return false;
  const std::size_t l = steps.size();
  if (l >= 63) throw ContractError("minimality check limited to plans of length < 63");
  std::vector<ActionId> sub;
  const std::uint64_t full = (std::uint64_t{1} << l) - 1;
  for (std::uint64_t mask = 0; mask < full; ++mask) {
    sub.clear();
    for (std::size_t i = 0; i < l; ++i) {
      if (mask >> i & 1U) sub.push_back(steps[i]);
    }
    if (is_valid_plan(instance, sub)) return false;
  }
  return true;
}

// --- variable sets --------------------------------------------------------

std::vector<VarId> diff_set(const Instance& instance, const PartialState& s) {
  std::vector<VarId> out;
  for (const auto& [v, x] : s) {
    if (instance.init.at(v) != x) out.push_back(v);
  }
  return out;
}

std::vector<VarId> delta_vars(const Instance& instance) {
  return diff_set(instance, instance.goal);
}

Instance restrict(const Instance& instance, std::span<const VarId> keep) {
  std::vector<std::optional<VarId>> remap(instance.var_count());
  std::vector<VarId> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());

  Instance out;
  out.domain_size = instance.domain_size;
  for (VarId v : kept) {
    if (v >= instance.var_count())
      throw StructuralError("restrict: variable " + std::to_string(v) + " out of range");
    remap[v] = static_cast<VarId>(out.init.size());
    out.init.push_back(instance.init[v]);
    out.var_names.push_back(instance.var_names[v]);
  }
  auto project = [&](const PartialState& s) {
    PartialState r;
    for (const auto& [v, x] : s) {
      if (remap[v]) r.set(*remap[v], x);
    }
    return r;
  };
  out.goal = project(instance.goal);
  out.actions.reserve(instance.actions.size());
  for (const auto& a : instance.actions) {
    out.actions.push_back(Action{a.name, project(a.pre), project(a.eff)});
  }
  return out;
}

// --- restrictions ---------------------------------------------------------

RestrictionProfile classify(const Instance& instance) {
  RestrictionProfile p;
  p.binary = instance.domain_size == 2;

  std::set<Assignment> produced;
  // Prevail value seen so far for each variable: a precondition on a
  // variable the same action does not affect.
  std::map<VarId, Value> prevail;
  for (const auto& a : instance.actions) {
    p.max_pre = std::max(p.max_pre, a.pre.size());
    p.max_eff = std::max(p.max_eff, a.eff.size());
    if (a.eff.size() != 1) p.unary = false;
    for (const auto& e : a.eff) {
      if (!produced.insert(e).second) p.post_unique = false;
    }
    for (const auto& [v, x] : a.pre) {
      if (a.eff.defined(v)) continue;
      auto [it, fresh] = prevail.emplace(v, x);
      if (!fresh && it->second != x) p.single_valued = false;
    }
  }
  return p;
}

// --- polarity -------------------------------------------------------------

EffectPolarity effect_polarity(const Instance& instance, ActionId action) {
  const Action& a = instance.actions.at(action);
  EffectPolarity out;
  bool any_good = false;
  bool any_bad = false;
  for (const auto& [v, x] : a.eff) {
    const auto g = instance.goal.get(v);
    const bool good = !g || *g == x;
    out.effects.push_back({v, good ? Polarity::Good : Polarity::Bad});
    (good ? any_good : any_bad) = true;
  }
  if (any_good && any_bad) {
    out.action = Polarity::Mixed;
  } else if (any_bad) {
    out.action = Polarity::Bad;
  } else {
    out.action = Polarity::Good;
  }
  return out;
}

const char* to_string(Polarity p) {
  switch (p) {
    case Polarity::Good: return "good";
    case Polarity::Bad: return "bad";
    case Polarity::Mixed: return "mixed";
  }
  return "?";
}

}  // namespace planlab

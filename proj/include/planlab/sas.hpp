#pragma once

// SAS+ data model: partial/total states, actions, instances, plan semantics,
// the P/U/B/S restriction classifier and the good/bad effect analysis.
//
// The undefined value is never stored. A PartialState is a sparse map from
// variable id to value; a variable that is absent is undefined.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace planlab {

using VarId = std::uint32_t;
using Value = std::uint32_t;
using ActionId = std::uint32_t;

struct Assignment {
  VarId var = 0;
  Value value = 0;

  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

class PartialState {
 public:
  PartialState() = default;
  /// Later entries for the same variable overwrite earlier ones.
  PartialState(std::initializer_list<Assignment> entries);

  std::optional<Value> get(VarId v) const;
  bool defined(VarId v) const { return get(v).has_value(); }

  /// Overwrites any existing value for v.
  void set(VarId v, Value x);
  /// Returns false (and leaves the state unchanged) if v is already defined.
  bool insert(VarId v, Value x);
  void erase(VarId v);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  /// Entries sorted by variable id.
  const std::vector<Assignment>& entries() const noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  friend bool operator==(const PartialState&, const PartialState&) = default;

 private:
  std::vector<Assignment> entries_;
};

using TotalState = std::vector<Value>;

struct Action {
  std::string name;
  PartialState pre;
  PartialState eff;

  friend bool operator==(const Action&, const Action&) = default;
};

struct Plan {
  std::vector<ActionId> steps;

  std::size_t size() const noexcept { return steps.size(); }
  bool empty() const noexcept { return steps.empty(); }

  friend auto operator<=>(const Plan&, const Plan&) = default;
};

struct Instance {
  /// Values range over 0..domain_size-1.
  Value domain_size = 2;
  std::vector<std::string> var_names;
  std::vector<Action> actions;
  TotalState init;
  PartialState goal;

  std::size_t var_count() const noexcept { return init.size(); }
  std::size_t action_count() const noexcept { return actions.size(); }

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Display name used when none is given: "v1", "v2", ... (1-based).
std::string default_var_name(VarId v);

/// Throws StructuralError if any invariant of the instance is broken.
void check_instance(const Instance& instance);

/// Human-readable warnings that do not make the instance invalid.
std::vector<std::string> lint_instance(const Instance& instance);

/// Incremental construction used by the generators.
class InstanceBuilder {
 public:
  explicit InstanceBuilder(Value domain_size) { instance_.domain_size = domain_size; }

  VarId add_var(std::string name, Value init, std::optional<Value> goal = {});
  ActionId add_action(std::string name, PartialState pre, PartialState eff);
  void set_init(VarId v, Value x) { instance_.init.at(v) = x; }
  void set_goal(VarId v, Value x) { instance_.goal.set(v, x); }
  void clear_goal(VarId v) { instance_.goal.erase(v); }

  const Instance& peek() const noexcept { return instance_; }
  /// Validates and returns the instance.
  Instance build() const;

 private:
  Instance instance_;
};

// --- plan semantics -------------------------------------------------------

/// True iff every defined precondition matches the state.
/// Throws StructuralError if the action mentions a variable outside the state.
bool action_valid_in(const TotalState& state, const Action& action);

/// Pure effect application; validity is not checked.
TotalState apply(const TotalState& state, const Action& action);

bool is_goal_state(const Instance& instance, const TotalState& state);

enum class PlanFailure { None, Precondition, GoalMiss };

struct ValidationReport {
  bool valid = false;
  PlanFailure failure = PlanFailure::None;
  /// Step index of the failing action; for a goal miss, the plan length.
  std::size_t step = 0;
  VarId var = 0;
  /// State reached by the last executed step (the final state on success).
  TotalState final_state;
};

/// Throws StructuralError for action ids outside the instance.
ValidationReport validate_plan(const Instance& instance, const Plan& plan);

bool is_valid_plan(const Instance& instance, std::span<const ActionId> steps);

/// A valid plan none of whose proper subsequences is a plan. Exhaustive
/// over all 2^|plan| subsequences.
bool is_minimal_plan(const Instance& instance, std::span<const ActionId> steps);

// --- variable sets (declaration order) ------------------------------------

/// { v : s[v] defined and s[v] != init[v] }.
std::vector<VarId> diff_set(const Instance& instance, const PartialState& s);

/// Variables whose goal is defined and differs from the initial value.
std::vector<VarId> delta_vars(const Instance& instance);

/// Keeps only the variables in `keep`, renumbered in declaration order.
/// Action identity and order are preserved; effects may become empty.
Instance restrict(const Instance& instance, std::span<const VarId> keep);

// --- restrictions ---------------------------------------------------------

struct RestrictionProfile {
  bool post_unique = true;
  bool unary = true;
  bool binary = false;
  bool single_valued = true;
  std::size_t max_pre = 0;
  std::size_t max_eff = 0;

  friend bool operator==(const RestrictionProfile&, const RestrictionProfile&) = default;
};

RestrictionProfile classify(const Instance& instance);

// --- effect polarity ------------------------------------------------------

enum class Polarity { Good, Bad, Mixed };

struct EffectPolarity {
  struct Entry {
    VarId var;
    Polarity polarity;  // Good or Bad
  };
  std::vector<Entry> effects;
  /// Good iff all effects good (vacuously for an empty effect), Bad iff all
  /// effects bad, Mixed otherwise.
  Polarity action = Polarity::Good;
};

EffectPolarity effect_polarity(const Instance& instance, ActionId action);

const char* to_string(Polarity p);

}  // namespace planlab

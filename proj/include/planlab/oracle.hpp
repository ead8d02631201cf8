#pragma once

// Exhaustive reference solvers. Everything else is cross-checked against these.

#include <cstddef>
#include <optional>
#include <vector>

#include "planlab/sas.hpp"

namespace planlab {

enum class SearchStatus { Found, NoPlan, BudgetExhausted };

const char* to_string(SearchStatus s);

struct ShortestPlanResult {
  SearchStatus status = SearchStatus::NoPlan;
  std::optional<Plan> plan;
  std::size_t states = 0;  // distinct states (or regression sets) stored
};

/// Default visited-state cap: PLAN_LAB_BUDGET if set and parseable, else 5,000,000.
std::size_t budget_from_env();

/// Breadth-first search over total states. Returns a shortest plan of length
/// <= k; among shortest plans the lexicographically smallest id sequence.
ShortestPlanResult shortest_plan(const Instance& instance, std::size_t k,
                                 std::size_t max_states = budget_from_env());

/// Exact alternative for instances without preconditions: breadth-first search
/// over the set of goal variables already fixed by the suffix of the plan.
/// The search space is 2^|goal vars| instead of d^n. The returned plan has
/// minimum length; ties are broken on the reversed sequence.
/// Throws ContractError if some action has a precondition.
ShortestPlanResult shortest_plan_regression(const Instance& instance, std::size_t k,
                                            std::size_t max_states = budget_from_env());

struct EnumerationResult {
  SearchStatus status = SearchStatus::NoPlan;
  std::vector<Plan> plans;  // lexicographic order
  std::size_t sequences = 0;
};

/// All valid plans of length <= k with no valid proper subsequence.
/// max_sequences caps the number of explored action sequences.
EnumerationResult enumerate_minimal_plans(const Instance& instance, std::size_t k,
                                          std::size_t max_sequences = budget_from_env());

}  // namespace planlab

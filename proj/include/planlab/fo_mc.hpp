#pragma once

// Bounded planning as first-order model checking: the structures A(I) and
// A*(I), the Sigma_{2,2} formula (any instance) and the Sigma_1 formula
// (unary instances), and an evaluator.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "planlab/sas.hpp"

namespace planlab {

enum class ElementSort { Variable, Action, Value, Undefined, DummyAction, Dummy };

struct Relation {
  std::string name;
  std::size_t arity = 0;
  std::vector<std::vector<std::uint32_t>> tuples;  // sorted, unique
};

/// Universe layout: variables 0..n-1, actions n..n+m-1, values 0..d-1, the
/// undefined value u, dum_a, then dummy elements d_1..d_k (A* only).
struct RelationalStructure {
  std::vector<std::string> names;
  std::vector<ElementSort> sorts;
  std::vector<Relation> relations;

  /// A* only: |diff(goal)| > k, so no plan of length <= k can exist.
  bool trivially_unsolvable = false;
  /// A* only: actions with |diff(a)| > k. They get no DIFF_ACT rows.
  std::vector<ActionId> unusable_actions;

  std::size_t size() const noexcept { return names.size(); }
  const Relation* find(const std::string& name) const;
};

struct UniverseLayout {
  std::size_t vars = 0;
  std::size_t actions = 0;
  std::size_t values = 0;

  std::uint32_t var(VarId v) const { return v; }
  std::uint32_t action(ActionId a) const { return static_cast<std::uint32_t>(vars + a); }
  std::uint32_t value(Value x) const { return static_cast<std::uint32_t>(vars + actions + x); }
  std::uint32_t undefined() const { return static_cast<std::uint32_t>(vars + actions + values); }
  std::uint32_t dum_a() const { return undefined() + 1; }
  std::uint32_t dummy(std::size_t i) const { return dum_a() + 1 + static_cast<std::uint32_t>(i); }
};

UniverseLayout layout_of(const Instance& instance);

/// VAR, ACT, DOM, DUM_A, INIT_V, GOAL_V, PRE, EFF, PRE_V, EFF_V.
RelationalStructure build_structure(const Instance& instance);

/// A(I) plus DUM, DIFF_ACT, DIFF_GOAL and the unary GOAL (goal defined).
RelationalStructure build_extended_structure(const Instance& instance, std::size_t k);

/// Relation name -> tuple list, one relation per line.
std::string to_text(const RelationalStructure& structure);

struct Formula {
  enum class Kind { Exists, Forall, And, Or, Not, Implies, Atom, Equal };

  Kind kind = Kind::And;
  std::uint32_t variable = 0;          // quantifiers
  std::string relation;                // atoms
  std::vector<std::uint32_t> terms;    // atoms, equalities
  std::vector<Formula> children;

  static Formula exists(std::uint32_t v, Formula body);
  static Formula forall(std::uint32_t v, Formula body);
  static Formula conj(std::vector<Formula> parts);  // empty = true
  static Formula disj(std::vector<Formula> parts);  // empty = false
  static Formula negate(Formula f);
  static Formula implies(Formula a, Formula b);
  static Formula atom(std::string relation, std::vector<std::uint32_t> terms);
  static Formula equal(std::uint32_t a, std::uint32_t b);
};

struct Sentence {
  Formula root;
  std::vector<std::string> variables;  // names, indexed by variable id
};

std::size_t node_count(const Formula& f);
std::string to_sexpr(const Sentence& s);

/// Leading quantifiers: (kind, variable) in order.
std::vector<std::pair<Formula::Kind, std::uint32_t>> quantifier_prefix(const Formula& f);

/// Prefix exists a_1..a_k forall v forall x; a_i is variable i-1. k >= 1.
Sentence build_sigma22_formula(std::size_t k);

constexpr std::size_t kMaxSigma1K = 8;

/// Existentials a_1..a_k, v_1..v_k, d_1..d_k, x_{1,1}..x_{k,k}, x_{g,1}..x_{g,k}
/// in that order over a quantifier-free matrix. 1 <= k <= kMaxSigma1K.
Sentence build_sigma1_formula(std::size_t k);

struct ModelCheckResult {
  bool satisfied = false;
  /// Values of the leading existential block, if satisfied.
  std::vector<std::uint32_t> witness;
  std::size_t assignments = 0;
};

/// Splits the matrix into conjuncts, checks each as soon as the leading
/// existentials it mentions are bound, and backjumps on conflicts. Elements
/// are tried in universe order, so the witness is the first in that order.
/// Throws ContractError for unknown relations or arity mismatches.
ModelCheckResult model_check(const RelationalStructure& structure, const Sentence& sentence);

/// Plain recursive evaluation; reference for tests.
bool model_check_naive(const RelationalStructure& structure, const Sentence& sentence);

enum class Fragment { Sigma22, Sigma1 };

const char* to_string(Fragment f);

struct McSolveResult {
  bool solvable = false;
  std::optional<Plan> witness;
  std::size_t assignments = 0;
  std::size_t formula_nodes = 0;
  bool trivial = false;  // decided without running the evaluator
};

/// Sigma1 throws ContractError on non-unary input or k > kMaxSigma1K.
/// A returned witness has already passed validate_plan.
McSolveResult solve_via_mc(const Instance& instance, std::size_t k, Fragment fragment);

}  // namespace planlab

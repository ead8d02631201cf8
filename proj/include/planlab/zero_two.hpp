#pragma once

// Instances with no preconditions and at most two effects per action:
// chain transform removing two-effect good actions, reduction to a directed
// Steiner tree, Dreyfus-Wagner, and bottom-up plan extraction.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "planlab/sas.hpp"

namespace planlab {

struct TransformResult {
  Instance instance;
  std::size_t k_prime = 0;  // k(k+3)+1
  /// Per source action: the chain a_1..a_{k+3} (empty for bad or effect-free actions).
  std::vector<std::vector<ActionId>> chains;
  /// Per transformed action: the source action it came from; none for a_g.
  std::vector<std::optional<ActionId>> origin;
  VarId g = 0;
  ActionId a_g = 0;
  /// Per source action: chain variables v_1..v_{k+2}.
  std::vector<std::vector<VarId>> chain_vars;
};

/// Throws ContractError unless max_pre = 0 and max_eff <= 2.
TransformResult eliminate_two_effect_good_actions(const Instance& instance, std::size_t k);

struct SteinerArc {
  std::uint32_t tail = 0;
  std::uint32_t head = 0;
  ActionId action = 0;

  friend bool operator==(const SteinerArc&, const SteinerArc&) = default;
};

/// Node 0 is the root; variable v is node v+1. Every arc has weight 1.
struct SteinerInstance {
  std::size_t node_count = 1;
  std::uint32_t root = 0;
  std::vector<SteinerArc> arcs;
  std::vector<std::uint32_t> terminals;
  std::size_t bound = 0;
};

inline std::uint32_t steiner_node(VarId v) { return v + 1; }

/// Throws ContractError on preconditions, more than two effects, or a good
/// action with two effects. Bad actions contribute nothing.
SteinerInstance build_dst(const Instance& instance, std::size_t bound);

struct SteinerSolution {
  std::size_t weight = 0;
  std::vector<std::size_t> arcs;  // indices into SteinerInstance::arcs, sorted
};

struct DreyfusWagnerStats {
  std::size_t cells = 0;
};

constexpr std::size_t kMaxSteinerTerminals = 20;

/// Minimum-weight arborescence from the root covering all terminals, if its
/// weight is within the bound. Throws ContractError above kMaxSteinerTerminals.
std::optional<SteinerSolution> dreyfus_wagner(const SteinerInstance& dst,
                                              DreyfusWagnerStats* stats = nullptr);

/// Actions ordered by decreasing distance of the arc tail from the root
/// (arcs leaving the root last), ties by action id.
/// Throws ContractError if the arcs do not form a tree rooted at the root.
Plan extract_plan(const Instance& instance, const SteinerInstance& dst,
                  const std::vector<std::size_t>& arcs);

struct ZeroTwoResult {
  std::optional<Plan> plan;
  bool transformed = false;
  std::size_t steiner_bound = 0;
  std::size_t steiner_weight = 0;
  std::size_t dp_cells = 0;
  SteinerInstance dst;
  std::vector<std::size_t> tree;  // solution arcs in dst
  Plan inner_plan;                // plan for the (possibly transformed) instance
};

/// Throws ContractError unless max_pre = 0 and max_eff <= 2.
ZeroTwoResult solve_zero_two(const Instance& instance, std::size_t k);

/// DOT digraph; arcs of `highlight` are drawn bold.
std::string steiner_to_dot(const SteinerInstance& dst, const Instance& instance,
                           const std::vector<std::size_t>& highlight = {});

}  // namespace planlab

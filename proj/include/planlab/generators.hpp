#pragma once

// Instance factories: reductions from hitting set and multicolored clique,
// the OR gadget and OR tree, OR-compositions of several instances, and
// seeded random instances with requested restrictions.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "planlab/sas.hpp"
#include "planlab/zero_two.hpp"

namespace planlab {

struct Bounded {
  Instance instance;
  std::size_t k = 0;
};

// --- hitting set ----------------------------------------------------------

/// Elements are 1..universe.
struct HittingSetInput {
  std::size_t universe = 0;
  std::vector<std::vector<std::uint32_t>> sets;
  std::size_t k = 0;
};

/// One variable per set, one action per element. Throws ContractError on an
/// element outside 1..universe.
Bounded from_hitting_set(const HittingSetInput& input);

/// Brute force over element subsets of size <= k.
bool has_hitting_set(const HittingSetInput& input);

// --- multicolored clique --------------------------------------------------

/// Vertex t of part i (both 0-based) has id i * part_size + t.
struct MulticoloredGraph {
  std::size_t parts = 0;
  std::size_t part_size = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  std::uint32_t vertex(std::size_t part, std::size_t t) const {
    return static_cast<std::uint32_t>(part * part_size + t);
  }
  std::size_t part_of(std::uint32_t v) const { return v / part_size; }
  std::size_t vertex_count() const { return parts * part_size; }
};

/// Throws ContractError on out-of-range ids or an edge inside a part.
/// Duplicate edges (in either orientation) are dropped.
MulticoloredGraph normalized(const MulticoloredGraph& graph);

/// One vertex per part, pairwise adjacent.
bool has_multicolored_clique(const MulticoloredGraph& graph);

std::size_t binom2(std::size_t k);

/// Unary, binary, at most one precondition. k' = 7 C(k,2) + k.
Bounded from_mcc_ubs(const MulticoloredGraph& graph);

/// Binary, no preconditions, at most three effects. k' = C(k,2) + k.
Bounded from_mcc_03(const MulticoloredGraph& graph);

// --- OR gadget ------------------------------------------------------------

struct Or2Gadget {
  VarId o1 = 0, o2 = 0, o = 0, i1 = 0, i2 = 0;
  std::vector<ActionId> actions;  // a_o, a_o1, a_o2, a_i1, a_i2, a_v1, a_v2
};

/// Adds the five gadget variables (init 0, goal undefined) and seven actions.
/// `o` becomes 1 from an all-zero gadget state iff v1 or v2 is 1, in exactly
/// six steps. Inputs must be existing binary variables; v1 == v2 is allowed.
Or2Gadget or2_gadget(InstanceBuilder& builder, VarId v1, VarId v2, const std::string& prefix);

struct OrTree {
  VarId o = 0;
  std::size_t gadgets = 0;
  std::size_t depth = 0;  // gadgets on every input-to-output path
};

/// Balanced tree of OR2 copies named "<prefix><j>." (j from 1). Every input
/// sits at depth ceil(log2 r); an unpaired node on a level feeds both inputs
/// of its gadget. r = 1 gives one gadget with both inputs tied.
OrTree or_tree(InstanceBuilder& builder, const std::vector<VarId>& inputs,
               const std::string& prefix = "or");

/// Variables v1, v2 with the given initial values, one gadget, goal o = 1.
Instance or2_instance(Value v1, Value v2);

std::size_t ceil_log2(std::size_t t);

// --- compositions ---------------------------------------------------------

struct Composition {
  Instance instance;
  std::size_t k = 0;        // max k_i (pub) or the common k (zero-two)
  std::size_t k_inner = 0;  // zero-two: k(k+3)+1; pub: unused
  std::size_t bound = 0;    // k' (pub) or k'' (zero-two)
  std::vector<std::string> prefixes;
};

/// Components must be post-unique, unary and binary, t >= 2.
/// bound = k + 1 + 6 ceil(log2 t).
Composition compose_pub(const std::vector<Bounded>& components);

/// Components must have no preconditions, at most two effects and a
/// nonempty Delta of at most k(k+3)+1 variables, t >= 1. bound = 4(k(k+3)+1)+1.
Composition compose_zero_two(const std::vector<Instance>& components, std::size_t k);

// --- random ---------------------------------------------------------------

struct RandomProfile {
  bool post_unique = false;
  bool unary = false;
  bool binary = false;
  bool single_valued = false;
  std::optional<std::size_t> max_pre;  // default: vars
  std::optional<std::size_t> max_eff;  // default: vars
};

struct RandomSizes {
  std::size_t vars = 3;
  std::size_t domain = 2;
  std::size_t actions = 4;
  /// Probability, in percent, that a variable gets a goal value.
  unsigned goal_percent = 50;
};

/// Every action has at least one effect. Deterministic in the seed.
/// Throws ContractError if the profile cannot be met at these sizes.
Instance random_instance(const RandomProfile& profile, const RandomSizes& sizes,
                         std::uint64_t seed);

}  // namespace planlab

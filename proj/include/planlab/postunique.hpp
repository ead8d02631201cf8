#pragma once

// Search-tree algorithm for post-unique instances: find a required pair,
// insert its unique producer at every feasible position, recurse.
// Lists every minimal plan of length <= k.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "planlab/sas.hpp"

namespace planlab {

/// <v,x> is needed at position j (an action j <= l with pre[v]=x, or the goal
/// at j = l+1) but s_{j-1}[v] != x. i is the smallest index with s_i[v] != x.
/// Positions are 1-based for actions, states s_0..s_l.
struct RequiredPair {
  VarId var = 0;
  Value value = 0;
  std::size_t i = 0;
  std::size_t j = 0;

  friend bool operator==(const RequiredPair&, const RequiredPair&) = default;
};

/// None iff seq is a plan. Otherwise the pair with smallest j, then smallest v.
std::optional<RequiredPair> find_required_pair(const Instance& instance,
                                               std::span<const ActionId> seq);

/// (v,x) -> the unique action with eff[v] = x.
class ProducerIndex {
 public:
  /// Throws ContractError if the instance is not post-unique.
  explicit ProducerIndex(const Instance& instance);
  std::optional<ActionId> get(VarId v, Value x) const;

 private:
  Value domain_;
  std::vector<std::optional<ActionId>> table_;  // v * d + x
};

std::optional<ActionId> producer(const Instance& instance, VarId v, Value x);

enum class NodeStatus { Open, Success, Failure };

struct SearchNode {
  std::vector<ActionId> label;
  std::size_t depth = 0;
  NodeStatus status = NodeStatus::Open;
  std::optional<RequiredPair> pair;
  std::vector<std::size_t> children;  // indices into the recorded tree
};

struct PostUniqueOptions {
  bool record_tree = false;
};

struct PostUniqueResult {
  std::vector<Plan> plans;  // minimal plans, lexicographic order
  std::size_t nodes = 0;
  std::size_t successes = 0;
  std::size_t failures = 0;
  std::vector<SearchNode> tree;  // preorder, root first; only if recorded
};

/// (k+1)^(k+1), saturating.
std::uint64_t postunique_node_bound(std::size_t k);

/// Throws ContractError if the instance is not post-unique, and
/// std::logic_error if the tree outgrows postunique_node_bound(k).
PostUniqueResult solve_postunique(const Instance& instance, std::size_t k,
                                  const PostUniqueOptions& options = {});

}  // namespace planlab

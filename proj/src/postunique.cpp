#include "planlab/postunique.hpp"

#include <limits>
#include <set>
#include <stdexcept>

#include "planlab/errors.hpp"

namespace planlab {

std::optional<RequiredPair> find_required_pair(const Instance& instance,
                                               std::span<const ActionId> seq) {
  const std::size_t l = seq.size();
  std::vector<TotalState> states;
  states.reserve(l + 1);
  states.push_back(instance.init);
  for (ActionId id : seq) states.push_back(planlab::apply(states.back(), instance.actions.at(id)));

  auto pair_for = [&](VarId v, Value x, std::size_t j) {
    std::size_t i = 0;
    while (states[i][v] == x) ++i;  // terminates: states[j-1][v] != x
    return RequiredPair{v, x, i, j};
  };

  for (std::size_t j = 1; j <= l; ++j) {
    for (const auto& [v, x] : instance.actions[seq[j - 1]].pre) {
      if (states[j - 1][v] != x) return pair_for(v, x, j);
    }
  }
  for (const auto& [v, x] : instance.goal) {
    if (states[l][v] != x) return pair_for(v, x, l + 1);
  }
  return std::nullopt;
}

ProducerIndex::ProducerIndex(const Instance& instance) : domain_(instance.domain_size) {
  table_.assign(instance.var_count() * domain_, std::nullopt);
  for (ActionId id = 0; id < instance.actions.size(); ++id) {
    for (const auto& [v, x] : instance.actions[id].eff) {
      auto& slot = table_[std::size_t{v} * domain_ + x];
      if (slot)
        throw ContractError("instance is not post-unique: " + instance.actions[*slot].name +
                            " and " + instance.actions[id].name + " both produce " +
                            instance.var_names[v] + "=" + std::to_string(x));
      slot = id;
    }
  }
}

std::optional<ActionId> ProducerIndex::get(VarId v, Value x) const {
  const std::size_t idx = std::size_t{v} * domain_ + x;
  if (idx >= table_.size()) return std::nullopt;
  return table_[idx];
}

std::optional<ActionId> producer(const Instance& instance, VarId v, Value x) {
  return ProducerIndex(instance).get(v, x);
}

std::uint64_t postunique_node_bound(std::size_t k) {
  constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t bound = 1;
  const std::uint64_t base = k + 1;
  for (std::size_t e = 0; e <= k; ++e) {
    if (bound > cap / base) return cap;
    bound *= base;
  }
  return bound;
}

namespace {

struct Search {
  const Instance& instance;
  std::size_t k;
  const PostUniqueOptions& options;
  ProducerIndex producers;
  std::uint64_t bound;
  std::set<std::vector<ActionId>> found;
  PostUniqueResult result;

  std::size_t visit(std::vector<ActionId>& label) {
    if (++result.nodes > bound)
      throw std::logic_error("post-unique search tree exceeded (k+1)^(k+1) nodes");
    std::size_t record = 0;
    if (options.record_tree) {
      record = result.tree.size();
      result.tree.push_back(SearchNode{label, label.size(), NodeStatus::Open, std::nullopt, {}});
    }
    auto mark = [&](NodeStatus s, std::optional<RequiredPair> p) {
      if (!options.record_tree) return;
      result.tree[record].status = s;
      result.tree[record].pair = p;
    };

    const auto pair = find_required_pair(instance, label);
    if (!pair) {
      ++result.successes;
      mark(NodeStatus::Success, std::nullopt);
      found.insert(label);
      return record;
    }
    const auto a = producers.get(pair->var, pair->value);
    if (label.size() >= k || !a) {
      ++result.failures;
      mark(NodeStatus::Failure, pair);
      return record;
    }
    mark(NodeStatus::Open, pair);
    // insert(m, a, w) puts a at 1-based position m; m = 0 and m = 1 coincide.
    for (std::size_t m = std::max<std::size_t>(pair->i, 1); m <= pair->j; ++m) {
      label.insert(label.begin() + static_cast<std::ptrdiff_t>(m - 1), *a);
      const std::size_t child = visit(label);
      label.erase(label.begin() + static_cast<std::ptrdiff_t>(m - 1));
      if (options.record_tree) result.tree[record].children.push_back(child);
    }
    return record;
  }
};

}  // namespace

PostUniqueResult solve_postunique(const Instance& instance, std::size_t k,
                                  const PostUniqueOptions& options) {
  check_instance(instance);
  Search search{instance, k, options, ProducerIndex(instance), postunique_node_bound(k), {}, {}};
  std::vector<ActionId> label;
  search.visit(label);
  for (const auto& seq : search.found) {
    if (is_minimal_plan(instance, seq)) search.result.plans.push_back(Plan{seq});
  }
  return std::move(search.result);
}

}  // namespace planlab

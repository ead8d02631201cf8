#include "planlab/oracle.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <deque>
#include <string_view>
#include <unordered_map>

#include "planlab/errors.hpp"

namespace planlab {

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::NoPlan: return "no-plan";
    case SearchStatus::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

std::size_t budget_from_env() {
  constexpr std::size_t fallback = 5'000'000;
  const char* raw = std::getenv("PLAN_LAB_BUDGET");
  if (raw == nullptr) return fallback;
  std::string_view s(raw);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || value == 0) return fallback;
  return value;
}

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Dense states packed into fixed-width words; values never straddle a word.
class StateArena {
 public:
  StateArena(std::size_t n, Value d) {
    bits_ = 1;
    while (bits_ < 32 && (std::uint64_t{1} << bits_) < d) bits_ *= 2;
    per_word_ = 64 / bits_;
    words_ = std::max<std::size_t>(1, (n + per_word_ - 1) / per_word_);
    mask_ = bits_ == 64 ? ~0ULL : (std::uint64_t{1} << bits_) - 1;
    slots_.assign(1024, kEmpty);
  }

  std::size_t words() const { return words_; }
  std::size_t size() const { return count_; }
  const std::uint64_t* at(std::size_t idx) const { return data_.data() + idx * words_; }

  std::size_t word_of(VarId v) const { return v / per_word_; }
  unsigned shift_of(VarId v) const { return static_cast<unsigned>((v % per_word_) * bits_); }
  std::uint64_t mask() const { return mask_; }

  void pack(const TotalState& s, std::uint64_t* out) const {
    std::fill(out, out + words_, 0);
    for (VarId v = 0; v < s.size(); ++v) out[word_of(v)] |= std::uint64_t{s[v]} << shift_of(v);
  }

  TotalState unpack(const std::uint64_t* p, std::size_t n) const {
    TotalState s(n);
    for (VarId v = 0; v < n; ++v) s[v] = static_cast<Value>((p[word_of(v)] >> shift_of(v)) & mask_);
    return s;
  }

  // Returns (index, inserted).
  std::pair<std::size_t, bool> insert(const std::uint64_t* p) {
    if ((count_ + 1) * 2 > slots_.size()) grow();
    const std::size_t cap = slots_.size() - 1;
    std::size_t h = hash(p) & cap;
    while (slots_[h] != kEmpty) {
      if (std::memcmp(at(slots_[h]), p, words_ * sizeof(std::uint64_t)) == 0) return {slots_[h], false};
      h = (h + 1) & cap;
    }
    data_.insert(data_.end(), p, p + words_);
    slots_[h] = count_;
    return {count_++, true};
  }

 private:
  static constexpr std::size_t kEmpty = ~std::size_t{0};

  std::uint64_t hash(const std::uint64_t* p) const {
    std::uint64_t h = 0x1234567ULL;
    for (std::size_t i = 0; i < words_; ++i) h = mix(h ^ p[i]);
    return h;
  }

  void grow() {
    std::vector<std::size_t> bigger(slots_.size() * 2, kEmpty);
    const std::size_t cap = bigger.size() - 1;
    for (std::size_t idx = 0; idx < count_; ++idx) {
      std::size_t h = hash(at(idx)) & cap;
      while (bigger[h] != kEmpty) h = (h + 1) & cap;
      bigger[h] = idx;
    }
    slots_.swap(bigger);
  }

  std::size_t bits_ = 1;
  std::size_t per_word_ = 64;
  std::size_t words_ = 1;
  std::uint64_t mask_ = 1;
  std::vector<std::uint64_t> data_;
  std::vector<std::size_t> slots_;
  std::size_t count_ = 0;
};

struct PackedAtom {
  std::size_t word;
  unsigned shift;
  std::uint64_t value;
};

struct PackedAction {
  std::vector<PackedAtom> pre;
  std::vector<PackedAtom> eff;
};

std::vector<PackedAtom> pack_partial(const StateArena& arena, const PartialState& s) {
  std::vector<PackedAtom> out;
  for (const auto& [v, x] : s) out.push_back({arena.word_of(v), arena.shift_of(v), x});
  return out;
}

bool holds(const std::vector<PackedAtom>& atoms, const std::uint64_t* p, std::uint64_t mask) {
  for (const auto& a : atoms) {
    if (((p[a.word] >> a.shift) & mask) != a.value) return false;
  }
  return true;
}

Plan trace(const std::vector<std::size_t>& parent, const std::vector<ActionId>& via,
           std::size_t node) {
  Plan plan;
  while (node != 0) {
    plan.steps.push_back(via[node]);
    node = parent[node];
  }
  std::reverse(plan.steps.begin(), plan.steps.end());
  return plan;
}

}  // namespace

ShortestPlanResult shortest_plan(const Instance& instance, std::size_t k,
                                 std::size_t max_states) {
  check_instance(instance);
  StateArena arena(instance.var_count(), instance.domain_size);
  const std::size_t w = arena.words();
  const std::uint64_t mask = arena.mask();

  std::vector<PackedAction> actions;
  actions.reserve(instance.actions.size());
  for (const auto& a : instance.actions)
    actions.push_back({pack_partial(arena, a.pre), pack_partial(arena, a.eff)});
  const auto goal = pack_partial(arena, instance.goal);

  std::vector<std::uint64_t> buf(w);
  arena.pack(instance.init, buf.data());
  arena.insert(buf.data());
  std::vector<std::size_t> parent{0};
  std::vector<ActionId> via{0};
  std::vector<std::uint32_t> depth{0};

  ShortestPlanResult result;
  if (holds(goal, arena.at(0), mask)) {
    result.status = SearchStatus::Found;
    result.plan = Plan{};
    result.states = 1;
    return result;
  }

  // Goal is tested when a state is first generated. Generation happens in
  // breadth-first, declaration order, so the first goal hit is the shortest
  // plan with the smallest id sequence.
  for (std::size_t head = 0; head < arena.size(); ++head) {
    if (depth[head] >= k) continue;
    for (ActionId id = 0; id < actions.size(); ++id) {
      const auto& a = actions[id];
      if (!holds(a.pre, arena.at(head), mask)) continue;
      std::memcpy(buf.data(), arena.at(head), w * sizeof(std::uint64_t));
      for (const auto& e : a.eff)
        buf[e.word] = (buf[e.word] & ~(mask << e.shift)) | (e.value << e.shift);
      auto [idx, fresh] = arena.insert(buf.data());
      if (!fresh) continue;
      parent.push_back(head);
      via.push_back(id);
      depth.push_back(depth[head] + 1);
      if (holds(goal, arena.at(idx), mask)) {
        result.status = SearchStatus::Found;
        result.plan = trace(parent, via, idx);
        result.states = arena.size();
        return result;
      }
      if (arena.size() >= max_states) {
        result.status = SearchStatus::BudgetExhausted;
        result.states = arena.size();
        return result;
      }
    }
  }
  result.status = SearchStatus::NoPlan;
  result.states = arena.size();
  return result;
}

ShortestPlanResult shortest_plan_regression(const Instance& instance, std::size_t k,
                                            std::size_t max_states) {
  check_instance(instance);
  for (const auto& a : instance.actions) {
    if (!a.pre.empty())
      throw ContractError("regression oracle requires actions without preconditions");
  }

  // Only variables with a defined goal matter: a later writer fixes them.
  std::vector<VarId> goal_vars;
  std::vector<std::size_t> slot(instance.var_count(), ~std::size_t{0});
  for (const auto& [v, x] : instance.goal) {
    slot[v] = goal_vars.size();
    goal_vars.push_back(v);
  }
  const std::size_t words = std::max<std::size_t>(1, (goal_vars.size() + 63) / 64);
  using Bits = std::vector<std::uint64_t>;
  auto test = [](const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1U; };

  // Per action: goal slots it touches, split into good and bad effects.
  struct Touch {
    std::vector<std::size_t> good;
    std::vector<std::size_t> bad;
  };
  std::vector<Touch> touch(instance.actions.size());
  for (ActionId id = 0; id < instance.actions.size(); ++id) {
    for (const auto& [v, x] : instance.actions[id].eff) {
      if (slot[v] == ~std::size_t{0}) continue;
      (*instance.goal.get(v) == x ? touch[id].good : touch[id].bad).push_back(slot[v]);
    }
  }
  Bits need(words, 0);
  for (VarId v : delta_vars(instance)) need[slot[v] / 64] |= std::uint64_t{1} << (slot[v] % 64);
  auto done = [&](const Bits& b) {
    for (std::size_t i = 0; i < words; ++i) {
      if ((b[i] & need[i]) != need[i]) return false;
    }
    return true;
  };

  struct Hash {
    std::size_t operator()(const Bits& b) const {
      std::uint64_t h = 77;
      for (auto x : b) h = mix(h ^ x);
      return static_cast<std::size_t>(h);
    }
  };
  std::unordered_map<Bits, std::size_t, Hash> seen;
  std::vector<Bits> nodes;
  std::vector<std::size_t> parent;
  std::vector<ActionId> via;
  std::vector<std::uint32_t> depth;

  nodes.emplace_back(words, 0);
  parent.push_back(0);
  via.push_back(0);
  depth.push_back(0);
  seen.emplace(nodes[0], 0);

  ShortestPlanResult result;
  auto finish = [&](std::size_t idx) {
    Plan peeled = trace(parent, via, idx);
    // Peel order is last-action-first.
    std::reverse(peeled.steps.begin(), peeled.steps.end());
    result.status = SearchStatus::Found;
    result.plan = std::move(peeled);
    result.states = nodes.size();
    return result;
  };
  if (done(nodes[0])) return finish(0);

  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (depth[head] >= k) continue;
    for (ActionId id = 0; id < instance.actions.size(); ++id) {
      const Bits& cur = nodes[head];
      bool ok = true;
      for (std::size_t s : touch[id].bad) {
        if (!test(cur, s)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      Bits next = cur;
      bool grows = false;
      for (std::size_t s : touch[id].good) {
        if (!test(next, s)) {
          next[s / 64] |= std::uint64_t{1} << (s % 64);
          grows = true;
        }
      }
      if (!grows) continue;
      auto [it, fresh] = seen.emplace(next, nodes.size());
      if (!fresh) continue;
      nodes.push_back(std::move(next));
      parent.push_back(head);
      via.push_back(id);
      depth.push_back(depth[head] + 1);
      const std::size_t idx = nodes.size() - 1;
      if (done(nodes[idx])) return finish(idx);
      if (nodes.size() >= max_states) {
        result.status = SearchStatus::BudgetExhausted;
        result.states = nodes.size();
        return result;
      }
    }
  }
  result.status = SearchStatus::NoPlan;
  result.states = nodes.size();
  return result;
}

EnumerationResult enumerate_minimal_plans(const Instance& instance, std::size_t k,
                                          std::size_t max_sequences) {
  check_instance(instance);
  EnumerationResult result;
  std::vector<ActionId> seq;
  std::vector<TotalState> states{instance.init};
  bool exhausted = false;

  // Depth-first in lexicographic order. A valid sequence is not extended:
  // every extension contains it as a proper subsequence.
  auto dfs = [&](auto&& self) -> void {
    if (exhausted) return;
    if (++result.sequences > max_sequences) {
      exhausted = true;
      return;
    }
    if (is_goal_state(instance, states.back())) {
      if (is_minimal_plan(instance, seq)) result.plans.push_back(Plan{seq});
      return;
    }
    if (seq.size() >= k) return;
    for (ActionId id = 0; id < instance.actions.size(); ++id) {
      const Action& a = instance.actions[id];
      if (!action_valid_in(states.back(), a)) continue;
      states.push_back(planlab::apply(states.back(), a));
      seq.push_back(id);
      self(self);
      seq.pop_back();
      states.pop_back();
      if (exhausted) return;
    }
  };
  dfs(dfs);

  if (exhausted) {
    result.status = SearchStatus::BudgetExhausted;
    result.plans.clear();
  } else {
    result.status = result.plans.empty() ? SearchStatus::NoPlan : SearchStatus::Found;
  }
  return result;
}

}  // namespace planlab

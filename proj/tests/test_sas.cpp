#include <algorithm>
#include <random>

#include "doctest.h"
#include "planlab/errors.hpp"
#include "planlab/generators.hpp"
#include "planlab/sas.hpp"
#include "support.hpp"

using namespace planlab;
using testing::toy1;

TEST_CASE("partial state is sparse and sorted") {
  PartialState s{{3, 1}, {0, 2}, {3, 0}};
  CHECK(s.size() == 2);
  CHECK(s.get(3) == Value{0});
  CHECK(s.get(0) == Value{2});
  CHECK_FALSE(s.defined(1));
  CHECK(s.entries().front().var == 0);
  CHECK_FALSE(s.insert(0, 1));
  CHECK(s.insert(1, 1));
  s.erase(3);
  CHECK_FALSE(s.defined(3));
  CHECK(s.size() == 2);
}

TEST_CASE("action_valid_in") {
  const auto t = toy1();
  CHECK(action_valid_in({0, 0}, t.actions[0]));
  CHECK_FALSE(action_valid_in({0, 0}, t.actions[1]));
  CHECK(action_valid_in({1, 0}, t.actions[1]));
  CHECK_THROWS_AS(action_valid_in({}, t.actions[1]), StructuralError);
}

TEST_CASE("apply") {
  const auto t = toy1();
  CHECK(apply({0, 0}, t.actions[0]) == TotalState{1, 0});
  CHECK(apply({1, 0}, t.actions[1]) == TotalState{1, 1});
  CHECK(apply({1, 1}, t.actions[0]) == TotalState{1, 1});
}

TEST_CASE("validate_plan reports the first failure") {
  const auto t = toy1();
  auto ok = validate_plan(t, Plan{{0, 1}});
  CHECK(ok.valid);
  CHECK(ok.final_state == TotalState{1, 1});

  auto pre = validate_plan(t, Plan{{1, 0}});
  CHECK_FALSE(pre.valid);
  CHECK(pre.failure == PlanFailure::Precondition);
  CHECK(pre.step == 0);
  CHECK(pre.var == 0);

  auto miss = validate_plan(t, Plan{});
  CHECK_FALSE(miss.valid);
  CHECK(miss.failure == PlanFailure::GoalMiss);
  CHECK(miss.var == 0);
  CHECK(miss.step == 0);

  CHECK_THROWS_AS(validate_plan(t, Plan{{7}}), StructuralError);
}

TEST_CASE("diff_set and delta_vars") {
  const auto t = toy1();
  CHECK(diff_set(t, t.goal) == std::vector<VarId>{0, 1});
  CHECK(diff_set(t, t.actions[1].pre) == std::vector<VarId>{0});
  CHECK(diff_set(t, t.actions[0].pre).empty());
  CHECK(delta_vars(t) == std::vector<VarId>{0, 1});

  InstanceBuilder b(2);
  b.add_var("p", 1, 1);
  b.add_var("q", 0);
  b.add_var("r", 0, 1);
  const auto i = b.build();
  CHECK(delta_vars(i) == std::vector<VarId>{2});
}

TEST_CASE("classify") {
  const auto t = toy1();
  const auto p = classify(t);
  CHECK(p.post_unique);
  CHECK(p.unary);
  CHECK(p.binary);
  CHECK(p.single_valued);
  CHECK(p.max_pre == 1);
  CHECK(p.max_eff == 1);

  auto t3 = t;
  t3.actions.push_back(Action{"a3", {}, {{0, 1}, {1, 1}}});
  const auto q = classify(t3);
  CHECK_FALSE(q.unary);
  CHECK_FALSE(q.post_unique);
  CHECK(q.max_eff == 2);

  auto wide = t;
  wide.domain_size = 3;
  CHECK_FALSE(classify(wide).binary);
}

TEST_CASE("single-valued compares prevail conditions only") {
  InstanceBuilder b(2);
  b.add_var("x", 0);
  b.add_var("y", 0);
  b.add_action("p", {{0, 1}}, {{1, 1}});
  b.add_action("q", {{0, 0}}, {{0, 1}});  // pre on x is not prevail here
  CHECK(classify(b.build()).single_valued);
  b.add_action("r", {{0, 0}}, {{1, 0}});  // prevail x=0 clashes with p
  CHECK_FALSE(classify(b.build()).single_valued);
}

TEST_CASE("effect polarity") {
  const auto t = toy1();
  const auto e = effect_polarity(t, 0);
  REQUIRE(e.effects.size() == 1);
  CHECK(e.effects[0].polarity == Polarity::Good);
  CHECK(e.action == Polarity::Good);

  auto u = t;
  u.actions.push_back(Action{"bad", {}, {{0, 0}}});
  u.actions.push_back(Action{"mix", {}, {{0, 1}, {1, 0}}});
  u.actions.push_back(Action{"none", {}, {}});
  CHECK(effect_polarity(u, 2).action == Polarity::Bad);
  CHECK(effect_polarity(u, 3).action == Polarity::Mixed);
  CHECK(effect_polarity(u, 4).action == Polarity::Good);
  CHECK(std::string(to_string(Polarity::Mixed)) == "mixed");

  InstanceBuilder b(2);
  b.add_var("free", 0);
  b.add_action("any", {}, {{0, 1}});
  CHECK(effect_polarity(b.build(), 0).action == Polarity::Good);
}

TEST_CASE("restrict") {
  const auto t = toy1();
  const std::vector<VarId> one{0};
  const auto r = restrict(t, one);
  CHECK(r.var_count() == 1);
  CHECK(r.actions[1].pre == PartialState{{0, 1}});
  CHECK(r.actions[1].eff.empty());
  CHECK(r.actions.size() == 2);

  const std::vector<VarId> all{0, 1};
  CHECK(restrict(t, all) == t);

  const auto none = restrict(t, std::vector<VarId>{});
  CHECK(none.goal.empty());
  CHECK(is_valid_plan(none, std::vector<ActionId>{}));
  CHECK(is_valid_plan(none, std::vector<ActionId>{1, 0}));
}

TEST_CASE("check_instance rejects broken instances") {
  auto t = toy1();
  t.init[0] = 2;
  CHECK_THROWS_AS(check_instance(t), StructuralError);
  t = toy1();
  t.actions[1].name = "a1";
  CHECK_THROWS_AS(check_instance(t), StructuralError);
  t = toy1();
  t.goal.set(5, 1);
  CHECK_THROWS_AS(check_instance(t), StructuralError);
  t = toy1();
  t.var_names[1] = "v1";
  CHECK_THROWS_AS(check_instance(t), StructuralError);
}

TEST_CASE("lint flags empty effects") {
  auto t = toy1();
  CHECK(lint_instance(t).empty());
  t.actions.push_back(Action{"noop", {}, {}});
  CHECK(lint_instance(t).size() == 1);
}

TEST_CASE("empty goal makes the empty plan valid") {
  InstanceBuilder b(2);
  b.add_var("x", 0);
  CHECK(is_valid_plan(b.build(), std::vector<ActionId>{}));
}

TEST_CASE("is_minimal_plan") {
  const auto t = toy1();
  CHECK(is_minimal_plan(t, std::vector<ActionId>{0, 1}));
  CHECK_FALSE(is_minimal_plan(t, std::vector<ActionId>{0, 0, 1}));
  CHECK_FALSE(is_minimal_plan(t, std::vector<ActionId>{1}));
}

namespace {

std::vector<VarId> effect_vars(const Instance& inst, const std::vector<ActionId>& seq) {
  std::vector<VarId> out;
  for (auto a : seq)
    for (const auto& [v, x] : inst.actions[a].eff) out.push_back(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

TEST_CASE("valid plans only need variables they change") {
  std::mt19937_64 rng(11);
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    RandomProfile pr;
    pr.max_pre = 2;
    const auto inst = random_instance(pr, {1 + seed % 4, 2 + seed % 2, 1 + seed % 5, 50}, seed);
    for (int r = 0; r < 10; ++r) {
      const auto seq = testing::random_sequence(inst, 4, rng);
      if (!is_valid_plan(inst, seq)) continue;
      ++checked;
      const auto v0 = effect_vars(inst, seq);
      std::vector<VarId> need = diff_set(inst, inst.goal);
      for (auto a : seq)
        for (auto v : diff_set(inst, inst.actions[a].pre)) need.push_back(v);
      for (auto v : need) CHECK(std::binary_search(v0.begin(), v0.end(), v));
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("removing a bad action keeps a plan valid") {
  std::mt19937_64 rng(5);
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    RandomProfile pr;
    pr.max_pre = 0;
    const auto inst = random_instance(pr, {1 + seed % 4, 2 + seed % 2, 2 + seed % 5, 60}, seed);
    for (int r = 0; r < 20; ++r) {
      const auto seq = testing::random_sequence(inst, 5, rng);
      if (!is_valid_plan(inst, seq)) continue;
      for (std::size_t i = 0; i < seq.size(); ++i) {
        if (effect_polarity(inst, seq[i]).action != Polarity::Bad) continue;
        auto shorter = seq;
        shorter.erase(shorter.begin() + static_cast<std::ptrdiff_t>(i));
        CHECK(is_valid_plan(inst, shorter));
        ++checked;
      }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("adding actions never restores P, U or S") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RandomProfile pr;
    const auto inst = random_instance(pr, {1 + seed % 4, 2 + seed % 2, 6, 50}, seed);
    Instance growing = inst;
    growing.actions.clear();
    RestrictionProfile prev = classify(growing);
    for (const auto& a : inst.actions) {
      growing.actions.push_back(a);
      const auto now = classify(growing);
      CHECK((prev.post_unique || !now.post_unique));
      CHECK((prev.unary || !now.unary));
      CHECK((prev.single_valued || !now.single_valued));
      prev = now;
    }
  }
}

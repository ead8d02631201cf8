#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "planlab/sas.hpp"

namespace testing {

using namespace planlab;

// V={v1,v2}, d=2, I=(0,0), G={v1=1,v2=1}; a1: eff v1=1; a2: pre v1=1, eff v2=1.
inline Instance toy1() {
  InstanceBuilder b(2);
  b.add_var("v1", 0, 1);
  b.add_var("v2", 0, 1);
  b.add_action("a1", {}, {{0, 1}});
  b.add_action("a2", {{0, 1}}, {{1, 1}});
  return b.build();
}

// V={x,y}, G={x=1,y=1}; good a: eff x=1; mixed b: eff y=1, x=0.
inline Instance zt1() {
  InstanceBuilder b(2);
  b.add_var("x", 0, 1);
  b.add_var("y", 0, 1);
  b.add_action("a", {}, {{0, 1}});
  b.add_action("b", {}, {{0, 0}, {1, 1}});
  return b.build();
}

inline std::string fixture(const std::string& name) {
  return std::string(PLANLAB_FIXTURE_DIR) + "/" + name;
}

inline std::vector<ActionId> random_sequence(const Instance& inst, std::size_t max_len,
                                             std::mt19937_64& rng) {
  std::vector<ActionId> seq;
  if (inst.actions.empty()) return seq;
  const std::size_t len = rng() % (max_len + 1);
  for (std::size_t i = 0; i < len; ++i)
    seq.push_back(static_cast<ActionId>(rng() % inst.actions.size()));
  return seq;
}

// All sequences over the instance's actions up to the given length, shortest first.
template <class F>
void for_each_sequence(const Instance& inst, std::size_t max_len, F&& f) {
  std::vector<ActionId> seq;
  auto rec = [&](auto&& self, std::size_t len) -> void {
    if (seq.size() == len) {
      f(seq);
      return;
    }
    for (ActionId a = 0; a < inst.actions.size(); ++a) {
      seq.push_back(a);
      self(self, len);
      seq.pop_back();
    }
  };
  for (std::size_t len = 0; len <= max_len; ++len) rec(rec, len);
}

}  // namespace testing

// Property-based acceptance run. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails. Usage: acceptance [--fuzz-seconds N] [--only N]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <queue>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "planlab/errors.hpp"
#include "planlab/fo_mc.hpp"
#include "planlab/generators.hpp"
#include "planlab/instance_io.hpp"
#include "planlab/oracle.hpp"
#include "planlab/postunique.hpp"
#include "planlab/sas.hpp"
#include "planlab/zero_two.hpp"

using namespace planlab;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::size_t failures = 0;

  // Records a failure; keeps the first few messages.
  void fail(const std::string& what) {
    pass = false;
    if (failures++ < 3) detail << " [" << what << "]";
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string seed_tag(std::uint64_t seed) { return "seed " + std::to_string(seed); }

std::optional<std::size_t> shortest_len(const Instance& inst, std::size_t k) {
  const auto r = classify(inst).max_pre == 0 ? shortest_plan_regression(inst, k, 50'000'000)
                                             : shortest_plan(inst, k, 50'000'000);
  if (r.status == SearchStatus::BudgetExhausted) throw std::runtime_error("oracle budget exhausted");
  if (!r.plan) return std::nullopt;
  return r.plan->size();
}

bool solvable(const Instance& inst, std::size_t k) { return shortest_len(inst, k).has_value(); }

// --- 1 ------------------------------------------------------------------------

void criterion1(Outcome& o) {
  const auto t0 = Clock::now();
  std::size_t total = 0, unary = 0, positive = 0;
  for (std::uint64_t seed = 0; seed < 600; ++seed) {
    RandomProfile pr;
    pr.unary = seed % 2 == 0;
    pr.max_pre = seed % 4;
    const RandomSizes sz{1 + seed % 5, 1 + (seed / 5) % 3, 1 + (seed / 3) % 6, 60};
    const auto inst = random_instance(pr, sz, seed);
    const std::size_t k = (seed / 7) % 5;
    const bool expect = solvable(inst, k);
    positive += expect;
    ++total;
    const auto a = solve_via_mc(inst, k, Fragment::Sigma22);
    if (a.solvable != expect) o.fail("sigma22 " + seed_tag(seed));
    if (a.witness && !is_valid_plan(inst, a.witness->steps)) o.fail("sigma22 witness " + seed_tag(seed));
    if (classify(inst).unary) {
      ++unary;
      const auto b = solve_via_mc(inst, k, Fragment::Sigma1);
      if (b.solvable != expect) o.fail("sigma1 " + seed_tag(seed));
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 300) o.fail("took " + std::to_string(secs) + " s");
  o.detail << total << " instances (" << positive << " solvable), " << unary << " unary, "
           << o.failures << " disagreements, " << static_cast<int>(secs) << " s";
}

// --- 2 ------------------------------------------------------------------------

void criterion2(Outcome& o) {
  std::size_t runs = 0, plans = 0, max_nodes = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    RandomProfile pr;
    pr.post_unique = true;
    pr.max_pre = seed % 4;
    RandomSizes sz{1 + seed % 6, 2 + seed % 2, 1 + seed % 8, 60};
    sz.actions = std::min(sz.actions, sz.vars * sz.domain);
    const auto inst = random_instance(pr, sz, seed);
    const std::size_t k = seed % 6;
    const auto e = enumerate_minimal_plans(inst, k);
    if (e.status == SearchStatus::BudgetExhausted) {
      o.fail("enumeration budget " + seed_tag(seed));
      continue;
    }
    const auto r = solve_postunique(inst, k);
    ++runs;
    plans += r.plans.size();
    max_nodes = std::max(max_nodes, r.nodes);
    if (r.plans != e.plans) o.fail("plan sets differ " + seed_tag(seed));
    if (r.nodes > postunique_node_bound(k)) o.fail("node bound " + seed_tag(seed));
  }
  o.detail << runs << " instances, " << plans << " minimal plans, max " << max_nodes << " nodes";
}

// --- 3 ------------------------------------------------------------------------

std::optional<std::size_t> brute_steiner(const SteinerInstance& g) {
  const std::size_t m = g.arcs.size();
  std::optional<std::size_t> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    const auto w = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (best && w >= *best) continue;
    std::vector<char> seen(g.node_count, 0);
    seen[g.root] = 1;
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t i = 0; i < m; ++i)
        if ((mask >> i) & 1U && seen[g.arcs[i].tail] && !seen[g.arcs[i].head]) seen[g.arcs[i].head] = grew = 1;
    }
    if (std::all_of(g.terminals.begin(), g.terminals.end(), [&](auto t) { return seen[t] != 0; })) best = w;
  }
  return best;
}

void criterion3(Outcome& o) {
  std::size_t inst_count = 0, solved = 0, transformed = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    RandomProfile pr;
    pr.max_pre = 0;
    pr.max_eff = 2;
    pr.binary = seed % 3 == 0;
    const RandomSizes sz{1 + seed % 5, pr.binary ? 2u : 2 + seed % 2, 1 + seed % 6, 70};
    const auto inst = random_instance(pr, sz, seed);
    const std::size_t k = seed % 5;
    const auto z = solve_zero_two(inst, k);
    const bool expect = solvable(inst, k);
    ++inst_count;
    transformed += z.transformed;
    if (z.plan.has_value() != expect) o.fail("existence " + seed_tag(seed));
    if (z.plan) {
      ++solved;
      if (z.plan->size() > k) o.fail("length " + seed_tag(seed));
      if (!validate_plan(inst, *z.plan).valid) o.fail("invalid plan " + seed_tag(seed));
    }
  }

  std::mt19937_64 rng(99);
  std::size_t graphs = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    SteinerInstance g;
    g.node_count = 2 + rng() % 7;
    const std::size_t arcs = rng() % 17;
    for (std::size_t i = 0; i < arcs; ++i) {
      const auto t = static_cast<std::uint32_t>(rng() % g.node_count);
      const auto h = static_cast<std::uint32_t>(1 + rng() % (g.node_count - 1));
      const bool dup = std::any_of(g.arcs.begin(), g.arcs.end(),
                                   [&](const SteinerArc& a) { return a.tail == t && a.head == h; });
      if (t != h && !dup) g.arcs.push_back({t, h, static_cast<ActionId>(g.arcs.size())});
    }
    std::vector<std::uint32_t> pool;
    for (std::uint32_t v = 1; v < g.node_count; ++v) pool.push_back(v);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(1 + rng() % std::min<std::size_t>(4, pool.size()));
    std::sort(pool.begin(), pool.end());
    g.terminals = pool;
    g.bound = 64;
    const auto dw = dreyfus_wagner(g);
    const auto bf = brute_steiner(g);
    ++graphs;
    if (dw.has_value() != bf.has_value() || (dw && dw->weight != *bf))
      o.fail("Dreyfus-Wagner vs brute force, graph " + std::to_string(trial));
  }
  o.detail << inst_count << " instances (" << solved << " solvable, " << transformed
           << " via the chain transform), " << graphs << " Steiner graphs";
}

// --- 4 ------------------------------------------------------------------------

// Checks one instance for k = 0..2. Returns false on a mismatch.
bool check_transform(const Instance& inst, Outcome& o, std::size_t& checked) {
  const auto base = shortest_len(inst, 2);
  for (std::size_t k = 0; k <= 2; ++k) {
    const auto t = eliminate_two_effect_good_actions(inst, k);
    const auto p = classify(t.instance);
    if (p.max_pre != 0 || p.max_eff > 2 || (classify(inst).binary && !p.binary)) {
      o.fail("syntactic shape");
      return false;
    }
    for (ActionId a = 0; a < t.instance.action_count(); ++a)
      if (t.instance.actions[a].eff.size() == 2 && effect_polarity(t.instance, a).action == Polarity::Good) {
        o.fail("two-effect good action survives");
        return false;
      }
    ++checked;
    const bool expect = base && *base <= k;
    if (solvable(t.instance, t.k_prime) != expect) {
      o.fail("k=" + std::to_string(k) + " on\n" + serialize_instance(inst));
      return false;
    }
  }
  return true;
}

void criterion4(Outcome& o) {
  // All binary instances with n <= 3 and up to 3 actions. Actions form a
  // multiset, since action order does not change plan existence.
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<PartialState> effects{PartialState{}};
    for (VarId v = 0; v < n; ++v)
      for (Value x = 0; x < 2; ++x) effects.push_back(PartialState{{v, x}});
    for (VarId v = 0; v < n; ++v)
      for (VarId w = v + 1; w < n; ++w)
        for (Value x = 0; x < 2; ++x)
          for (Value y = 0; y < 2; ++y) effects.push_back(PartialState{{v, x}, {w, y}});
    std::size_t goals = 1;
    for (std::size_t i = 0; i < n; ++i) goals *= 3;
    const std::size_t e = effects.size();
    for (std::size_t c = 0; c < (goals << n); ++c) {
      const std::size_t init = c & ((std::size_t{1} << n) - 1);
      std::size_t code = c >> n;
      InstanceBuilder b(2);
      for (std::size_t v = 0; v < n; ++v, code /= 3) {
        std::optional<Value> goal;
        if (code % 3) goal = static_cast<Value>(code % 3 - 1);
        b.add_var("v" + std::to_string(v + 1), static_cast<Value>((init >> v) & 1U), goal);
      }
      const Instance shell = b.build();
      for (std::size_t m = 0; m <= 3; ++m) {
        std::vector<std::size_t> idx(m, 0);
        for (;;) {
          Instance inst = shell;
          for (std::size_t i = 0; i < m; ++i)
            inst.actions.push_back(Action{"a" + std::to_string(i + 1), {}, effects[idx[i]]});
          if (!check_transform(inst, o, checked)) return;
          // next non-decreasing index tuple
          std::size_t pos = m;
          while (pos > 0 && idx[pos - 1] == e - 1) --pos;
          if (pos == 0) break;
          ++idx[pos - 1];
          for (std::size_t j = pos; j < m; ++j) idx[j] = idx[pos - 1];
        }
      }
    }
  }
  // Domain 3, sampled.
  std::size_t sampled = 0;
  for (std::uint64_t seed = 0; seed < 3000; ++seed) {
    RandomProfile pr;
    pr.max_pre = 0;
    pr.max_eff = 2;
    const auto inst = random_instance(pr, {1 + seed % 3, 3, 1 + seed % 3, 70}, seed);
    ++sampled;
    if (!check_transform(inst, o, checked)) return;
  }
  o.detail << checked << " (instance, k) pairs, exhaustive over binary n <= 3, plus " << sampled
           << " sampled d = 3 instances";
}

// --- 5 ------------------------------------------------------------------------

std::size_t min_hitting_set(const HittingSetInput& in) {
  for (std::size_t k = 0; k <= in.universe; ++k) {
    auto probe = in;
    probe.k = k;
    if (has_hitting_set(probe)) return k;
  }
  return SIZE_MAX;  // some set is empty
}

void criterion5(Outcome& o) {
  std::size_t hs_inputs = 0;
  for (std::size_t u = 1; u <= 5; ++u) {
    const std::size_t subsets = std::size_t{1} << u;
    for (std::size_t c = 0; c <= 4; ++c) {
      std::vector<std::size_t> idx(c, 0);
      for (;;) {
        HittingSetInput in{u, {}, 3};
        for (auto mask : idx) {
          std::vector<std::uint32_t> s;
          for (std::uint32_t e = 0; e < u; ++e)
            if ((mask >> e) & 1U) s.push_back(e + 1);
          in.sets.push_back(s);
        }
        const std::size_t best = min_hitting_set(in);
        const auto red = from_hitting_set(in);
        const auto len = shortest_len(red.instance, 3);
        ++hs_inputs;
        for (std::size_t k = 0; k <= 3; ++k)
          if ((best <= k) != (len && *len <= k)) o.fail("hitting set u=" + std::to_string(u));
        std::size_t pos = c;
        while (pos > 0 && idx[pos - 1] == subsets - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t j = pos; j < c; ++j) idx[j] = idx[pos - 1];
      }
    }
  }

  std::size_t graphs = 0, cliques = 0;
  for (std::size_t size = 1; size <= 2; ++size) {
    MulticoloredGraph all{3, size, {}};
    for (std::uint32_t a = 0; a < all.vertex_count(); ++a)
      for (std::uint32_t b = a + 1; b < all.vertex_count(); ++b)
        if (all.part_of(a) != all.part_of(b)) all.edges.emplace_back(a, b);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.edges.size()); ++mask) {
      MulticoloredGraph g{3, size, {}};
      for (std::size_t i = 0; i < all.edges.size(); ++i)
        if ((mask >> i) & 1U) g.edges.push_back(all.edges[i]);
      const auto red = from_mcc_03(g);
      const bool expect = has_multicolored_clique(g);
      ++graphs;
      cliques += expect;
      if (red.k != 6) o.fail("bound");
      if (solvable(red.instance, red.k) != expect) o.fail("(0,3) graph mask " + std::to_string(mask));
    }
  }

  MulticoloredGraph tri{3, 1, {{0, 1}, {0, 2}, {1, 2}}};
  const auto ubs = from_mcc_ubs(tri);
  const auto len = shortest_len(ubs.instance, 24);
  if (ubs.k != 24) o.fail("UBS bound " + std::to_string(ubs.k));
  if (!len || *len != 24) o.fail("triangle shortest plan is not 24");
  o.detail << hs_inputs << " hitting-set inputs, " << graphs << " 3-partite graphs (" << cliques
           << " with a clique), triangle shortest plan " << (len ? std::to_string(*len) : "none");
}

// --- 6 ------------------------------------------------------------------------

void criterion6(Outcome& o) {
  for (Value v1 = 0; v1 < 2; ++v1)
    for (Value v2 = 0; v2 < 2; ++v2) {
      const auto len = shortest_len(or2_instance(v1, v2), 20);
      const bool expect = v1 == 1 || v2 == 1;
      if (len.has_value() != expect) o.fail("solvability at v1=" + std::to_string(v1) + " v2=" + std::to_string(v2));
      if (len && *len != 6) o.fail("length " + std::to_string(*len));
      o.detail << "(" << v1 << "," << v2 << ")->" << (len ? std::to_string(*len) : "none") << " ";
    }
}

// --- 7 ------------------------------------------------------------------------

void criterion7(Outcome& o) {
  std::size_t pub = 0, pub_yes = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t t = 2 + seed % 2;
    std::vector<Bounded> parts;
    bool any = false;
    std::size_t kmax = 0;
    for (std::size_t i = 0; i < t; ++i) {
      RandomProfile pr;
      pr.post_unique = pr.unary = pr.binary = true;
      pr.max_pre = 1;
      const auto inst = random_instance(pr, {2 + (seed + i) % 2, 2, 1 + (seed * 3 + i) % 3, 90}, seed * 10 + i);
      const std::size_t k = 1 + (seed / 2 + i) % 2;
      kmax = std::max(kmax, k);
      any = any || solvable(inst, k);
      parts.push_back({inst, k});
    }
    const auto c = compose_pub(parts);
    if (c.bound != kmax + 1 + 6 * ceil_log2(t)) o.fail("pub bound arithmetic");
    const bool got = solvable(c.instance, c.bound);
    ++pub;
    pub_yes += got;
    if (got != any) o.fail("pub " + seed_tag(seed));
  }

  std::size_t zt = 0, zt_yes = 0;
  for (std::uint64_t seed = 0; seed < 70; ++seed) {
    const std::size_t t = 2 + seed % 2;
    const std::size_t k = seed < 60 ? 1 : 2;
    std::vector<Instance> parts;
    bool any = false;
    for (std::uint64_t s = seed * 100; parts.size() < t; ++s) {
      RandomProfile pr;
      pr.max_pre = 0;
      pr.max_eff = 2;
      pr.binary = true;
      const auto inst = random_instance(pr, {1 + s % 3, 2, 1 + s % 3, 90}, s);
      const auto d = delta_vars(inst).size();
      if (d == 0 || d > k * (k + 3) + 1) continue;
      any = any || solvable(inst, k);
      parts.push_back(inst);
    }
    const auto c = compose_zero_two(parts, k);
    if (c.k_inner != k * (k + 3) + 1 || c.bound != 4 * c.k_inner + 1) o.fail("zero-two bound arithmetic");
    const bool got = solvable(c.instance, c.bound);
    ++zt;
    zt_yes += got;
    if (got != any) o.fail("zero-two " + seed_tag(seed));
  }
  o.detail << pub << " P,U,B compositions (" << pub_yes << " solvable), " << zt << " (0,2) compositions ("
           << zt_yes << " solvable)";
}

// --- 8 ------------------------------------------------------------------------

std::vector<ActionId> random_sequence(const Instance& inst, std::size_t max_len, std::mt19937_64& rng) {
  std::vector<ActionId> seq(rng() % (max_len + 1));
  for (auto& a : seq) a = static_cast<ActionId>(rng() % inst.action_count());
  return seq;
}

void criterion8(Outcome& o) {
  std::mt19937_64 rng(8);
  std::size_t pairs = 0, valid = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    RandomProfile pr;
    pr.post_unique = seed % 2 == 0;
    pr.max_pre = seed % 3;
    RandomSizes sz{1 + seed % 4, 2 + seed % 2, 1 + seed % 5, 60};
    if (pr.post_unique) sz.actions = std::min(sz.actions, sz.vars * sz.domain);
    const auto inst = random_instance(pr, sz, seed);
    for (int r = 0; r < 10; ++r) {
      // half the time start from a shortest plan, possibly with one extra action
      std::vector<ActionId> seq = random_sequence(inst, 5, rng);
      if (r % 2 == 0) {
        if (auto p = shortest_plan(inst, 5).plan) {
          seq = p->steps;
          if (rng() % 2) seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(rng() % (seq.size() + 1)),
                                    static_cast<ActionId>(rng() % inst.action_count()));
        }
      }
      ++pairs;
      const bool ok = is_valid_plan(inst, seq);
      valid += ok;

      if (ok == find_required_pair(inst, seq).has_value()) o.fail("required pair " + seed_tag(seed));

      std::vector<VarId> v0;
      for (auto a : seq)
        for (const auto& [v, x] : inst.actions[a].eff) v0.push_back(v);
      std::sort(v0.begin(), v0.end());
      v0.erase(std::unique(v0.begin(), v0.end()), v0.end());
      std::vector<VarId> need = diff_set(inst, inst.goal);
      for (auto a : seq)
        for (auto v : diff_set(inst, inst.actions[a].pre)) need.push_back(v);
      const bool covered =
          std::all_of(need.begin(), need.end(), [&](VarId v) { return std::binary_search(v0.begin(), v0.end(), v); });
      const bool restricted = covered && is_valid_plan(restrict(inst, v0), seq);
      if (ok != restricted) o.fail("restriction " + seed_tag(seed));
    }
  }
  o.detail << pairs << " (instance, sequence) pairs, " << valid << " valid";
}

// --- 9 ------------------------------------------------------------------------

std::string mutate(std::string s, std::mt19937_64& rng) {
  static const char alphabet[] = "0123456789=# \n\tabcxyzSASPvarsdomainitgoalctonpref-+._()\xff";
  const int edits = 1 + static_cast<int>(rng() % 6);
  for (int e = 0; e < edits; ++e) {
    const std::size_t pos = s.empty() ? 0 : rng() % (s.size() + 1);
    switch (rng() % 6) {
      case 0:  // insert
        s.insert(s.begin() + static_cast<std::ptrdiff_t>(pos), alphabet[rng() % (sizeof alphabet - 1)]);
        break;
      case 1:  // delete
        if (pos < s.size()) s.erase(pos, 1 + rng() % 4);
        break;
      case 2:  // overwrite with any byte
        if (pos < s.size()) s[pos] = static_cast<char>(rng() % 256);
        break;
      case 3: {  // duplicate a span
        if (pos < s.size()) {
          const auto len = 1 + rng() % 20;
          s.insert(pos, s.substr(pos, len));
        }
        break;
      }
      case 4:  // big number
        s.insert(pos, std::to_string(rng()));
        break;
      default:  // truncate
        s.resize(pos);
        break;
    }
  }
  return s;
}

void criterion9(Outcome& o, double fuzz_seconds) {
  std::vector<std::string> corpus;
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(PLANLAB_FIXTURE_DIR)) {
    if (entry.path().extension() != ".sas") continue;
    const auto text = read_file(entry.path().string());
    ++files;
    try {
      const auto inst = parse_instance(text);
      if (serialize_instance(inst) != text) o.fail("not canonical: " + entry.path().filename().string());
      if (parse_instance(serialize_instance(inst)) != inst) o.fail("round trip: " + entry.path().filename().string());
    } catch (const std::exception& ex) {
      o.fail(entry.path().filename().string() + ": " + ex.what());
    }
    corpus.push_back(text);
  }
  if (files == 0) o.fail("empty fixture corpus");

  std::mt19937_64 rng(9);
  const auto t0 = Clock::now();
  std::size_t inputs = 0, accepted = 0;
  while (seconds_since(t0) < fuzz_seconds) {
    for (int burst = 0; burst < 200; ++burst) {
      const std::string text = mutate(corpus[rng() % corpus.size()], rng);
      ++inputs;
      try {
        const auto inst = parse_instance(text);
        ++accepted;
        if (parse_instance(serialize_instance(inst)) != inst) o.fail("accepted input does not round-trip");
      } catch (const ParseError&) {
      } catch (const std::exception& ex) {
        o.fail(std::string("non-ParseError exception: ") + ex.what());
      }
    }
  }
  o.detail << files << " fixture files round-trip; fuzzed " << inputs << " inputs for "
           << static_cast<int>(seconds_since(t0)) << " s (" << accepted << " accepted), no other exceptions";
}

}  // namespace

int main(int argc, char** argv) {
  double fuzz_seconds = 60;
  int only = 0;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (!std::strcmp(argv[i], "--fuzz-seconds")) fuzz_seconds = std::stod(argv[i + 1]);
    else if (!std::strcmp(argv[i], "--only")) only = std::stoi(argv[i + 1]);
  }

  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"cross-solver agreement (oracle, Sigma22, Sigma1)", criterion1},
      {"post-unique minimal-plan enumeration", criterion2},
      {"(0,2) Steiner pipeline", criterion3},
      {"chain transform equivalence", criterion4},
      {"reduction equivalences", criterion5},
      {"OR2 gadget", criterion6},
      {"OR-compositions", criterion7},
      {"required pair and restriction invariants", criterion8},
      {"parser round trip and fuzzing", [&](Outcome& o) { criterion9(o, fuzz_seconds); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<std::size_t>(only) != i + 1) continue;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& ex) {
      o.fail(std::string("exception: ") + ex.what());
    }
    failed += !o.pass;
    std::printf("criterion %zu %s: %s (%.1f s) %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                seconds_since(t0), o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}

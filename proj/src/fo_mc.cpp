#include "planlab/fo_mc.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "planlab/errors.hpp"

namespace planlab {

// --- structures -----------------------------------------------------------

const Relation* RelationalStructure::find(const std::string& name) const {
  for (const auto& r : relations) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

UniverseLayout layout_of(const Instance& instance) {
  return UniverseLayout{instance.var_count(), instance.action_count(), instance.domain_size};
}

namespace {

class StructureBuilder {
 public:
  explicit StructureBuilder(RelationalStructure& s) : s_(s) {}

  Relation& add(std::string name, std::size_t arity) {
    s_.relations.push_back(Relation{std::move(name), arity, {}});
    return s_.relations.back();
  }

  static void finish(Relation& r) {
    std::sort(r.tuples.begin(), r.tuples.end());
    r.tuples.erase(std::unique(r.tuples.begin(), r.tuples.end()), r.tuples.end());
  }

 private:
  RelationalStructure& s_;
};

}  // namespace

RelationalStructure build_structure(const Instance& instance) {
  check_instance(instance);
  const auto L = layout_of(instance);
  RelationalStructure s;
  for (VarId v = 0; v < instance.var_count(); ++v) {
    s.names.push_back(instance.var_names[v]);
    s.sorts.push_back(ElementSort::Variable);
  }
  for (const auto& a : instance.actions) {
    s.names.push_back(a.name);
    s.sorts.push_back(ElementSort::Action);
  }
  for (Value x = 0; x < instance.domain_size; ++x) {
    s.names.push_back(std::to_string(x));
    s.sorts.push_back(ElementSort::Value);
  }
  s.names.push_back("u");
  s.sorts.push_back(ElementSort::Undefined);
  s.names.push_back("dum_a");
  s.sorts.push_back(ElementSort::DummyAction);

  StructureBuilder b(s);
  s.relations.reserve(16);
  auto& var = b.add("VAR", 1);
  for (VarId v = 0; v < instance.var_count(); ++v) var.tuples.push_back({L.var(v)});
  auto& act = b.add("ACT", 1);
  for (ActionId a = 0; a < instance.action_count(); ++a) act.tuples.push_back({L.action(a)});
  act.tuples.push_back({L.dum_a()});
  auto& dom = b.add("DOM", 1);
  for (Value x = 0; x < instance.domain_size; ++x) dom.tuples.push_back({L.value(x)});
  dom.tuples.push_back({L.undefined()});
  b.add("DUM_A", 1).tuples.push_back({L.dum_a()});

  auto& init = b.add("INIT_V", 2);
  for (VarId v = 0; v < instance.var_count(); ++v)
    init.tuples.push_back({L.var(v), L.value(instance.init[v])});
  auto& goal = b.add("GOAL_V", 2);
  for (const auto& [v, x] : instance.goal) goal.tuples.push_back({L.var(v), L.value(x)});
  auto& pre = b.add("PRE", 2);
  auto& eff = b.add("EFF", 2);
  auto& pre_v = b.add("PRE_V", 3);
  auto& eff_v = b.add("EFF_V", 3);
  for (ActionId a = 0; a < instance.action_count(); ++a) {
    for (const auto& [v, x] : instance.actions[a].pre) {
      pre.tuples.push_back({L.action(a), L.var(v)});
      pre_v.tuples.push_back({L.action(a), L.var(v), L.value(x)});
    }
    for (const auto& [v, x] : instance.actions[a].eff) {
      eff.tuples.push_back({L.action(a), L.var(v)});
      eff_v.tuples.push_back({L.action(a), L.var(v), L.value(x)});
    }
  }
  for (auto& r : s.relations) StructureBuilder::finish(r);
  return s;
}

RelationalStructure build_extended_structure(const Instance& instance, std::size_t k) {
  RelationalStructure s = build_structure(instance);
  const auto L = layout_of(instance);
  for (std::size_t i = 0; i < k; ++i) {
    s.names.push_back("d" + std::to_string(i + 1));
    s.sorts.push_back(ElementSort::Dummy);
  }
  StructureBuilder b(s);
  auto& dum = b.add("DUM", 1);
  for (std::size_t i = 0; i < k; ++i) dum.tuples.push_back({L.dummy(i)});

  auto& diff_act = b.add("DIFF_ACT", 2);
  for (ActionId a = 0; a < instance.action_count(); ++a) {
    const auto diff = diff_set(instance, instance.actions[a].pre);
    if (diff.size() > k) {
      s.unusable_actions.push_back(a);
      continue;
    }
    for (VarId v : diff) diff_act.tuples.push_back({L.action(a), L.var(v)});
    for (std::size_t i = 0; i < k - diff.size(); ++i)
      diff_act.tuples.push_back({L.action(a), L.dummy(i)});
  }

  auto& diff_goal = b.add("DIFF_GOAL", 1);
  const auto gdiff = delta_vars(instance);
  for (VarId v : gdiff) diff_goal.tuples.push_back({L.var(v)});
  if (gdiff.size() > k) {
    s.trivially_unsolvable = true;
  } else {
    for (std::size_t i = 0; i < k - gdiff.size(); ++i) diff_goal.tuples.push_back({L.dummy(i)});
  }

  auto& goal = b.add("GOAL", 1);
  for (const auto& [v, x] : instance.goal) goal.tuples.push_back({L.var(v)});

  for (auto& r : s.relations) StructureBuilder::finish(r);
  return s;
}

std::string to_text(const RelationalStructure& structure) {
  std::ostringstream out;
  out << "universe";
  for (const auto& n : structure.names) out << ' ' << n;
  out << '\n';
  for (const auto& r : structure.relations) {
    out << r.name << ':';
    for (const auto& t : r.tuples) {
      out << " (";
      for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << structure.names.at(t[i]);
      out << ')';
    }
    out << '\n';
  }
  return out.str();
}

// --- formulas -------------------------------------------------------------

Formula Formula::exists(std::uint32_t v, Formula body) {
  Formula f;
  f.kind = Kind::Exists;
  f.variable = v;
  f.children.push_back(std::move(body));
  return f;
}

Formula Formula::forall(std::uint32_t v, Formula body) {
  Formula f;
  f.kind = Kind::Forall;
  f.variable = v;
  f.children.push_back(std::move(body));
  return f;
}

Formula Formula::conj(std::vector<Formula> parts) {
  Formula f;
  f.kind = Kind::And;
  f.children = std::move(parts);
  return f;
}

Formula Formula::disj(std::vector<Formula> parts) {
  Formula f;
  f.kind = Kind::Or;
  f.children = std::move(parts);
  return f;
}

Formula Formula::negate(Formula g) {
  Formula f;
  f.kind = Kind::Not;
  f.children.push_back(std::move(g));
  return f;
}

Formula Formula::implies(Formula a, Formula b) {
  Formula f;
  f.kind = Kind::Implies;
  f.children.push_back(std::move(a));
  f.children.push_back(std::move(b));
  return f;
}

Formula Formula::atom(std::string relation, std::vector<std::uint32_t> terms) {
  Formula f;
  f.kind = Kind::Atom;
  f.relation = std::move(relation);
  f.terms = std::move(terms);
  return f;
}

Formula Formula::equal(std::uint32_t a, std::uint32_t b) {
  Formula f;
  f.kind = Kind::Equal;
  f.terms = {a, b};
  return f;
}

std::size_t node_count(const Formula& f) {
  std::size_t n = 1;
  for (const auto& c : f.children) n += node_count(c);
  return n;
}

namespace {

void sexpr(const Formula& f, const std::vector<std::string>& names, std::ostream& out) {
  using K = Formula::Kind;
  auto name = [&](std::uint32_t v) {
    return v < names.size() ? names[v] : "?" + std::to_string(v);
  };
  switch (f.kind) {
    case K::Exists:
    case K::Forall:
      out << '(' << (f.kind == K::Exists ? "exists " : "forall ") << name(f.variable) << ' ';
      sexpr(f.children[0], names, out);
      out << ')';
      return;
    case K::Atom:
      out << '(' << f.relation;
      for (auto t : f.terms) out << ' ' << name(t);
      out << ')';
      return;
    case K::Equal:
      out << "(= " << name(f.terms[0]) << ' ' << name(f.terms[1]) << ')';
      return;
    case K::And: out << "(and"; break;
    case K::Or: out << "(or"; break;
    case K::Not: out << "(not"; break;
    case K::Implies: out << "(implies"; break;
  }
  for (const auto& c : f.children) {
    out << ' ';
    sexpr(c, names, out);
  }
  out << ')';
}

using F = Formula;

}  // namespace

std::string to_sexpr(const Sentence& s) {
  std::ostringstream out;
  sexpr(s.root, s.variables, out);
  return out.str();
}

std::vector<std::pair<Formula::Kind, std::uint32_t>> quantifier_prefix(const Formula& f) {
  std::vector<std::pair<Formula::Kind, std::uint32_t>> out;
  const Formula* cur = &f;
  while (cur->kind == Formula::Kind::Exists || cur->kind == Formula::Kind::Forall) {
    out.emplace_back(cur->kind, cur->variable);
    cur = &cur->children[0];
  }
  return out;
}

Sentence build_sigma22_formula(std::size_t k) {
  if (k < 1) throw ContractError("the Sigma_{2,2} formula needs k >= 1");
  Sentence s;
  for (std::size_t i = 1; i <= k; ++i) s.variables.push_back("a" + std::to_string(i));
  const auto v = static_cast<std::uint32_t>(k);
  const auto x = static_cast<std::uint32_t>(k + 1);
  s.variables.push_back("v");
  s.variables.push_back("x");
  auto a = [](std::size_t i) { return static_cast<std::uint32_t>(i - 1); };  // 1-based

  // value(<a_1..a_i>, v, x)
  auto value = [&](auto&& self, std::size_t i) -> Formula {
    if (i == 0) return F::atom("INIT_V", {v, x});
    return F::disj({F::conj({self(self, i - 1), F::negate(F::atom("EFF", {a(i), v}))}),
                    F::atom("EFF_V", {a(i), v, x})});
  };

  std::vector<Formula> pre_all;
  for (std::size_t i = 1; i <= k; ++i)
    pre_all.push_back(F::implies(F::atom("PRE_V", {a(i), v, x}), value(value, i - 1)));
  Formula goal = F::implies(F::atom("GOAL_V", {v, x}), value(value, k));

  std::vector<Formula> acts;
  for (std::size_t i = 1; i <= k; ++i) acts.push_back(F::atom("ACT", {a(i)}));

  Formula body = F::conj(
      {F::conj(std::move(acts)),
       F::implies(F::conj({F::atom("VAR", {v}), F::atom("DOM", {x})}),
                  F::conj({F::conj(std::move(pre_all)), std::move(goal)}))});
  Formula f = F::forall(v, F::forall(x, std::move(body)));
  for (std::size_t i = k; i >= 1; --i) f = F::exists(a(i), std::move(f));
  s.root = std::move(f);
  return s;
}

Sentence build_sigma1_formula(std::size_t k) {
  if (k < 1) throw ContractError("the Sigma_1 formula needs k >= 1");
  if (k > kMaxSigma1K)
    throw ContractError("Sigma_1 formula limited to k <= " + std::to_string(kMaxSigma1K));
  Sentence s;
  auto id = [](std::size_t i) { return static_cast<std::uint32_t>(i); };
  auto a = [&](std::size_t i) { return id(i - 1); };
  auto vv = [&](std::size_t i) { return id(k + i - 1); };
  auto d = [&](std::size_t i) { return id(2 * k + i - 1); };
  auto xp = [&](std::size_t i, std::size_t j) { return id(3 * k + (i - 1) * k + (j - 1)); };
  auto xg = [&](std::size_t i) { return id(3 * k + k * k + i - 1); };
  const std::size_t total = 3 * k + k * k + k;
  s.variables.resize(total);
  for (std::size_t i = 1; i <= k; ++i) {
    s.variables[a(i)] = "a" + std::to_string(i);
    s.variables[vv(i)] = "v" + std::to_string(i);
    s.variables[d(i)] = "d" + std::to_string(i);
    s.variables[xg(i)] = "xg" + std::to_string(i);
    for (std::size_t j = 1; j <= k; ++j)
      s.variables[xp(i, j)] = "x" + std::to_string(i) + "_" + std::to_string(j);
  }

  // value(a_1..a_i, v, x)
  auto value = [&](auto&& self, std::size_t i, std::uint32_t v, std::uint32_t x) -> Formula {
    if (i == 0) return F::atom("INIT_V", {v, x});
    return F::disj({F::conj({self(self, i - 1, v, x), F::negate(F::atom("EFF", {a(i), v}))}),
                    F::atom("EFF_V", {a(i), v, x})});
  };

  // Subset block shared by diff-op and diff-goal.
  auto subsets = [&](auto&& member) {
    std::vector<Formula> options;
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      std::vector<Formula> parts;
      std::vector<std::size_t> J;
      for (std::size_t j = 1; j <= k; ++j) {
        if (mask >> (j - 1) & 1U) J.push_back(j);
      }
      for (std::size_t p = 0; p < J.size(); ++p) {
        for (std::size_t q = p + 1; q < J.size(); ++q)
          parts.push_back(F::negate(F::equal(vv(J[p]), vv(J[q]))));
      }
      for (std::size_t j : J) parts.push_back(member(vv(j)));
      for (std::size_t j = 1; j <= k - J.size(); ++j) parts.push_back(member(d(j)));
      options.push_back(F::conj(std::move(parts)));
    }
    return F::disj(std::move(options));
  };

  std::vector<Formula> guards;
  for (std::size_t i = 1; i <= k; ++i) guards.push_back(F::atom("ACT", {a(i)}));
  for (std::size_t i = 1; i <= k; ++i) guards.push_back(F::atom("VAR", {vv(i)}));
  for (std::size_t i = 1; i <= k; ++i) {
    for (std::size_t j = 1; j <= k; ++j) guards.push_back(F::atom("DOM", {xp(i, j)}));
  }
  for (std::size_t i = 1; i <= k; ++i) guards.push_back(F::atom("DUM", {d(i)}));
  for (std::size_t i = 1; i <= k; ++i) {
    for (std::size_t j = i + 1; j <= k; ++j) guards.push_back(F::negate(F::equal(d(i), d(j))));
  }

  std::vector<Formula> check_eff;
  for (std::size_t i = 1; i <= k; ++i)
    check_eff.push_back(
        F::disj({F::atom("EFF", {a(i), vv(i)}), F::atom("DUM_A", {a(i)})}));

  std::vector<Formula> diff_op_all;
  for (std::size_t i = 1; i <= k; ++i) {
    auto member = [&](std::uint32_t t) { return F::atom("DIFF_ACT", {a(i), t}); };
    diff_op_all.push_back(F::disj({F::atom("DUM_A", {a(i)}), subsets(member)}));
  }
  Formula diff_goal = subsets([&](std::uint32_t t) { return F::atom("DIFF_GOAL", {t}); });

  std::vector<Formula> check_pre_all;
  for (std::size_t i = 1; i <= k; ++i) {
    std::vector<Formula> per_var;
    for (std::size_t j = 1; j <= k; ++j) {
      per_var.push_back(F::disj(
          {F::conj({F::atom("PRE_V", {a(i), vv(j), xp(i, j)}),
                    value(value, i - 1, vv(j), xp(i, j))}),
           F::negate(F::atom("PRE", {a(i), vv(j)}))}));
    }
    check_pre_all.push_back(F::conj(std::move(per_var)));
  }

  std::vector<Formula> check_goal;
  for (std::size_t i = 1; i <= k; ++i) {
    check_goal.push_back(F::disj(
        {F::conj({F::atom("GOAL_V", {vv(i), xg(i)}), value(value, k, vv(i), xg(i))}),
         F::negate(F::atom("GOAL", {vv(i)}))}));
  }

  Formula f = F::conj({F::conj(std::move(guards)), F::conj(std::move(check_eff)),
                       F::conj(std::move(diff_op_all)), std::move(diff_goal),
                       F::conj(std::move(check_pre_all)), F::conj(std::move(check_goal))});
  for (std::size_t v = total; v-- > 0;) f = F::exists(id(v), std::move(f));
  s.root = std::move(f);
  return s;
}

// --- evaluation -----------------------------------------------------------

namespace {

class RelationIndex {
 public:
  RelationIndex(const Relation& r, std::size_t universe) : arity_(r.arity), n_(universe) {
    std::uint64_t cells = 1;
    bool dense = true;
    for (std::size_t i = 0; i < arity_; ++i) {
      if (cells > (std::uint64_t{1} << 24) / std::max<std::size_t>(n_, 1)) dense = false;
      cells *= std::max<std::size_t>(n_, 1);
    }
    dense_ = dense;
    if (dense_) bits_.assign(cells, 0);
    for (const auto& t : r.tuples) {
      if (t.size() != arity_) throw ContractError("tuple arity mismatch in " + r.name);
      const std::uint64_t key = encode(t.data());
      if (dense_) {
        bits_[key] = 1;
      } else {
        set_.insert(key);
      }
    }
  }

  std::size_t arity() const { return arity_; }

  bool contains(const std::uint32_t* elems) const {
    const std::uint64_t key = encode(elems);
    return dense_ ? bits_[key] != 0 : set_.count(key) != 0;
  }

 private:
  std::uint64_t encode(const std::uint32_t* t) const {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < arity_; ++i) key = key * n_ + t[i];
    return key;
  }

  std::size_t arity_;
  std::size_t n_;
  bool dense_ = true;
  std::vector<char> bits_;
  std::unordered_set<std::uint64_t> set_;
};

struct Node {
  Formula::Kind kind;
  std::uint32_t variable = 0;
  const RelationIndex* rel = nullptr;
  std::vector<std::uint32_t> terms;
  std::vector<Node> children;
};

class Evaluator {
 public:
  Evaluator(const RelationalStructure& s) : structure_(s) {
    index_.reserve(s.relations.size());
    for (const auto& r : s.relations) index_.emplace(r.name, RelationIndex(r, s.size()));
  }

  Node compile(const Formula& f) const {
    Node n{f.kind, f.variable, nullptr, f.terms, {}};
    if (f.kind == Formula::Kind::Atom) {
      auto it = index_.find(f.relation);
      if (it == index_.end()) throw ContractError("unknown relation " + f.relation);
      if (it->second.arity() != f.terms.size())
        throw ContractError("arity mismatch for " + f.relation);
      n.rel = &it->second;
    }
    if (f.kind == Formula::Kind::Equal && f.terms.size() != 2)
      throw ContractError("equality needs two terms");
    n.children.reserve(f.children.size());
    for (const auto& c : f.children) n.children.push_back(compile(c));
    return n;
  }

  bool eval(const Node& n, std::vector<std::uint32_t>& env) {
    using K = Formula::Kind;
    switch (n.kind) {
      case K::Atom: {
        std::uint32_t buf[8];
        std::vector<std::uint32_t> big;
        std::uint32_t* t = buf;
        if (n.terms.size() > 8) {
          big.resize(n.terms.size());
          t = big.data();
        }
        for (std::size_t i = 0; i < n.terms.size(); ++i) t[i] = env[n.terms[i]];
        return n.rel->contains(t);
      }
      case K::Equal: return env[n.terms[0]] == env[n.terms[1]];
      case K::Not: return !eval(n.children[0], env);
      case K::Implies: return !eval(n.children[0], env) || eval(n.children[1], env);
      case K::And:
        for (const auto& c : n.children) {
          if (!eval(c, env)) return false;
        }
        return true;
      case K::Or:
        for (const auto& c : n.children) {
          if (eval(c, env)) return true;
        }
        return false;
      case K::Exists:
      case K::Forall: {
        const bool want = n.kind == K::Exists;
        const std::uint32_t saved = env[n.variable];
        bool result = !want;
        for (std::uint32_t e = 0; e < structure_.size(); ++e) {
          env[n.variable] = e;
          ++assignments;
          if (eval(n.children[0], env) == want) {
            result = want;
            break;
          }
        }
        env[n.variable] = saved;
        return result;
      }
    }
    return false;
  }

  std::size_t assignments = 0;

 private:
  const RelationalStructure& structure_;
  std::unordered_map<std::string, RelationIndex> index_;
};

std::uint32_t max_variable(const Formula& f) {
  std::uint32_t m = f.variable;
  for (auto t : f.terms) m = std::max(m, t);
  for (const auto& c : f.children) m = std::max(m, max_variable(c));
  return m;
}

void free_vars(const Formula& f, std::set<std::uint32_t>& bound, std::set<std::uint32_t>& out) {
  using K = Formula::Kind;
  if (f.kind == K::Exists || f.kind == K::Forall) {
    const bool fresh = bound.insert(f.variable).second;
    free_vars(f.children[0], bound, out);
    if (fresh) bound.erase(f.variable);
    return;
  }
  for (auto t : f.terms) {
    if (!bound.count(t)) out.insert(t);
  }
  for (const auto& c : f.children) free_vars(c, bound, out);
}

std::set<std::uint32_t> free_vars(const Formula& f) {
  std::set<std::uint32_t> bound, out;
  free_vars(f, bound, out);
  return out;
}

// forall distributes over and; an implication with a conjunctive consequent
// splits into one implication per conjunct; quantifiers over a variable
// that is not free are dropped.
std::vector<Formula> conjuncts(const Formula& f) {
  using K = Formula::Kind;
  std::vector<Formula> out;
  if (f.kind == K::And) {
    for (const auto& c : f.children) {
      auto part = conjuncts(c);
      out.insert(out.end(), std::make_move_iterator(part.begin()),
                 std::make_move_iterator(part.end()));
    }
    return out;
  }
  if (f.kind == K::Forall) {
    for (auto& c : conjuncts(f.children[0])) {
      if (free_vars(c).count(f.variable)) {
        out.push_back(Formula::forall(f.variable, std::move(c)));
      } else {
        out.push_back(std::move(c));
      }
    }
    return out;
  }
  if (f.kind == K::Implies) {
    auto rhs = conjuncts(f.children[1]);
    if (rhs.size() == 1) return {f};
    for (auto& c : rhs) out.push_back(Formula::implies(f.children[0], std::move(c)));
    return out;
  }
  return {f};
}

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { w_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1U; }
  void merge(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
  }

 private:
  std::vector<std::uint64_t> w_;
};

struct Scheduled {
  Node node;
  Bits scope;  // prefix positions it mentions
};

class PrefixSearch {
 public:
  PrefixSearch(Evaluator& ev, std::vector<std::uint32_t> prefix, std::size_t universe,
               std::size_t env_size)
      : ev_(ev), prefix_(std::move(prefix)), universe_(universe), env_(env_size, 0),
        at_(prefix_.size()) {}

  void add(std::size_t level, Node node, Bits scope) {
    at_[level].push_back(Scheduled{std::move(node), std::move(scope)});
  }

  bool run() {
    Bits conflict(prefix_.size());
    return solve(0, conflict);
  }

  std::vector<std::uint32_t> witness() const {
    std::vector<std::uint32_t> w;
    for (auto v : prefix_) w.push_back(env_[v]);
    return w;
  }

  std::vector<std::uint32_t>& env() { return env_; }

 private:
  // Conflict-directed backjumping. On failure `out` holds the prefix
  // positions responsible.
  bool solve(std::size_t level, Bits& out) {
    if (level == prefix_.size()) return true;
    Bits conf(prefix_.size());
    for (std::uint32_t e = 0; e < universe_; ++e) {
      env_[prefix_[level]] = e;
      ++ev_.assignments;
      bool ok = true;
      for (const auto& c : at_[level]) {
        if (!ev_.eval(c.node, env_)) {
          conf.merge(c.scope);
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      Bits child(prefix_.size());
      if (solve(level + 1, child)) return true;
      if (!child.test(level)) {
        out = std::move(child);
        return false;
      }
      conf.merge(child);
    }
    conf.reset(level);
    out = std::move(conf);
    return false;
  }

  Evaluator& ev_;
  std::vector<std::uint32_t> prefix_;
  std::size_t universe_;
  std::vector<std::uint32_t> env_;
  std::vector<std::vector<Scheduled>> at_;
};

}  // namespace

ModelCheckResult model_check(const RelationalStructure& structure, const Sentence& sentence) {
  Evaluator ev(structure);
  ModelCheckResult result;

  std::vector<std::uint32_t> prefix;
  const Formula* matrix = &sentence.root;
  while (matrix->kind == Formula::Kind::Exists) {
    prefix.push_back(matrix->variable);
    matrix = &matrix->children[0];
  }
  std::unordered_map<std::uint32_t, std::size_t> position;
  for (std::size_t i = 0; i < prefix.size(); ++i) position[prefix[i]] = i;

  PrefixSearch search(ev, prefix, structure.size(), max_variable(sentence.root) + 1);
  std::vector<Node> upfront;
  for (const auto& c : conjuncts(*matrix)) {
    Bits scope(prefix.size());
    std::optional<std::size_t> level;
    for (auto v : free_vars(c)) {
      auto it = position.find(v);
      if (it == position.end()) throw ContractError("formula is not closed");
      scope.set(it->second);
      level = std::max(level.value_or(0), it->second);
    }
    Node node = ev.compile(c);
    if (level) {
      search.add(*level, std::move(node), std::move(scope));
    } else {
      upfront.push_back(std::move(node));
    }
  }
  for (const auto& n : upfront) {
    if (!ev.eval(n, search.env())) {
      result.assignments = ev.assignments;
      return result;
    }
  }
  result.satisfied = search.run();
  if (result.satisfied) result.witness = search.witness();
  result.assignments = ev.assignments;
  return result;
}

bool model_check_naive(const RelationalStructure& structure, const Sentence& sentence) {
  Evaluator ev(structure);
  std::vector<std::uint32_t> env(max_variable(sentence.root) + 1, 0);
  return ev.eval(ev.compile(sentence.root), env);
}

const char* to_string(Fragment f) {
  return f == Fragment::Sigma22 ? "sigma22" : "sigma1";
}

McSolveResult solve_via_mc(const Instance& instance, std::size_t k, Fragment fragment) {
  check_instance(instance);
  McSolveResult result;
  if (fragment == Fragment::Sigma1) {
    if (!classify(instance).unary)
      throw ContractError("the Sigma_1 route requires a unary instance");
    if (k > kMaxSigma1K)
      throw ContractError("the Sigma_1 route is limited to k <= " + std::to_string(kMaxSigma1K));
  }
  // No existential slots at k = 0; with no variables, Sigma_1 has no witness
  // for v_i even though the empty goal is met.
  if (k == 0 || (fragment == Fragment::Sigma1 && instance.var_count() == 0)) {
    result.trivial = true;
    result.solvable = is_goal_state(instance, instance.init);
    if (result.solvable) result.witness = Plan{};
    return result;
  }

  RelationalStructure structure;
  Sentence sentence;
  if (fragment == Fragment::Sigma22) {
    structure = build_structure(instance);
    sentence = build_sigma22_formula(k);
  } else {
    structure = build_extended_structure(instance, k);
    if (structure.trivially_unsolvable) {
      result.trivial = true;
      return result;
    }
    sentence = build_sigma1_formula(k);
  }
  result.formula_nodes = node_count(sentence.root);
  const auto mc = model_check(structure, sentence);
  result.assignments = mc.assignments;
  result.solvable = mc.satisfied;
  if (!mc.satisfied) return result;

  const auto L = layout_of(instance);
  Plan plan;
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint32_t e = mc.witness[i];
    if (e == L.dum_a()) continue;
    if (e < L.action(0) || e >= L.action(0) + instance.action_count())
      throw std::logic_error("witness slot is not an action");
    plan.steps.push_back(e - L.action(0));
  }
  if (!validate_plan(instance, plan).valid)
    throw std::logic_error("model-checking witness does not validate");
  result.witness = std::move(plan);
  return result;
}

}  // namespace planlab

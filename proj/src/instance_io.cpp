#include "planlab/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace planlab {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;  // 1-based
  std::vector<Token> tokens;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

// Splits into non-empty, non-comment lines of whitespace-separated tokens.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && is_space(raw[i])) ++i;
      if (i >= raw.size()) break;
      std::size_t start = i;
      while (i < raw.size() && !is_space(raw[i])) ++i;
      Token tok{raw.substr(start, i - start), start + 1};
      if (line.tokens.empty() && tok.text.front() == '#') break;
      line.tokens.push_back(tok);
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

[[noreturn]] void fail(const Line& line, const Token& tok, const std::string& msg) {
  throw ParseError(line.number, tok.column, msg, std::string(tok.text));
}

[[noreturn]] void fail_line(const Line& line, const std::string& msg) {
  throw ParseError(line.number, 1, msg);
}

std::optional<std::uint64_t> to_number(std::string_view s) {
  std::uint64_t value = 0;
  if (s.empty()) return std::nullopt;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::uint32_t number(const Line& line, const Token& tok, std::uint64_t limit,
                     const char* what) {
  auto v = to_number(tok.text);
  if (!v) fail(line, tok, std::string("expected a number for ") + what);
  if (*v >= limit) fail(line, tok, std::string(what) + " out of range");
  return static_cast<std::uint32_t>(*v);
}

void expect_keyword(const Line& line, std::string_view kw) {
  if (line.tokens.front().text != kw)
    fail(line, line.tokens.front(), "expected '" + std::string(kw) + "'");
}

const Line& next_line(const std::vector<Line>& lines, std::size_t& idx, std::string_view kw) {
  if (idx >= lines.size()) {
    std::size_t last = lines.empty() ? 1 : lines.back().number;
    throw ParseError(last, 1, "unexpected end of input, expected '" + std::string(kw) + "'");
  }
  const Line& line = lines[idx++];
  expect_keyword(line, kw);
  return line;
}

// <var>=<val>
Assignment assignment(const Line& line, const Token& tok, std::uint64_t n, std::uint64_t d) {
  auto eq = tok.text.find('=');
  if (eq == std::string_view::npos) fail(line, tok, "expected <var>=<val>");
  auto var = to_number(tok.text.substr(0, eq));
  auto val = to_number(tok.text.substr(eq + 1));
  if (!var || !val) fail(line, tok, "expected <var>=<val>");
  if (*var >= n) fail(line, tok, "variable index out of range");
  if (*val >= d) fail(line, tok, "value out of range");
  return Assignment{static_cast<VarId>(*var), static_cast<Value>(*val)};
}

void add_unique(PartialState& s, const Line& line, const Token& tok, Assignment a) {
  if (!s.insert(a.var, a.value)) fail(line, tok, "variable assigned twice");
}

}  // namespace

bool is_valid_name(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '.' || c == '+' || c == '-';
    if (!ok) return false;
  }
  return true;
}

std::string sanitize_name(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    if (c == ')') continue;
    if (c == ',' || c == '(' || c == ' ') {
      out += '.';
    } else {
      out += c;
    }
  }
  for (char& c : out) {
    if (!is_valid_name(std::string_view(&c, 1))) c = '_';
  }
  if (out.empty()) out = "_";
  return out;
}

Instance parse_instance(std::string_view text) {
  const auto lines = tokenize(text);
  std::size_t idx = 0;

  const Line& header = next_line(lines, idx, "SASP");
  if (header.tokens.size() != 2 || header.tokens[1].text != "1")
    fail_line(header, "unsupported header, expected 'SASP 1'");

  const Line& vars = next_line(lines, idx, "vars");
  if (vars.tokens.size() != 2) fail_line(vars, "expected 'vars <n>'");
  const std::uint32_t n = number(vars, vars.tokens[1], std::uint64_t{1} << 32, "variable count");

  const Line& domain = next_line(lines, idx, "domain");
  if (domain.tokens.size() != 2) fail_line(domain, "expected 'domain <d>'");
  const std::uint32_t d = number(domain, domain.tokens[1], std::uint64_t{1} << 32, "domain size");
  if (d < 1) fail(domain, domain.tokens[1], "domain size must be at least 1");

  const Line& init = next_line(lines, idx, "init");
  if (init.tokens.size() - 1 != n)
    fail_line(init, "init has " + std::to_string(init.tokens.size() - 1) + " values, expected " +
                        std::to_string(n));

  Instance inst;
  inst.domain_size = d;
  inst.init.reserve(n);
  for (std::size_t i = 1; i < init.tokens.size(); ++i)
    inst.init.push_back(number(init, init.tokens[i], d, "value"));

  const Line& goal = next_line(lines, idx, "goal");
  for (std::size_t i = 1; i < goal.tokens.size(); ++i)
    add_unique(inst.goal, goal, goal.tokens[i], assignment(goal, goal.tokens[i], n, d));

  std::unordered_set<std::string_view> action_names;
  while (idx < lines.size() && lines[idx].tokens.front().text == "action") {
    const Line& line = lines[idx++];
    const auto& t = line.tokens;
    if (t.size() < 4) fail_line(line, "expected 'action <name> pre ... eff ...'");
    if (!is_valid_name(t[1].text)) fail(line, t[1], "invalid action name");
    if (!action_names.insert(t[1].text).second) fail(line, t[1], "duplicate action name");
    if (t[2].text != "pre") fail(line, t[2], "expected 'pre'");
    Action a;
    a.name = std::string(t[1].text);
    std::size_t i = 3;
    for (; i < t.size() && t[i].text != "eff"; ++i)
      add_unique(a.pre, line, t[i], assignment(line, t[i], n, d));
    if (i == t.size()) fail_line(line, "missing 'eff'");
    for (++i; i < t.size(); ++i) add_unique(a.eff, line, t[i], assignment(line, t[i], n, d));
    inst.actions.push_back(std::move(a));
  }

  if (idx < lines.size() && lines[idx].tokens.front().text == "varnames") {
    const Line& line = lines[idx++];
    if (line.tokens.size() - 1 != n) fail_line(line, "varnames count does not match vars");
    std::unordered_set<std::string_view> seen;
    for (std::size_t i = 1; i < line.tokens.size(); ++i) {
      const auto& tok = line.tokens[i];
      if (!is_valid_name(tok.text)) fail(line, tok, "invalid variable name");
      if (!seen.insert(tok.text).second) fail(line, tok, "duplicate variable name");
      inst.var_names.emplace_back(tok.text);
    }
  } else {
    inst.var_names.reserve(n);
    for (VarId v = 0; v < n; ++v) inst.var_names.push_back(default_var_name(v));
  }

  if (idx < lines.size()) fail(lines[idx], lines[idx].tokens.front(), "unexpected directive");
  return inst;
}

std::string serialize_instance(const Instance& instance) {
  std::ostringstream out;
  auto partial = [&](const PartialState& s) {
    for (const auto& [v, x] : s) out << ' ' << v << '=' << x;
  };
  out << "SASP 1\n";
  out << "vars " << instance.var_count() << '\n';
  out << "domain " << instance.domain_size << '\n';
  out << "init";
  for (Value x : instance.init) out << ' ' << x;
  out << "\ngoal";
  partial(instance.goal);
  out << '\n';
  for (const auto& a : instance.actions) {
    out << "action " << a.name << " pre";
    partial(a.pre);
    out << " eff";
    partial(a.eff);
    out << '\n';
  }
  bool defaults = true;
  for (VarId v = 0; v < instance.var_names.size(); ++v) {
    if (instance.var_names[v] != default_var_name(v)) defaults = false;
  }
  if (!defaults) {
    out << "varnames";
    for (const auto& name : instance.var_names) out << ' ' << name;
    out << '\n';
  }
  return out.str();
}

Plan parse_plan(std::string_view text, const Instance& instance) {
  std::unordered_map<std::string_view, ActionId> by_name;
  for (ActionId i = 0; i < instance.actions.size(); ++i) by_name.emplace(instance.actions[i].name, i);
  Plan plan;
  for (const Line& line : tokenize(text)) {
    if (line.tokens.size() != 1) fail(line, line.tokens[1], "expected one action name per line");
    auto it = by_name.find(line.tokens[0].text);
    if (it == by_name.end()) fail(line, line.tokens[0], "unknown action");
    plan.steps.push_back(it->second);
  }
  return plan;
}

std::string serialize_plan(const Plan& plan, const Instance& instance) {
  std::string out;
  for (ActionId id : plan.steps) {
    out += instance.actions.at(id).name;
    out += '\n';
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace planlab

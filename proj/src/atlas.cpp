#include "crownlab/atlas.hpp"

#include <algorithm>
#include <cctype>

#include <fmt/format.h>

#include "crownlab/error.hpp"

namespace crownlab::atlas {

namespace {

using Op = Constraint::Op;

Constraint at_least(std::string name, int bound) { return {std::move(name), Op::GreaterEq, bound, {}}; }
Constraint above(std::string name, int bound) { return {std::move(name), Op::Greater, bound, {}}; }
Constraint twice(std::string name, std::string other) { return {std::move(name), Op::TwiceOf, 0, std::move(other)}; }

const std::vector<AtlasEntry>& table() {
  static const std::vector<AtlasEntry> rows{
      // Hermitian symmetric G/K; the crown is G/K x conj(G/K).
      {1, "SU({p},{q})/S(U({p})xU({q}))", {at_least("p", 1), at_least("q", 1)}, CrownClass::HermitianSelf, {}, false},
      {1, "SO0({p},2)/(SO({p})xSO(2))", {at_least("p", 1)}, CrownClass::HermitianSelf, {}, false},
      {1, "SO*({m})/U({n})", {at_least("n", 2), twice("m", "n")}, CrownClass::HermitianSelf, {}, false},
      {1, "Sp({n},R)/U({n})", {at_least("n", 1)}, CrownClass::HermitianSelf, {}, false},
      {1, "(e6(-14),so(10)+R)", {}, CrownClass::HermitianSelf, {}, false},
      {1, "(e7(-25),e6+R)", {}, CrownClass::HermitianSelf, {}, false},
      // Non-Hermitian G/K whose crown is a larger Hermitian space.
      {1, "SO0({p},1)/SO({p})", {above("p", 2)}, CrownClass::HermitianTarget, "SO0({p},2)/(SO({p})xSO(2))", false},
      {1, "Sp({p},{q})/(Sp({p})xSp({q}))", {at_least("p", 1), at_least("q", 1)}, CrownClass::HermitianTarget,
       "SU({2p},{2q})/S(U({2p})xU({2q}))", false},
      {1, "(f4(-20),so(9))", {}, CrownClass::HermitianTarget, "(e6(-14),so(10)+R)", false},
      // Rigid crowns.
      {2, "SL({n},R)/SO({n})", {above("n", 2)}, CrownClass::Rigid, {}, false},
      {2, "SO0({p},{q})/(SO({p})xSO({q}))", {above("p", 2), above("q", 2)}, CrownClass::Rigid, {}, false},
      {2, "SU*({m})/Sp({n})", {at_least("n", 2), twice("m", "n")}, CrownClass::Rigid, {}, false},
      {2, "SL({n},C)/SU({n})", {above("n", 2)}, CrownClass::Rigid, {}, false},
      {2, "SO({n},C)/SO({n})", {above("n", 3)}, CrownClass::Rigid, {}, false},
      {2, "Sp({n},C)/Sp({n})", {above("n", 1)}, CrownClass::Rigid, {}, false},
      {2, "other-exceptional", {}, CrownClass::Rigid, {}, true},
  };
  return rows;
}

struct Token {
  bool placeholder = false;
  std::string text;  // literal text or placeholder name
  int factor = 1;    // {2p}
};

std::vector<Token> tokenize(std::string_view pattern) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < pattern.size()) {
    if (pattern[i] == '{') {
      const std::size_t close = pattern.find('}', i);
      if (close == std::string_view::npos) throw Error(ErrorKind::InternalError, "unclosed placeholder");
      std::string_view name = pattern.substr(i + 1, close - i - 1);
      Token t{true, {}, 1};
      std::size_t digits = 0;
      while (digits < name.size() && std::isdigit(static_cast<unsigned char>(name[digits]))) ++digits;
      if (digits > 0) t.factor = std::stoi(std::string(name.substr(0, digits)));
      t.text = std::string(name.substr(digits));
      tokens.push_back(std::move(t));
      i = close + 1;
    } else {
      const std::size_t next = pattern.find('{', i);
      const std::size_t end = next == std::string_view::npos ? pattern.size() : next;
      tokens.push_back({false, std::string(pattern.substr(i, end - i)), 1});
      i = end;
    }
  }
  return tokens;
}

bool is_exceptional_label(std::string_view s) {
  return s.size() > 3 && s.front() == '(' && s.back() == ')' &&
         (s[1] == 'e' || s[1] == 'f' || s[1] == 'g') && std::isdigit(static_cast<unsigned char>(s[2]));
}

AtlasMatch make_match(const AtlasEntry& e, const Params& params) {
  AtlasMatch m{&e, params, e.marker ? e.family : instantiate(e.family, params), std::nullopt};
  if (!e.target.empty()) m.target = instantiate(e.target, params);
  return m;
}

}  // namespace

std::string_view to_string(CrownClass c) {
  switch (c) {
    case CrownClass::HermitianSelf: return "hermitian-self";
    case CrownClass::HermitianTarget: return "hermitian-target";
    case CrownClass::Rigid: return "rigid";
  }
  return "rigid";
}

bool Constraint::holds(const Params& p) const {
  const auto it = p.find(name);
  if (it == p.end()) return false;
  switch (op) {
    case Op::Greater: return it->second > bound;
    case Op::GreaterEq: return it->second >= bound;
    case Op::TwiceOf: {
      const auto o = p.find(other);
      return o != p.end() && it->second == 2 * o->second;
    }
  }
  return false;
}

std::string Constraint::describe() const {
  switch (op) {
    case Op::Greater: return fmt::format("{}>{}", name, bound);
    case Op::GreaterEq: return fmt::format("{}>={}", name, bound);
    case Op::TwiceOf: return fmt::format("{}=2{}", name, other);
  }
  return {};
}

std::vector<std::string> parameter_names(std::string_view pattern) {
  std::vector<std::string> names;
  for (const auto& t : tokenize(pattern)) {
    if (t.placeholder && std::find(names.begin(), names.end(), t.text) == names.end()) {
      names.push_back(t.text);
    }
  }
  return names;
}

std::string instantiate(std::string_view pattern, const Params& params) {
  std::string out;
  for (const auto& t : tokenize(pattern)) {
    if (!t.placeholder) {
      out += t.text;
      continue;
    }
    const auto it = params.find(t.text);
    if (it == params.end()) throw Error(ErrorKind::OutOfRange, fmt::format("missing parameter {}", t.text));
    out += std::to_string(t.factor * it->second);
  }
  return out;
}

std::optional<Params> match(std::string_view pattern, std::string_view concrete) {
  Params bound;
  std::size_t pos = 0;
  for (const auto& t : tokenize(pattern)) {
    if (!t.placeholder) {
      if (concrete.substr(pos, t.text.size()) != t.text) return std::nullopt;
      pos += t.text.size();
      continue;
    }
    std::size_t end = pos;
    while (end < concrete.size() && std::isdigit(static_cast<unsigned char>(concrete[end]))) ++end;
    if (end == pos || end - pos > 6) return std::nullopt;
    const int value = std::stoi(std::string(concrete.substr(pos, end - pos)));
    if (value % t.factor != 0) return std::nullopt;
    const int base = value / t.factor;
    const auto [it, inserted] = bound.emplace(t.text, base);
    if (!inserted && it->second != base) return std::nullopt;
    pos = end;
  }
  if (pos != concrete.size()) return std::nullopt;
  return bound;
}

std::span<const AtlasEntry> list_all() { return table(); }

AtlasMatch lookup(std::string_view family, const Params& params) {
  const auto& rows = table();
  const auto it = std::find_if(rows.begin(), rows.end(), [&](const AtlasEntry& e) { return e.family == family; });
  if (it == rows.end()) throw Error(ErrorKind::UnknownSpace, fmt::format("no row for family '{}'", family));
  for (const auto& name : parameter_names(it->family)) {
    if (!params.contains(name)) throw Error(ErrorKind::OutOfRange, fmt::format("missing parameter {}", name));
  }
  for (const auto& c : it->constraints) {
    if (!c.holds(params)) {
      throw Error(ErrorKind::OutOfRange, fmt::format("{} violates {}", family, c.describe()));
    }
  }
  Params used;
  for (const auto& name : parameter_names(it->family)) used[name] = params.at(name);
  return make_match(*it, used);
}

std::vector<AtlasMatch> lookup_space(std::string_view concrete) {
  std::vector<AtlasMatch> matches;
  bool syntactic = false;
  for (const auto& e : table()) {
    if (e.marker) continue;
    auto params = match(e.family, concrete);
    if (!params) continue;
    syntactic = true;
    if (std::all_of(e.constraints.begin(), e.constraints.end(), [&](const Constraint& c) { return c.holds(*params); })) {
      matches.push_back(make_match(e, *params));
    }
  }
  if (!matches.empty()) return matches;
  if (syntactic) throw Error(ErrorKind::OutOfRange, fmt::format("'{}' is outside every matching row", concrete));
  if (is_exceptional_label(concrete)) {
    const auto& marker = table().back();
    AtlasMatch m{&marker, {}, std::string(concrete), std::nullopt};
    return {m};
  }
  throw Error(ErrorKind::UnknownSpace, fmt::format("no row matches '{}'", concrete));
}

std::string to_line(const AtlasEntry& e) {
  std::string constraints;
  for (const auto& c : e.constraints) {
    if (!constraints.empty()) constraints += ',';
    constraints += c.describe();
  }
  return fmt::format("table={} class={} family={} constraints={} target={}", e.table, to_string(e.crown_class),
                     e.family, constraints.empty() ? "-" : constraints, e.target.empty() ? "-" : e.target);
}

std::string to_line(const AtlasMatch& m) {
  return fmt::format("table={} class={} space={} target={}", m.entry->table, to_string(m.entry->crown_class),
                     m.space, m.target.value_or("-"));
}

}  // namespace crownlab::atlas

#pragma once

// Classification of crown domains of irreducible Riemannian symmetric
// spaces of the non-compact type: the spaces whose crown is Hermitian
// symmetric (either G/K x conj(G/K) or a larger Hermitian space) and the
// spaces with rigid crown.
//
// Families are ASCII patterns. `{p}` is an integer placeholder; a name used
// twice must take the same value. "SO0" stands for the identity component,
// "x" for a direct product, "R"/"C" for the real and complex fields.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace crownlab::atlas {

enum class CrownClass { HermitianSelf, HermitianTarget, Rigid };

std::string_view to_string(CrownClass c);

using Params = std::map<std::string, int>;

/// name op bound, or name == factor * other for the doubled indices of
/// SO*(2n) and SU*(2n).
struct Constraint {
  enum class Op { Greater, GreaterEq, TwiceOf };
  std::string name;
  Op op = Op::GreaterEq;
  int bound = 0;
  std::string other;  // for TwiceOf

  bool holds(const Params& p) const;
  std::string describe() const;
};

struct AtlasEntry {
  int table = 0;  // 1 or 2
  std::string family;
  std::vector<Constraint> constraints;
  CrownClass crown_class = CrownClass::Rigid;
  /// Pattern of the Hermitian target (HermitianTarget rows only).
  std::string target;
  /// Catch-all row for the exceptional spaces not listed by name.
  bool marker = false;

  bool operator==(const AtlasEntry& other) const { return this == &other; }
};

/// Placeholder names in order of first appearance.
std::vector<std::string> parameter_names(std::string_view pattern);

/// Substitutes the placeholders; `{2p}` style doubled placeholders in target
/// patterns are expanded from p.
std::string instantiate(std::string_view pattern, const Params& params);

/// Matches a concrete descriptor against a pattern, binding placeholders.
std::optional<Params> match(std::string_view pattern, std::string_view concrete);

struct AtlasMatch {
  const AtlasEntry* entry = nullptr;
  Params params;
  std::string space;                  // instantiated family
  std::optional<std::string> target;  // instantiated Hermitian target
};

std::span<const AtlasEntry> list_all();

/// Lookup by family pattern and parameter values. Throws UnknownSpace for an
/// unknown family and OutOfRange when the parameters violate the row.
AtlasMatch lookup(std::string_view family, const Params& params = {});

/// Rows whose pattern matches the concrete descriptor and whose constraints
/// hold. Several rows can match only through unresolved overlaps, which the
/// partition check rules out.
std::vector<AtlasMatch> lookup_space(std::string_view concrete);

/// One line per entry:
///   table=<1|2> class=<...> family=<pattern> constraints=<c1,c2|-> target=<pattern|->
std::string to_line(const AtlasEntry& e);
std::string to_line(const AtlasMatch& m);

}  // namespace crownlab::atlas

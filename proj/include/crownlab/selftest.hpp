#pragma once

// Seeded invariant suites behind `crownlab selftest`.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "crownlab/decomp.hpp"

namespace crownlab::selftest {

struct CheckResult {
  std::string module;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::vector<CheckResult> checks;
  std::size_t passed() const;
  std::size_t failed() const;
};

/// Scopes: rootsys, decomp, crown, atlas, all. Throws OutOfRange for any
/// other scope. Output of a run depends only on its arguments.
Report run(std::string_view scope, std::uint64_t seed, const decomp::Tolerances& tol = {});

/// Known scopes in run order.
const std::vector<std::string>& scopes();

}  // namespace crownlab::selftest

#pragma once

#include <string>

#include "cobcalc/series.hpp"

namespace cobcalc {

// Outcome of an identity check; `witness` describes the first failure.
struct CheckResult {
  bool ok = true;
  std::string witness;

  explicit operator bool() const { return ok; }

  static CheckResult pass() { return {}; }
  static CheckResult fail(std::string witness) { return {false, std::move(witness)}; }
};

// Compares two series; on mismatch the witness names `label`, the first
// differing monomial and both coefficients there.
CheckResult check_equal(const Series& lhs, const Series& rhs, const std::string& label);

}  // namespace cobcalc

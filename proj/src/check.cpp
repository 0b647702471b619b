#include "cobcalc/check.hpp"

namespace cobcalc {

CheckResult check_equal(const Series& lhs, const Series& rhs, const std::string& label) {
  auto cmp = compare(lhs, rhs);
  if (cmp.equal) return CheckResult::pass();
  const auto& m = *cmp.first_difference;
  const auto& ring = *lhs.ring();
  return CheckResult::fail(label + ": first difference at " + format_monomial(*lhs.space(), m) + " (degree " +
                           std::to_string(m.total_degree()) + "): " + ring.format(lhs.coefficient(m)) +
                           " vs " + ring.format(rhs.coefficient(m)));
}

}  // namespace cobcalc

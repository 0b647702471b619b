#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cobcalc/check.hpp"
#include "cobcalc/fgl.hpp"

namespace cobcalc {

// [n1]x1 +F ... +F [nr]xr written as sum over subsets I of x^I F_I, where F_I
// only involves the variables x_i with i in I. Subsets are bitmasks with x1 as
// the lowest bit.
struct SubsetDecomposition {
  static constexpr int kMaxDivisors = 16;

  std::vector<int> multiplicities;
  int precision = 0;
  SpacePtr space;  // x1..xr
  Series sum;      // the formal sum itself
  std::vector<Series> components;  // indexed by mask, components[0] = 0

  std::size_t rank() const { return multiplicities.size(); }
  const Series& component(std::uint32_t mask) const { return components.at(mask); }
  Series reassemble() const;
};

// "{1,3}" for mask 0b101.
std::string subset_label(std::uint32_t mask);

// Variables named x1..xr.
SpacePtr divisor_space(std::size_t r);

SubsetDecomposition decompose(const FormalGroupLaw& law, const std::vector<int>& multiplicities,
                              int precision);

// x * F_{1}^m(x) == [m]_F x.
CheckResult verify_single_divisor_identity(const FormalGroupLaw& law, int m, int precision = 0);

// With S' = [n2]x2 +F ... +F [nr]xr: the components avoiding x1 equal the
// decomposition of (n2..nr) and the whole sum reassembles to F([n1]x1, S').
CheckResult verify_inductive_splitting(const FormalGroupLaw& law, const std::vector<int>& multiplicities,
                                       int precision);

// Decomposing over the universal law and specializing agrees with decomposing
// over the target law, for every subset.
CheckResult specialization_commutes(const LazardModel& model, const FormalGroupLaw& target,
                                    const std::vector<int>& multiplicities, int precision);

// Every monomial of F_I avoids variables outside I, and reassembly holds.
CheckResult verify_decomposition(const SubsetDecomposition& d);

}  // namespace cobcalc

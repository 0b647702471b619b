#include "cobcalc/zeta.hpp"

#include <bit>

#include "cobcalc/errors.hpp"

namespace cobcalc {

namespace {

ExponentVector indicator(std::size_t r, std::uint32_t mask) {
  ExponentVector v(r);
  for (std::size_t i = 0; i < r; ++i) {
    if (mask & (1u << i)) v.set(i, 1);
  }
  return v;
}

}  // namespace

std::string subset_label(std::uint32_t mask) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < 32; ++i) {
    if (!(mask & (1u << i))) continue;
    if (!first) out += ",";
    out += std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

SpacePtr divisor_space(std::size_t r) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= r; ++i) names.push_back("x" + std::to_string(i));
  return make_space(std::move(names));
}

Series SubsetDecomposition::reassemble() const {
  Series acc(sum.ring(), space, precision);
  const std::size_t r = rank();
  for (std::uint32_t mask = 1; mask < components.size(); ++mask) {
    const auto& c = components[mask];
    if (c.is_zero()) continue;
    std::vector<Series::Term> shifted;
    ExponentVector xi = indicator(r, mask);
    for (const auto& t : c.terms()) shifted.push_back({t.exps + xi, t.coeff});
    acc = acc + Series::from_terms(sum.ring(), space, precision, std::move(shifted));
  }
  return acc;
}

SubsetDecomposition decompose(const FormalGroupLaw& law, const std::vector<int>& multiplicities,
                              int precision) {
  const std::size_t r = multiplicities.size();
  if (r == 0) throw InvalidArgument("need at least one divisor");
  if (r > SubsetDecomposition::kMaxDivisors) {
    throw InvalidArgument("at most " + std::to_string(SubsetDecomposition::kMaxDivisors) + " divisors");
  }
  for (int n : multiplicities) {
    if (n <= 0) throw NonPositiveMultiplicity("multiplicity " + std::to_string(n) + " is not positive");
  }
  if (precision < 1) throw PrecisionTooLow("decomposition precision must be >= 1");
  if (precision > law.precision()) {
    throw PrecisionTooLow("precision " + std::to_string(precision) + " exceeds law precision " +
                          std::to_string(law.precision()));
  }
  SubsetDecomposition d;
  d.multiplicities = multiplicities;
  d.precision = precision;
  d.space = divisor_space(r);
  std::vector<Series> parts;
  for (std::size_t i = 0; i < r; ++i) {
    parts.push_back(embed(law.n_series(multiplicities[i], precision), d.space, {d.space->names[i]}));
  }
  d.sum = formal_sum(law, parts);

  const std::uint32_t count = 1u << r;
  std::vector<std::vector<Series::Term>> buckets(count);
  for (const auto& t : d.sum.terms()) {
    const std::uint32_t mask = t.exps.support();
    buckets[mask].push_back({t.exps - indicator(r, mask), t.coeff});
  }
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    const int p = mask == 0 ? precision : precision - std::popcount(mask);
    d.components.push_back(Series::from_terms(law.ring(), d.space, std::max(p, 0), std::move(buckets[mask])));
  }
  return d;
}

CheckResult verify_decomposition(const SubsetDecomposition& d) {
  if (!d.components.front().is_zero()) return CheckResult::fail("component {} is nonzero");
  for (std::uint32_t mask = 0; mask < d.components.size(); ++mask) {
    for (const auto& t : d.components[mask].terms()) {
      if (t.exps.support() & ~mask) {
        return CheckResult::fail("component " + subset_label(mask) + " uses " +
                                 format_monomial(*d.space, t.exps));
      }
    }
  }
  return check_equal(d.reassemble(), d.sum, "reassembly");
}

CheckResult verify_single_divisor_identity(const FormalGroupLaw& law, int m, int precision) {
  const int p = precision > 0 ? precision : law.precision();
  auto d = decompose(law, {m}, p);
  Series x = Series::variable(law.ring(), d.space, p, "x1");
  Series lhs = x * d.component(1);
  Series rhs = embed(law.n_series(m, p), d.space, {"x1"});
  return check_equal(lhs, rhs, "x*F_{1} vs [" + std::to_string(m) + "]x");
}

CheckResult verify_inductive_splitting(const FormalGroupLaw& law, const std::vector<int>& multiplicities,
                                       int precision) {
  const std::size_t r = multiplicities.size();
  if (r < 2) throw InvalidArgument("splitting needs at least two divisors");
  auto full = decompose(law, multiplicities, precision);
  auto rest = decompose(law, std::vector<int>(multiplicities.begin() + 1, multiplicities.end()), precision);
  // rest's x_k is full's x_{k+1}.
  std::vector<std::string> shift(full.space->names.begin() + 1, full.space->names.end());
  for (std::uint32_t mask = 0; mask < rest.components.size(); ++mask) {
    Series moved = embed(rest.components[mask], full.space, shift);
    auto res = check_equal(full.components[mask << 1], moved, "component " + subset_label(mask << 1));
    if (!res) return res;
  }
  Series first = embed(law.n_series(multiplicities[0], precision), full.space, {"x1"});
  Series tail = embed(rest.sum, full.space, shift);
  auto res = check_equal(full.reassemble(), law.apply(first, tail), "F([n1]x1, S')");
  if (!res) return res;
  return verify_decomposition(full);
}

CheckResult specialization_commutes(const LazardModel& model, const FormalGroupLaw& target,
                                    const std::vector<int>& multiplicities, int precision) {
  auto phi = specialize_a(model, target);
  auto universal = decompose(model.law(), multiplicities, precision);
  auto direct = decompose(target, multiplicities, precision);
  for (std::uint32_t mask = 0; mask < universal.components.size(); ++mask) {
    auto res = check_equal(phi.apply(universal.components[mask]), direct.components[mask],
                           "component " + subset_label(mask));
    if (!res) return res;
  }
  return CheckResult::pass();
}

}  // namespace cobcalc

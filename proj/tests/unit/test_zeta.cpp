#include "doctest.h"

#include <algorithm>

#include "cobcalc/errors.hpp"
#include "cobcalc/series_io.hpp"
#include "cobcalc/zeta.hpp"

using namespace cobcalc;

namespace {

RingPtr ZZ = CoeffRing::integers();

std::string text(const SubsetDecomposition& d, std::uint32_t mask) { return to_text(d.component(mask)); }

// [n1]x1 +F ... for the multiplicative law is 1 - prod (1 - x_i)^{n_i}.
Series multiplicative_oracle(const std::vector<int>& n, int p) {
  auto sp = divisor_space(n.size());
  Series prod = Series::constant(ZZ, sp, p, ZZ->one());
  for (std::size_t i = 0; i < n.size(); ++i) {
    prod = prod * parse_series("(1 - x" + std::to_string(i + 1) + ")^" + std::to_string(n[i]), ZZ, sp, p);
  }
  return Series::constant(ZZ, sp, p, ZZ->one()) - prod;
}

// For the universal law the sum is exp(sum n_i log x_i) over Q[b].
Series universal_oracle(const LazardModel& m, const std::vector<int>& n, int p) {
  auto sp = divisor_space(n.size());
  auto q = m.log().ring();
  Series acc(q, sp, p);
  for (std::size_t i = 0; i < n.size(); ++i) {
    acc = acc + embed(m.log(), sp, {sp->names[i]}).scaled(q->from_rational(n[i]));
  }
  return substitute(m.exp(), {{"x", acc}}).truncated(p);
}

}  // namespace

TEST_CASE("decompose small cases") {
  auto add = FormalGroupLaw::additive(ZZ, 8);
  auto d = decompose(add, {1, 1}, 8);
  CHECK(text(d, 0b01) == "1");
  CHECK(text(d, 0b10) == "1");
  CHECK(text(d, 0b11) == "0");
  CHECK(d.component(0).is_zero());

  auto mult = FormalGroupLaw::multiplicative(ZZ, 8);
  auto e = decompose(mult, {1, 1}, 8);
  CHECK(text(e, 0b01) == "1");
  CHECK(text(e, 0b10) == "1");
  CHECK(text(e, 0b11) == "-1");

  for (int m = 1; m <= 4; ++m) {
    auto s = decompose(mult, {m}, 8);
    auto x = Series::variable(ZZ, s.space, 8, "x1");
    CHECK(compare(x * s.component(1), embed(mult.n_series(m, 8), s.space, {"x1"})).equal);
  }

  CHECK_THROWS_AS(decompose(mult, {1, 0}, 4), NonPositiveMultiplicity);
  CHECK_THROWS_AS(decompose(mult, {1, 2}, 9), PrecisionTooLow);
  CHECK(subset_label(0b101) == "{1,3}");
  CHECK(subset_label(0) == "{}");
}

TEST_CASE("decomposition agrees with closed-form sums") {
  auto mult = FormalGroupLaw::multiplicative(ZZ, 8);
  auto m = universal_fgl(6);
  std::vector<std::vector<int>> cases{{2, 3}, {1, 2, 3}, {3}, {2, 2}};
  for (const auto& n : cases) {
    auto d = decompose(mult, n, 8);
    CHECK(compare(d.sum, multiplicative_oracle(n, 8)).equal);
    CHECK(verify_decomposition(d).ok);

    auto u = decompose(m.law(), n, 6);
    CHECK(compare(change_ring(u.sum, m.log().ring()), universal_oracle(m, n, 6)).equal);
    CHECK(verify_decomposition(u).ok);
  }
  // Spot values for (2,3): 1 - (1-x1)^2 (1-x2)^3.
  auto d = decompose(mult, {2, 3}, 8);
  CHECK(text(d, 0b01) == "2 - x1");
  CHECK(text(d, 0b10) == "3 - 3*x2 + x2^2");
  CHECK(text(d, 0b11) == "-6 + 6*x2 + 3*x1 - 2*x2^2 - 3*x1*x2 + x1*x2^2");
}

TEST_CASE("single divisor identity") {
  auto add = FormalGroupLaw::additive(ZZ, 8);
  auto mult = FormalGroupLaw::multiplicative(ZZ, 8);
  auto m = universal_fgl(6);
  for (int k = 1; k <= 5; ++k) {
    CHECK(verify_single_divisor_identity(add, k).ok);
    CHECK(verify_single_divisor_identity(mult, k).ok);
    CHECK(verify_single_divisor_identity(m.law(), k).ok);
  }
  CHECK(to_text(decompose(mult, {2}, 8).component(1)) == "2 - x1");
  CHECK(to_text(decompose(m.law(), {1}, 6).component(1)) == "1");
}

TEST_CASE("inductive splitting") {
  auto add = FormalGroupLaw::additive(ZZ, 8);
  auto mult = FormalGroupLaw::multiplicative(ZZ, 8);
  auto m = universal_fgl(5);
  CHECK(verify_inductive_splitting(add, {1, 1, 1}, 8).ok);
  CHECK(verify_inductive_splitting(mult, {2, 3}, 8).ok);
  CHECK(verify_inductive_splitting(m.law(), {2, 2}, 5).ok);
  CHECK(verify_inductive_splitting(m.law(), {1, 2, 3}, 5).ok);

  // F_{2} of (2,3) is F_{1} of (3) in x2.
  auto full = decompose(mult, {2, 3}, 8);
  auto single = decompose(mult, {3}, 8);
  CHECK(compare(full.component(0b10), embed(single.component(1), full.space, {"x2"})).equal);
  CHECK_THROWS_AS(verify_inductive_splitting(mult, {2}, 8), InvalidArgument);
}

TEST_CASE("specialization commutes with decomposition") {
  auto m = universal_fgl(6);
  auto add = FormalGroupLaw::additive(ZZ, 6);
  auto mult = FormalGroupLaw::multiplicative(ZZ, 6);
  CHECK(specialization_commutes(m, add, {1, 1}, 6).ok);
  CHECK(specialization_commutes(m, mult, {1, 1}, 6).ok);
  CHECK(specialization_commutes(m, mult, {2, 3}, 6).ok);
  CHECK(specialization_commutes(m, mult, {1, 2, 3}, 6).ok);
  auto phi = specialize_a(m, mult);
  CHECK(to_text(phi.apply(decompose(m.law(), {1, 1}, 6).component(0b11))) == "-1");
}

TEST_CASE("decomposition is unique: perturbing a component breaks reassembly") {
  auto mult = FormalGroupLaw::multiplicative(ZZ, 6);
  auto d = decompose(mult, {1, 2, 1}, 6);
  for (std::uint32_t mask = 1; mask < 8; ++mask) {
    auto bad = d;
    // A monomial in the variables of I only is a legal value for F_I.
    ExponentVector e(3);
    for (int i = 0; i < 3; ++i) {
      if (mask & (1u << i)) e.set(i, 1);
    }
    bad.components[mask] = bad.components[mask] + Series::monomial(ZZ, d.space, 6, e, ZZ->one());
    CHECK_FALSE(verify_decomposition(bad).ok);
  }
}

TEST_CASE("decomposition is symmetric under relabelling") {
  auto m = universal_fgl(5);
  std::vector<int> n{1, 2, 3};
  auto base = decompose(m.law(), n, 5);
  std::vector<int> perm{0, 1, 2};
  while (std::next_permutation(perm.begin(), perm.end())) {
    std::vector<int> pn;
    std::vector<std::string> names;
    for (int i : perm) pn.push_back(n[i]);
    // variable k of the permuted problem is variable perm[k] of the base one
    for (int k = 0; k < 3; ++k) names.push_back(base.space->names[perm[k]]);
    auto d = decompose(m.law(), pn, 5);
    for (std::uint32_t mask = 0; mask < 8; ++mask) {
      std::uint32_t base_mask = 0;
      for (int k = 0; k < 3; ++k) {
        if (mask & (1u << k)) base_mask |= 1u << perm[k];
      }
      CHECK(compare(embed(d.component(mask), base.space, names), base.component(base_mask)).equal);
    }
  }
}

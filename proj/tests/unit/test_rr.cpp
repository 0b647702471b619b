#include "doctest.h"

#include "cobcalc/errors.hpp"
#include "cobcalc/rr.hpp"
#include "cobcalc/series_io.hpp"

using namespace cobcalc;

namespace {

bool same(const Series& a, const Series& b) { return compare(a, b).equal; }

// chi(P^n, O(d)) by the binomial formula, for the HRR oracle.
mpz_class binomial(int n, int k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

}  // namespace

TEST_CASE("theories and normalization") {
  auto m = universal_fgl(6);
  CHECK(SpecializedTheory::additive().normalization().point_class(3).is_zero());
  CHECK(SpecializedTheory::multiplicative().normalization().point_class(3) == CoeffRing::integers()->one());
  auto univ = SpecializedTheory::universal(m);
  CHECK_FALSE(univ.has_normalization());
  auto ctx = univ.context({1});
  CHECK_THROWS_AS(pushforward_projective(univ, hyperplane_relation(ctx), {ctx.one()}), UnsupportedTheory);

  // A table that disagrees with the logarithm is rejected.
  auto ZZ = CoeffRing::integers();
  TheoryNormalization wrong(ZZ, {ZZ->one()}, ZZ->from_rational(2));
  CHECK_THROWS_AS(SpecializedTheory(FormalGroupLaw::multiplicative(ZZ, 8), wrong, "bad"), InvalidArgument);
}

TEST_CASE("multiplicative pushforward of hyperplane powers is 1") {
  auto mult = SpecializedTheory::multiplicative();
  std::vector<std::vector<int>> shapes{{3}, {2, 2}, {3, 3}, {1, 2, 3}, {3, 3, 3}, {2, 2, 2, 2}, {3, 3, 3, 3}};
  for (const auto& caps : shapes) {
    auto pb = hyperplane_relation(mult.context(caps));
    for (const auto& v : pushforward_hyperplane_powers(mult, pb)) CHECK(to_text(v) == "1");
  }
}

TEST_CASE("additive pushforward from P^n over a point") {
  auto add = SpecializedTheory::additive();
  for (int n = 0; n <= 4; ++n) {
    auto pb = hyperplane_relation(add.context(std::vector<int>(n + 1, 0)));
    for (int k = 0; k <= n; ++k) {
      auto v = pushforward_projective(add, pb, pb.hyperplane_power(k));
      CHECK(to_text(v) == (k == n ? "1" : "0"));
    }
  }
}

TEST_CASE("pushforward along P(L) is the identity") {
  auto m = universal_fgl(6);
  std::vector<SpecializedTheory> theories{SpecializedTheory::additive(), SpecializedTheory::multiplicative(),
                                          SpecializedTheory::universal_reduced(m)};
  for (const auto& th : theories) {
    auto ctx = th.context({4});
    auto pb = hyperplane_relation(ctx);
    auto a = ctx.parse("1 + x1 + x1^3");
    CHECK(same(pushforward_projective(th, pb, {a}), a));
  }
}

TEST_CASE("pushforward satisfies the projection formula") {
  auto m = universal_fgl(6);
  auto th = SpecializedTheory::universal_reduced(m);
  auto ctx = th.context({2, 1});
  auto pb = hyperplane_relation(ctx);
  auto a = ctx.parse("1 + b1*x1 - x2 + x1*x2");
  std::vector<Series> alpha{ctx.parse("x1 + b2"), ctx.parse("1 - x2")};
  std::vector<Series> scaled;
  for (const auto& c : alpha) scaled.push_back(a * c);
  CHECK(same(pushforward_projective(th, pb, scaled), a * pushforward_projective(th, pb, alpha)));
}

TEST_CASE("geometric series identity") {
  CHECK(verify_geometric_series_identity(12).ok);
  CHECK(verify_geometric_series_identity(1).ok);
  auto bad = verify_geometric_series_identity(12, +1);
  CHECK_FALSE(bad.ok);
  CHECK(bad.witness.find("(degree 2)") != std::string::npos);
}

TEST_CASE("multiplicative chern character") {
  auto mult = SpecializedTheory::multiplicative();
  auto ctx = mult.context({3, 3});
  CHECK(to_text(chern_character_multiplicative(ctx, {ctx.zero(), ctx.zero(), ctx.zero()})) == "3");
  auto x1 = ctx.root(0), x2 = ctx.root(1);
  // 1 - inv(x) = 1/(1 - x)
  CHECK(same(chern_character_multiplicative(ctx, {x1}), invert_unit(ctx.parse("1 - x1"))));
  CHECK(ch_multiplicativity_check(ctx, x1, x2).ok);
  CHECK(ch_multiplicativity_check(ctx, x1, euler_dual(ctx, x2)).ok);

  auto add = SpecializedTheory::additive();
  CHECK_THROWS_AS(chern_character_multiplicative(add.context({1}), {}), WrongLaw);
}

TEST_CASE("geometric formal group law identity") {
  auto m = universal_fgl(6);
  CHECK(geom_fgl_specialization_check(SpecializedTheory::multiplicative(), 3).ok);
  CHECK(geom_fgl_specialization_check(SpecializedTheory::additive(), 3).ok);
  // Holds in the universal theory as well, with every class computed.
  CHECK(geom_fgl_specialization_check(SpecializedTheory::universal_reduced(m), 2).ok);

  auto mult = SpecializedTheory::multiplicative();
  auto ctx = mult.context({3, 3});
  CHECK(geom_fgl_identity(ctx, ctx.one(), ctx.zero()).ok);
  CHECK_FALSE(geom_fgl_identity(ctx, ctx.zero(), ctx.zero()).ok);
  auto add = SpecializedTheory::additive();
  auto actx = add.context({3, 3});
  CHECK(geom_fgl_identity(actx, actx.zero(), actx.zero()).ok);
  // x2 = 0
  auto single = mult.context({3, 0});
  CHECK(geom_fgl_identity(single, single.one(), single.zero()).ok);
}

TEST_CASE("todd series and class") {
  CHECK(to_text(todd_series(6)) == "1 + 1/2*x + 1/12*x^2 - 1/720*x^4 + 1/30240*x^6");
  CHECK(to_text(exp_series(3)) == "1 + x + 1/2*x^2 + 1/6*x^3");

  auto add = SpecializedTheory::additive();
  auto ctx = add.context({3, 3, 2});
  auto r = ctx.roots();
  auto t = todd_series(ctx.precision());
  CHECK(same(todd_class(ctx, r, t), todd_class(ctx, {r[0], r[1]}, t) * todd_class(ctx, {r[2]}, t)));
  CHECK(same(chern_character_additive(ctx, {r[0], r[1]}),
             chern_character_additive(ctx, {r[0]}) + chern_character_additive(ctx, {r[1]})));
  // ch is multiplicative on line bundles: exp(x + y) = exp(x) exp(y)
  CHECK(same(chern_character_additive(ctx, {euler_tensor(ctx, r[0], r[1])}),
             chern_character_additive(ctx, {r[0]}) * chern_character_additive(ctx, {r[1]})));
  CHECK_THROWS_AS(todd_class(SpecializedTheory::multiplicative().context({1}), {}, t), InvalidArgument);
}

TEST_CASE("HRR on projective spaces") {
  CHECK(hrr_projective_space(1, 1) == 2);
  CHECK(hrr_projective_space(0, 7) == 1);
  CHECK(hrr_projective_space(3, 2) == 10);
  for (int n = 0; n <= 4; ++n) {
    for (int d = 0; d <= 5; ++d) CHECK(hrr_projective_space(n, d) == mpq_class(binomial(n + d, n)));
  }
  // negative twists: chi(P^n, O(-k)) = 0 for 0 < k <= n
  CHECK(hrr_projective_space(3, -2) == 0);

  // A wrong x^2 coefficient breaks integrality.
  auto todd = todd_series(5);
  auto bad = todd + parse_series("-1/6*x^2", todd.ring(), todd.space(), todd.precision());
  CHECK_THROWS_AS(hrr_projective_space(2, 0, bad), NonIntegerResult);
  CHECK(hrr_projective_space_value(2, 0, bad) == mpq_class(1, 2));
}

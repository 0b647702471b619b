#include "doctest.h"

#include "cobcalc/chern.hpp"
#include "cobcalc/errors.hpp"
#include "cobcalc/series_io.hpp"

using namespace cobcalc;

namespace {

RingPtr ZZ = CoeffRing::integers();

bool same(const Series& a, const Series& b) { return compare(a, b).equal; }

Series swap_roots(const ChernContext& ctx, const Series& s, std::size_t i, std::size_t j) {
  auto names = ctx.space()->names;
  std::swap(names[i], names[j]);
  return embed(s, ctx.space(), names);
}

}  // namespace

TEST_CASE("line bundle operations") {
  ChernContext mult(FormalGroupLaw::multiplicative(ZZ, 8), {3, 3});
  auto x1 = mult.root(0), x2 = mult.root(1);
  CHECK(to_text(euler_tensor(mult, x1, x2)) == to_text(mult.parse("x1 + x2 - x1*x2")));
  // inv(x) = -x/(1-x) for x + y - xy
  CHECK(same(euler_dual(mult, x1), mult.parse("-x1 - x1^2 - x1^3")));
  CHECK(same(euler_tensor(mult, x1, euler_dual(mult, x1)), mult.zero()));
  CHECK_THROWS_AS(euler_dual(mult, mult.one()), NonNilpotentArgument);

  ChernContext add(FormalGroupLaw::additive(ZZ, 8), {2});
  CHECK(to_text(euler_dual(add, add.root(0))) == "-x1");

  CHECK_THROWS_AS(ChernContext(universal_fgl(4).law(), {3, 3}), PrecisionTooLow);
}

TEST_CASE("chern classes are elementary symmetric in the roots") {
  auto m = universal_fgl(6);
  ChernContext ctx(m.reduced_law(), {2, 2, 1});
  auto c = chern_classes(ctx, ctx.roots());
  REQUIRE(c.size() == 4);
  CHECK(to_text(c[0]) == "1");
  CHECK(same(c[1], ctx.parse("x1 + x2 + x3")));
  CHECK(same(c[2], ctx.parse("x1*x2 + x1*x3 + x2*x3")));
  CHECK(same(c[3], ctx.parse("x1*x2*x3")));

  // Whitney: c(E + E') = c(E) c(E')
  auto r = ctx.roots();
  auto whole = total_chern_class(ctx, r);
  auto left = total_chern_class(ctx, {r[0], r[1]});
  auto right = total_chern_class(ctx, {r[2]});
  CHECK(same(whole, left * right));
}

TEST_CASE("chern classes recovered from the projective bundle relation") {
  auto m = universal_fgl(6);
  std::vector<std::vector<int>> shapes{{3}, {2, 2}, {1, 2, 1}};
  for (const auto& caps : shapes) {
    ChernContext ctx(m.reduced_law(), caps);
    auto direct = chern_classes(ctx, ctx.roots());
    auto via = chern_classes_from_relation(ctx);
    REQUIRE(direct.size() == via.size());
    for (std::size_t i = 0; i < direct.size(); ++i) CHECK(same(direct[i], via[i]));
  }
  ChernContext mult(FormalGroupLaw::multiplicative(ZZ, 8), {2, 2, 2});
  auto direct = chern_classes(mult, mult.roots());
  auto via = chern_classes_from_relation(mult);
  for (std::size_t i = 0; i < direct.size(); ++i) CHECK(same(direct[i], via[i]));
}

TEST_CASE("hyperplane relation") {
  ChernContext add(FormalGroupLaw::additive(ZZ, 8), {2, 2});
  auto pb = hyperplane_relation(add);
  // prod (-x_k - t) = 0: t^2 = -(x1 + x2) t - x1 x2
  CHECK(same(pb.d(1), add.parse("-x1 - x2")));
  CHECK(same(pb.d(2), add.parse("-x1*x2")));
  auto t2 = pb.hyperplane_power(2);
  CHECK(same(t2[0], add.parse("-x1*x2")));
  CHECK(same(t2[1], add.parse("-x1 - x2")));
  // t^3 computed two ways
  auto t1 = pb.hyperplane_power(1);
  auto a = pb.multiply(t1, t2);
  auto b = pb.hyperplane_power(3);
  CHECK(same(a[0], b[0]));
  CHECK(same(a[1], b[1]));
}

TEST_CASE("fundamental class coefficients for a line bundle") {
  ChernContext add(FormalGroupLaw::additive(ZZ, 8), {3});
  auto u = pb_fundamental_coefficients(add, 6);
  CHECK(to_text(u[0]) == "1");
  CHECK(to_text(u[1]) == "-x1");
  CHECK(to_text(u[2]) == "x1^2");
  CHECK(to_text(u[3]) == "-x1^3");
  CHECK(u[4].is_zero());

  // multiplicative: u_m = (-x)^m / (1 - x)^(m+1)
  ChernContext mult(FormalGroupLaw::multiplicative(ZZ, 8), {4});
  auto v = pb_fundamental_coefficients(mult, 5);
  for (int k = 0; k < 5; ++k) {
    auto num = mult.parse("(-x1)^" + std::to_string(k));
    auto den = mult.parse("(1 - x1)^" + std::to_string(k + 1));
    CHECK(same(v[k], num * invert_unit(den)));
  }
  CHECK(to_text(v[0]) == "1 + x1 + x1^2 + x1^3 + x1^4");
}

TEST_CASE("fundamental class coefficients for rank two") {
  ChernContext add(FormalGroupLaw::additive(ZZ, 8), {2, 2});
  auto u = pb_fundamental_coefficients(add, 4);
  CHECK(u[0].is_zero());
  CHECK(to_text(u[1]) == "1");
  CHECK(same(u[2], add.parse("-x1 - x2")));
  CHECK(same(u[3], add.parse("x1^2 + x1*x2 + x2^2")));

  auto A = coefficient_matrix(add);
  auto inv = invert_matrix(A);
  CHECK(same(inv[0][0], add.parse("x1 + x2")));
  CHECK(to_text(inv[0][1]) == "1");
  CHECK(to_text(inv[1][0]) == "1");
  CHECK(inv[1][1].is_zero());
  CHECK(check_identity(multiply(A, inv), "A*inv").ok);
}

TEST_CASE("P^n over a point") {
  // n+1 copies of the trivial line bundle: only u_n survives, and it is 1.
  for (int n = 0; n <= 3; ++n) {
    ChernContext add(FormalGroupLaw::additive(ZZ, 8), std::vector<int>(n + 1, 0));
    auto u = pb_fundamental_coefficients(add, 2 * n + 2);
    for (int i = 0; i < 2 * n + 2; ++i) CHECK(to_text(u[i]) == (i == n ? "1" : "0"));
  }
}

TEST_CASE("matrix inversion over a nilpotent extension") {
  auto sp = make_space({"e"}, {1});
  auto s = [&](const std::string& t) { return parse_series(t, ZZ, sp, 1); };
  Matrix a{{s("e"), s("1")}, {s("1"), s("0")}};
  auto inv = invert_matrix(a);
  CHECK(to_text(inv[0][0]) == "0");
  CHECK(to_text(inv[0][1]) == "1");
  CHECK(to_text(inv[1][0]) == "1");
  CHECK(to_text(inv[1][1]) == "-e");
  CHECK(check_identity(multiply(a, inv), "a*inv").ok);
  CHECK(check_identity(multiply(inv, a), "inv*a").ok);

  Matrix singular{{s("e"), s("e")}, {s("e"), s("0")}};
  CHECK_THROWS_AS(invert_matrix(singular), NotInvertible);
  CHECK_FALSE(check_matrix_structure(singular).ok);
}

TEST_CASE("coefficient matrix structure and inverse for the universal law") {
  auto m = universal_fgl(6);
  ChernContext ctx(m.reduced_law(), {1, 1, 1});
  auto A = coefficient_matrix(ctx);
  CHECK(check_matrix_structure(A).ok);
  auto inv = invert_matrix(A);
  CHECK(check_identity(multiply(A, inv), "A*inv").ok);
  CHECK(check_identity(multiply(inv, A), "inv*A").ok);
}

TEST_CASE("coefficients satisfy the hyperplane recursion") {
  auto m = universal_fgl(6);
  std::vector<FormalGroupLaw> laws{FormalGroupLaw::additive(ZZ, 12), FormalGroupLaw::multiplicative(ZZ, 12),
                                   m.reduced_law()};
  for (const auto& law : laws) {
    ChernContext one(law, {3});
    CHECK(coefficient_recursion_check(hyperplane_relation(one), 3).ok);
    ChernContext two(law, {2, 1});
    CHECK(coefficient_recursion_check(hyperplane_relation(two), 3).ok);
  }
  ChernContext three(m.reduced_law(), {1, 1, 1});
  CHECK(coefficient_recursion_check(hyperplane_relation(three), 2).ok);

  // Flipping the sign of d breaks it, and the witness says where.
  ChernContext ctx(FormalGroupLaw::multiplicative(ZZ, 12), {2, 2});
  auto pb = hyperplane_relation(ctx);
  ProjectiveBundleContext bad(ctx, {-pb.d(1), pb.d(2)});
  auto res = coefficient_recursion_check(bad, 3);
  CHECK_FALSE(res.ok);
  CHECK(res.witness.find("hyperplane_relation") != std::string::npos);
}

TEST_CASE("coefficients are symmetric in the roots") {
  auto m = universal_fgl(6);
  ChernContext ctx(m.reduced_law(), {2, 2});
  for (const auto& u : pb_fundamental_coefficients(ctx, 4)) CHECK(same(u, swap_roots(ctx, u, 0, 1)));
  ChernContext mult(FormalGroupLaw::multiplicative(ZZ, 12), {2, 2, 2});
  for (const auto& u : pb_fundamental_coefficients(mult, 5)) {
    CHECK(same(u, swap_roots(mult, u, 0, 1)));
    CHECK(same(u, swap_roots(mult, u, 1, 2)));
  }
}

TEST_CASE("unit and nilpotent coefficients") {
  auto m = universal_fgl(6);
  std::vector<FormalGroupLaw> laws{FormalGroupLaw::additive(ZZ, 12), FormalGroupLaw::multiplicative(ZZ, 12),
                                   m.reduced_law()};
  std::vector<std::vector<int>> shapes{{3}, {2, 2}, {1, 1, 1}, {3, 1}};
  for (const auto& law : laws) {
    for (const auto& caps : shapes) {
      ChernContext ctx(law, caps);
      const int r = static_cast<int>(caps.size());
      auto u = pb_fundamental_coefficients(ctx, 2 * r + 1);
      for (int i = 0; i < 2 * r + 1; ++i) {
        if (i == r - 1) {
          CHECK(u[i].is_unit());
          CHECK(u[i].constant_term() == ctx.ring()->one());
        } else {
          CHECK(u[i].constant_term().is_zero());
        }
      }
    }
  }
}

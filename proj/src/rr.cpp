#include "cobcalc/rr.hpp"

#include <algorithm>

#include "cobcalc/errors.hpp"

namespace cobcalc {

namespace {

constexpr int kLawPrecision = 8;

RingPtr QQ() { return CoeffRing::rationals(); }

// Keeps the leading variables of `s` as the variables of `target`; the
// dropped trailing variables must have cap 0.
Series restrict_to(const Series& s, const SpacePtr& target, int precision) {
  std::vector<Series::Term> terms;
  for (const auto& t : s.terms()) {
    ExponentVector e(target->size());
    for (std::size_t i = 0; i < target->size(); ++i) e.set(i, t.exps[i]);
    terms.push_back({e, t.coeff});
  }
  return Series::from_terms(s.ring(), target, precision, std::move(terms));
}

Series univariate(RingPtr ring, int precision, const std::vector<mpq_class>& coeffs) {
  auto space = make_space({"x"});
  std::vector<Series::Term> terms;
  for (std::size_t k = 0; k < coeffs.size() && static_cast<int>(k) <= precision; ++k) {
    if (coeffs[k] != 0) terms.push_back({ExponentVector{static_cast<int>(k)}, ring->from_rational(coeffs[k])});
  }
  return Series::from_terms(ring, space, precision, std::move(terms));
}

mpq_class factorial(int k) {
  mpz_class f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return mpq_class(f);
}

}  // namespace

// ---------------------------------------------------------------------------
// SpecializedTheory

SpecializedTheory SpecializedTheory::additive() {
  return SpecializedTheory(FormalGroupLaw::additive(QQ(), kLawPrecision), TheoryNormalization::additive(QQ()), "add");
}

SpecializedTheory SpecializedTheory::multiplicative() {
  auto ZZ = CoeffRing::integers();
  return SpecializedTheory(FormalGroupLaw::multiplicative(ZZ, kLawPrecision), TheoryNormalization::multiplicative(ZZ),
                           "mult");
}

SpecializedTheory SpecializedTheory::universal_reduced(const LazardModel& model) {
  return SpecializedTheory(model.reduced_law(), TheoryNormalization::universal_reduced(model), "univ");
}

SpecializedTheory SpecializedTheory::universal(const LazardModel& model) {
  return SpecializedTheory(model.law(), std::nullopt, "univ");
}

SpecializedTheory::SpecializedTheory(FormalGroupLaw law, std::optional<TheoryNormalization> normalization,
                                     std::string name)
    : law_(std::move(law)), normalization_(std::move(normalization)), name_(std::move(name)) {
  if (normalization_) {
    if (!same_ring(normalization_->ring(), law_.ring())) throw RingMismatch("normalization and law rings differ");
    const int p = std::min(law_.precision(), kLawPrecision);
    if (!normalization_consistent(law_, *normalization_, p)) {
      throw InvalidArgument("normalization table disagrees with the logarithm of " + name_);
    }
  }
}

const TheoryNormalization& SpecializedTheory::normalization() const {
  if (!normalization_) throw UnsupportedTheory("no [P^n] table for " + name_);
  return *normalization_;
}

ChernContext SpecializedTheory::context(std::vector<int> caps, std::vector<std::string> names) const {
  return ChernContext(law_, std::move(caps), std::move(names));
}

// ---------------------------------------------------------------------------
// Pushforward along P(E) -> X

Series pushforward_projective(const SpecializedTheory& theory, const ProjectiveBundleContext& pb,
                              const std::vector<Series>& element) {
  return pushforward_projective(theory, pb, element, pb.base().law().series());
}

Series pushforward_projective(const SpecializedTheory& theory, const ProjectiveBundleContext& pb,
                              const std::vector<Series>& element, const Series& law_series) {
  const auto& norm = theory.normalization();
  const auto& ctx = pb.base();
  if (!same_ring(ctx.ring(), theory.ring())) throw RingMismatch("bundle context is not over the theory's ring");
  const int r = static_cast<int>(ctx.rank());
  int top = -1;  // u_m vanishes beyond sum(cap_k + 1) - 1
  for (int k = 0; k < r; ++k) top += ctx.cap(k) + 1;
  const int count = top + r;
  auto u = pb_fundamental_coefficients(ctx, count, law_series);
  auto c = pb.reduce(element);

  Series result = ctx.zero();
  for (int i = 0; i < r; ++i) {
    if (c[i].is_zero()) continue;
    Series image = ctx.zero();
    for (int m = 0; m + i < count; ++m) {
      if (u[m + i].is_zero()) continue;
      image = image + u[m + i].scaled(norm.point_class(m));
    }
    result = result + c[i] * image;
  }
  return result;
}

std::vector<Series> pushforward_hyperplane_powers(const SpecializedTheory& theory, const ProjectiveBundleContext& pb) {
  std::vector<Series> out;
  for (std::size_t i = 0; i < pb.rank(); ++i) {
    out.push_back(pushforward_projective(theory, pb, pb.hyperplane_power(static_cast<int>(i))));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Multiplicative theory

CheckResult verify_geometric_series_identity(int precision, int denominator_sign) {
  if (precision < 1) throw InvalidArgument("precision must be >= 1");
  auto q = QQ();
  Series x = univariate(q, precision, {0, 1});
  Series one = univariate(q, precision, {1});
  Series ratio = (-x) * invert_unit(one + x.scaled(q->from_rational(denominator_sign)));
  Series sum = one;
  Series power = one;
  for (int i = 1; i <= precision; ++i) {
    power = power * ratio;
    sum = sum + power;
  }
  return check_equal(sum, one - x, "sum (-x)^i/(1-x)^i");
}

Series chern_character_multiplicative(const ChernContext& ctx, const std::vector<Series>& roots) {
  if (!ctx.law().is_multiplicative()) throw WrongLaw("chern character needs the multiplicative law");
  Series ch = ctx.constant(ctx.ring()->from_rational(static_cast<long>(roots.size())));
  for (const auto& x : roots) ch = ch - euler_dual(ctx, x);
  return ch;
}

CheckResult ch_multiplicativity_check(const ChernContext& ctx, const Series& a, const Series& b) {
  Series lhs = chern_character_multiplicative(ctx, {euler_tensor(ctx, a, b)});
  Series rhs = chern_character_multiplicative(ctx, {a}) * chern_character_multiplicative(ctx, {b});
  return check_equal(lhs, rhs, "ch(L1 (x) L2) vs ch(L1) ch(L2)");
}

CheckResult geom_fgl_identity(const ChernContext& ctx, const Series& p1, const Series& p2_minus_p3) {
  if (ctx.rank() < 2) throw InvalidArgument("identity needs two roots");
  Series x1 = ctx.root(0), x2 = ctx.root(1);
  Series lhs = euler_tensor(ctx, x1, x2);
  Series rhs = x1 + x2 - x1 * x2 * p1 - x1 * x2 * lhs * p2_minus_p3;
  return check_equal(lhs, rhs, "e(L1 (x) L2)");
}

CheckResult geom_fgl_specialization_check(const SpecializedTheory& theory, int cap) {
  if (cap < 1) throw InvalidArgument("cap must be >= 1");
  // Classes over Y-roots y1 = e(L1), y2 = e(L1 (x) L2); y2 is substituted
  // by F(x1, x2) at the end, which needs cap 2*cap.
  ChernContext base = theory.context({cap, cap});
  ChernContext ys = theory.context({cap, 2 * cap}, {"y1", "y2"});
  auto push_one = [&](const ChernContext& ctx) {
    return pushforward_projective(theory, hyperplane_relation(ctx), {ctx.one()});
  };

  // P_1 = P(L1 + O)
  Series p1 = restrict_to(push_one(theory.context({cap, 0}, {"y1", "z"})), make_space({"y1"}, {cap}), cap);
  p1 = embed(p1, ys.space());
  // P_2 = P(L1 + L1 L2 + O)
  Series p2 = restrict_to(push_one(theory.context({cap, 2 * cap, 0}, {"y1", "y2", "z"})), ys.space(), ys.precision());

  // P_3 = P_Y(O(1) + O) over Y = P(L1 + L1 L2): push to Y, then to X. On Y,
  // t^k vanishes once k - 1 exceeds the cap sum of the roots.
  const int k_cap = ys.precision() + 1;
  Series inner = push_one(theory.context({k_cap, 0}, {"s", "z"}));
  std::vector<Series> on_y;
  for (int k = 0; k <= k_cap; ++k) on_y.push_back(ys.constant(inner.coefficient(ExponentVector{k, 0})));
  Series p3 = pushforward_projective(theory, hyperplane_relation(ys), on_y);

  Series x1 = base.root(0);
  Series F = euler_tensor(base, x1, base.root(1));
  auto down = [&](const Series& s) { return substitute(s, {{"y1", x1}, {"y2", F}}); };
  return geom_fgl_identity(base, down(p1), down(p2 - p3));
}

// ---------------------------------------------------------------------------
// Additive theory over Q

Series todd_series(int precision) {
  // (1 - exp(-x)) / x = sum (-1)^k x^k / (k+1)!
  std::vector<mpq_class> c;
  for (int k = 0; k <= precision; ++k) c.push_back(mpq_class(k % 2 == 0 ? 1 : -1) / factorial(k + 1));
  return invert_unit(univariate(QQ(), precision, c));
}

Series exp_series(int precision) {
  std::vector<mpq_class> c;
  for (int k = 0; k <= precision; ++k) c.push_back(1 / factorial(k));
  return univariate(QQ(), precision, c);
}

Series todd_class(const ChernContext& ctx, const std::vector<Series>& roots, const Series& todd) {
  if (ctx.ring()->scalars() != Scalars::Rational) throw InvalidArgument("todd class needs rational scalars");
  Series t = change_ring(todd, ctx.ring());
  Series acc = ctx.one();
  for (const auto& x : roots) acc = acc * substitute(t, {{"x", x}});
  return acc;
}

Series chern_character_additive(const ChernContext& ctx, const std::vector<Series>& roots) {
  if (ctx.ring()->scalars() != Scalars::Rational) throw InvalidArgument("chern character needs rational scalars");
  Series e = change_ring(exp_series(std::max(1, ctx.precision())), ctx.ring());
  Series acc = ctx.zero();
  for (const auto& x : roots) acc = acc + substitute(e, {{"x", x}});
  return acc;
}

mpq_class hrr_projective_space_value(int n, int d, const Series& todd) {
  if (n < 0) throw InvalidArgument("n must be >= 0");
  if (todd.precision() < n) throw PrecisionTooLow("todd series needs precision " + std::to_string(n));
  auto theory = SpecializedTheory::additive();
  // P^n = P(O^(n+1)) over a point; T_P^n + O = O(1)^(n+1).
  ChernContext point = theory.context(std::vector<int>(n + 1, 0));
  auto pb = hyperplane_relation(point);

  std::vector<mpq_class> e;
  mpq_class dk = 1;
  for (int k = 0; k <= n; ++k) {
    e.push_back(dk / factorial(k));
    dk *= d;
  }
  Series integrand = univariate(QQ(), n, e) * change_ring(todd, QQ()).truncated(n).pow(n + 1);
  std::vector<Series> element;
  for (int k = 0; k <= n; ++k) element.push_back(point.constant(integrand.coefficient(ExponentVector{k})));
  Series chi = pushforward_projective(theory, pb, element);
  return chi.constant_term().constant_part();
}

mpq_class hrr_projective_space(int n, int d) { return hrr_projective_space(n, d, todd_series(n + 1)); }

mpq_class hrr_projective_space(int n, int d, const Series& todd) {
  mpq_class v = hrr_projective_space_value(n, d, todd);
  if (v.get_den() != 1) {
    throw NonIntegerResult("chi(P^" + std::to_string(n) + ", O(" + std::to_string(d) + ")) = " + v.get_str());
  }
  return v;
}

}  // namespace cobcalc

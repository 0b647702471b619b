#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "cobcalc/chern.hpp"

namespace cobcalc {

// A formal group law together with the values [P^n] of its coefficient
// theory, which is what pushforwards to the base need.
class SpecializedTheory {
 public:
  // x + y over Q with [P^n] = 0 for n > 0.
  static SpecializedTheory additive();
  // x + y - xy over Z with [P^n] = 1.
  static SpecializedTheory multiplicative();
  // The universal law over the weight quotient, with [P^n] = (n+1) b_n.
  static SpecializedTheory universal_reduced(const LazardModel& model);
  // The universal law without a table: pushforwards are unsupported.
  static SpecializedTheory universal(const LazardModel& model);

  // Checks the table against the law's logarithm (InvalidArgument).
  SpecializedTheory(FormalGroupLaw law, std::optional<TheoryNormalization> normalization, std::string name);

  const FormalGroupLaw& law() const { return law_; }
  const RingPtr& ring() const { return law_.ring(); }
  const std::string& name() const { return name_; }
  bool has_normalization() const { return normalization_.has_value(); }
  // Throws UnsupportedTheory without a table.
  const TheoryNormalization& normalization() const;

  ChernContext context(std::vector<int> caps, std::vector<std::string> names = {}) const;

 private:
  FormalGroupLaw law_;
  std::optional<TheoryNormalization> normalization_;
  std::string name_;
};

// pi_! of sum_i c_i t^i along P(E) -> X: t^i contributes sum_m u_{m+i} [P^m].
// The bundle context must be built over the theory's law.
Series pushforward_projective(const SpecializedTheory& theory, const ProjectiveBundleContext& pb,
                              const std::vector<Series>& element);
// Same, expanding the fundamental class with the a_ij of `law_series`.
Series pushforward_projective(const SpecializedTheory& theory, const ProjectiveBundleContext& pb,
                              const std::vector<Series>& element, const Series& law_series);

// pi_!(t^i) for 0 <= i < r.
std::vector<Series> pushforward_hyperplane_powers(const SpecializedTheory& theory, const ProjectiveBundleContext& pb);

// sum_{i>=0} (-x)^i / (1 + s x)^i == 1 - x over Q to the given precision,
// with s = -1 for the true identity.
CheckResult verify_geometric_series_identity(int precision, int denominator_sign = -1);

// ch(E) = rank - c_1(E^dual) on a split bundle, in the multiplicative theory.
Series chern_character_multiplicative(const ChernContext& ctx, const std::vector<Series>& roots);
// ch(L1 (x) L2) == ch(L1) ch(L2).
CheckResult ch_multiplicativity_check(const ChernContext& ctx, const Series& a, const Series& b);

// e(L1 (x) L2) == e1 + e2 - e1 e2 [P_1] - e1 e2 e(L1 (x) L2) ([P_2] - [P_3]) for the
// first two roots of the context, with the given values of the bundle classes.
CheckResult geom_fgl_identity(const ChernContext& ctx, const Series& p1, const Series& p2_minus_p3);
// Computes [P_1], [P_2], [P_3] by pushforward in the theory and checks the
// identity on two roots with the given cap.
CheckResult geom_fgl_specialization_check(const SpecializedTheory& theory, int cap = 3);

// x / (1 - exp(-x)) over Q in the variable x.
Series todd_series(int precision);
// exp(x) over Q in the variable x.
Series exp_series(int precision);

// prod_k todd(x_k); the context ring must have rational scalars.
Series todd_class(const ChernContext& ctx, const std::vector<Series>& roots, const Series& todd);
// sum_k exp(x_k).
Series chern_character_additive(const ChernContext& ctx, const std::vector<Series>& roots);

// chi(P^n, O(d)) as pi_!(exp(d t) todd(t)^(n+1)) in the additive theory.
mpq_class hrr_projective_space_value(int n, int d, const Series& todd);
// Same with the standard Todd series; throws NonIntegerResult unless integral.
mpq_class hrr_projective_space(int n, int d);
mpq_class hrr_projective_space(int n, int d, const Series& todd);

}  // namespace cobcalc

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cobcalc/coeff_ring.hpp"
#include "cobcalc/exponent_vector.hpp"

namespace cobcalc {

// Ordered list of named indeterminates with optional per-variable exponent
// caps: a variable with cap m satisfies v^(m+1) = 0.
struct VarSpace {
  static constexpr int kNoCap = -1;

  std::vector<std::string> names;
  std::vector<int> caps;

  std::size_t size() const { return names.size(); }
  std::optional<std::size_t> index_of(const std::string& name) const;
  bool all_capped() const;
  int cap_sum() const;
  bool admits(const ExponentVector& exps) const;
  bool operator==(const VarSpace&) const = default;
};

using SpacePtr = std::shared_ptr<const VarSpace>;

SpacePtr make_space(std::vector<std::string> names, std::vector<int> caps = {});

// Sparse multivariate power series truncated at total degree `precision`:
// terms of higher total degree are not stored and are unknown. Terms are kept
// in graded-lex order with no zero coefficients. Values are immutable.
class Series {
 public:
  static constexpr int kMaxPrecision = ExponentVector::kMaxExponent;

  struct Term {
    ExponentVector exps;
    Coeff coeff;
  };

  // The zero series over Z in no variables.
  Series();
  Series(RingPtr ring, SpacePtr space, int precision);

  static Series from_terms(RingPtr ring, SpacePtr space, int precision, std::vector<Term> terms);
  static Series constant(RingPtr ring, SpacePtr space, int precision, const Coeff& value);
  static Series variable(RingPtr ring, SpacePtr space, int precision, const std::string& name);
  static Series monomial(RingPtr ring, SpacePtr space, int precision, const ExponentVector& exps,
                         const Coeff& value);

  const RingPtr& ring() const { return ring_; }
  const SpacePtr& space() const { return space_; }
  int precision() const { return precision_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  // Every variable capped and precision covers all admissible monomials.
  bool is_exact() const;
  Coeff coefficient(const ExponentVector& exps) const;
  Coeff constant_term() const;
  // Lowest total degree of a stored term; nullopt for the zero series.
  std::optional<int> valuation() const;
  // Largest exponent of variable `index` among stored terms.
  int max_exponent(std::size_t index) const;

  bool is_unit() const;
  // Constant term nilpotent in the coefficient ring. Positive-degree terms are
  // nilpotent modulo precision or caps.
  bool is_nilpotent() const;

  Series operator-() const;
  Series operator+(const Series& other) const;
  Series operator-(const Series& other) const;
  Series operator*(const Series& other) const;
  Series scaled(const Coeff& factor) const;

  Series truncated(int precision) const;
  // Reinterprets the stored terms at another precision: unknown terms up to
  // the new precision are taken to be zero. Only valid when the caller knows
  // them to vanish (exact polynomials, Newton iterates).
  Series assume_precision(int precision) const;
  Series pow(int exponent) const;

 private:
  Series(RingPtr ring, SpacePtr space, int precision, std::vector<Term> sorted_terms, bool);
  void check_compatible(const Series& other) const;

  RingPtr ring_;
  SpacePtr space_;
  int precision_;
  std::vector<Term> terms_;
};

// Named operations.
Series add(const Series& a, const Series& b);
Series mul(const Series& a, const Series& b);

// s with a*s = 1 to a's precision. Throws NotAUnit.
Series invert_unit(const Series& a);

// Composition: replaces each assigned variable of `target` by a series. All
// assigned series share one ring and variable space, which becomes the
// result's space; unassigned target variables must exist there by name.
// Throws DivergentSubstitution when a series with nonzero constant term is
// substituted for an uncapped variable.
Series substitute(const Series& target, const std::map<std::string, Series>& assignment);

// g with g(a(x)) = x = a(g(x)) for a univariate a = x + O(x^2).
Series compositional_inverse(const Series& a);

// Part of total monomial degree d.
Series graded_component(const Series& a, int degree);

// Part of combined degree d, where variables have degree 1 and a weighted
// ring generator of weight w has degree -w (so every formal group law over
// the Lazard model is homogeneous of degree 1). Throws UngradedRing when a
// coefficient involves an unweighted generator.
Series homogeneous_component(const Series& a, int degree);

Series derivative(const Series& a, std::size_t var);
// Formal antiderivative in `var`; requires rational scalars.
Series integrate(const Series& a, std::size_t var);

// Coerces every coefficient into `ring` (IntegralityFailure, RingMismatch).
Series change_ring(const Series& a, RingPtr ring);

// Maps variables by name into `space`; terms violating its caps are dropped.
Series embed(const Series& a, SpacePtr space);
// Same as embed, but source variable i becomes target variable `names[i]`.
Series embed(const Series& a, SpacePtr space, const std::vector<std::string>& names);

// Exact division by a monomial dividing every term.
Series divide_by_monomial(const Series& a, const ExponentVector& mono);

struct SeriesComparison {
  bool equal = false;
  // Precision at which the comparison was decided.
  int precision = 0;
  // Lowest monomial where the two sides differ.
  std::optional<ExponentVector> first_difference;
};

SeriesComparison compare(const Series& a, const Series& b);

// Human-readable monomial such as "b1*x^2*y"; "1" for the empty monomial.
std::string format_monomial(const VarSpace& space, const ExponentVector& exps);

}  // namespace cobcalc

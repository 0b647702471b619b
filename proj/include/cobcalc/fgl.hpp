#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cobcalc/series.hpp"

namespace cobcalc {

// A validated formal group law F(x,y) over a coefficient ring. The stored
// series may be known beyond `precision()` (polynomial laws are stored
// exactly); the axioms are checked up to `precision()`, which is also the
// default precision of derived series. Copies share the derived-series cache.
class FormalGroupLaw {
 public:
  // x + y and x + y - xy, stored as exact polynomials.
  static FormalGroupLaw additive(RingPtr ring, int precision);
  static FormalGroupLaw multiplicative(RingPtr ring, int precision);
  // x + y + sum a_ij x^i y^j from a table (i, j >= 1), validated.
  static FormalGroupLaw from_coefficients(RingPtr ring, int precision,
                                          const std::map<std::pair<int, int>, Coeff>& a,
                                          std::string name = "custom");

  // Validates unitality, commutativity, associativity in that order
  // (AxiomViolation with the first failing degree) and solves for the inverse.
  FormalGroupLaw(const Series& F, int precision, std::string name = "custom");

  const std::string& name() const { return name_; }
  const RingPtr& ring() const { return F_.ring(); }
  int precision() const { return precision_; }
  // F in variables (x, y).
  const Series& series() const { return F_; }
  // Coefficient a_ij of x^i y^j.
  Coeff coefficient(int i, int j) const;
  // True when F is known to be x + y - xy.
  bool is_multiplicative() const;
  bool is_additive() const;

  // inv_F(x) with F(x, inv_F(x)) = 0, in variable x; precision <= 0 means default.
  Series inverse(int precision = 0) const;
  // [n]_F x in variable x; negative n go through inv_F.
  Series n_series(int n, int precision = 0) const;

  // F(a, b) for series sharing ring and variables.
  Series apply(const Series& a, const Series& b) const;

 private:
  struct Cache;
  Series F_;
  int precision_;
  std::string name_;
  std::shared_ptr<Cache> cache_;
};

// Validating constructor under the operation name used by the CLI.
FormalGroupLaw fgl_from_series(const Series& F, int precision);

// Left fold of F over `parts`; 0 for an empty list. Parts must have zero
// constant term (NonNilpotentArgument).
Series formal_sum(const FormalGroupLaw& law, const std::vector<Series>& parts);

// log_F(x) over the rationalized ring: integral of 1 / (dF/dy)(x, 0).
Series logarithm(const FormalGroupLaw& law, int precision = 0);

// The universal law over the model Z[b1..b_{N-1}] of the Lazard ring, built as
// exp(log x + log y) with log x = x + sum b_i x^(i+1).
class LazardModel {
 public:
  explicit LazardModel(int degree);

  int degree() const { return degree_; }
  // Z[b1..b_{N-1}]
  const RingPtr& ring() const { return law_->ring(); }
  // Over Q[b1..b_{N-1}].
  const Series& log() const { return log_; }
  const Series& exp() const { return exp_; }
  const FormalGroupLaw& law() const { return *law_; }
  Coeff a(int i, int j) const { return law_->coefficient(i, j); }

  // The same law over Z[b1..b_{N-1}]/(weight >= N), where the truncation at
  // total degree N is an exact polynomial formal group law.
  const FormalGroupLaw& reduced_law() const { return *reduced_; }

 private:
  int degree_;
  Series log_;
  Series exp_;
  std::optional<FormalGroupLaw> law_;
  std::optional<FormalGroupLaw> reduced_;
};

LazardModel universal_fgl(int degree);

// Classes of projective spaces [P^n] in a theory's coefficient ring.
class TheoryNormalization {
 public:
  static TheoryNormalization additive(RingPtr ring);
  static TheoryNormalization multiplicative(RingPtr ring);
  // [P^n] = (n+1) b_n over the model ring (known for n < N).
  static TheoryNormalization universal(const LazardModel& model);
  // Same values over the weight quotient, where [P^n] = 0 for n >= N.
  static TheoryNormalization universal_reduced(const LazardModel& model);
  TheoryNormalization(RingPtr ring, std::vector<Coeff> table, std::optional<Coeff> tail);

  const RingPtr& ring() const { return ring_; }
  // Throws PrecisionTooLow beyond a table without tail.
  Coeff point_class(int n) const;
  int known_up_to() const;

 private:
  RingPtr ring_;
  std::vector<Coeff> table_;
  std::optional<Coeff> tail_;
};

// Checks sum [P^n] x^(n+1)/(n+1) == log_F(x) up to `precision`.
bool normalization_consistent(const FormalGroupLaw& law, const TheoryNormalization& norm, int precision);

// Ring map from the model ring Z[b1..b_{N-1}] to a target law's ring that
// sends the universal law to the target law.
class ClassifyingMap {
 public:
  ClassifyingMap(const LazardModel& model, const FormalGroupLaw& target);

  const RingPtr& source() const { return source_; }
  const RingPtr& target() const { return target_; }
  // Image of b_n, in the rationalized target ring.
  const Coeff& b_image(int n) const { return b_images_.at(n - 1); }

  Coeff apply(const Coeff& c) const;
  Series apply(const Series& s) const;

  // Images of a_ij for 1 <= i, j and i + j <= N.
  std::map<std::pair<int, int>, Coeff> a_table() const;

 private:
  RingPtr source_;
  RingPtr target_;
  RingPtr target_q_;
  std::vector<Coeff> b_images_;
  std::map<std::pair<int, int>, Coeff> a_source_;
};

ClassifyingMap specialize_a(const LazardModel& model, const FormalGroupLaw& target);

}  // namespace cobcalc

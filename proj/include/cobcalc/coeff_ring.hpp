#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cobcalc/exponent_vector.hpp"

namespace cobcalc {

// An element of a coefficient ring: a sparse polynomial in the ring's
// generators with exact rational coefficients, terms sorted by monomial.
// Which values are legal is decided by the owning CoeffRing.
class Coeff {
 public:
  using Term = std::pair<ExponentVector, mpq_class>;

  Coeff() = default;
  static Coeff constant(const mpq_class& value, std::size_t num_generators);
  static Coeff monomial(const ExponentVector& mono, const mpq_class& value);

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  // Coefficient of the empty monomial.
  mpq_class constant_part() const;
  bool is_constant() const;

  Coeff operator-() const;
  Coeff operator+(const Coeff& other) const;
  Coeff operator-(const Coeff& other) const;
  Coeff& operator+=(const Coeff& other);
  Coeff scaled(const mpq_class& factor) const;
  bool operator==(const Coeff& other) const;

  // Lowest common multiple of all denominators.
  mpz_class denominator_lcm() const;

 private:
  friend class CoeffRing;
  explicit Coeff(std::vector<Term> sorted_terms) : terms_(std::move(sorted_terms)) {}
  std::vector<Term> terms_;
};

struct Generator {
  std::string name;
  // Weight under the Lazard grading (b_i has weight i). Unset means the
  // generator does not participate in any grading.
  std::optional<int> weight;
  bool operator==(const Generator&) const = default;
};

enum class Scalars { Integer, Rational };

enum class RingKind { Integers, Rationals, GradedIntPoly, GradedRatPoly, Quotient };

std::string to_string(RingKind kind);

class CoeffRing;
using RingPtr = std::shared_ptr<const CoeffRing>;

// Exact commutative coefficient ring: Z or Q, optionally adjoined generators,
// optionally modulo a monomial ideal (explicit zero monomials and/or "every
// monomial of weight >= bound vanishes").
class CoeffRing {
 public:
  CoeffRing(Scalars scalars, std::vector<Generator> generators,
            std::vector<ExponentVector> zero_monomials = {},
            std::optional<int> weight_bound = std::nullopt);

  static RingPtr integers();
  static RingPtr rationals();
  // Z[b1..bM] or Q[b1..bM] with weight(b_i) = i.
  static RingPtr lazard_polynomials(int num_generators, Scalars scalars = Scalars::Integer);
  static RingPtr quotient(const CoeffRing& base, std::vector<ExponentVector> zero_monomials,
                          std::optional<int> weight_bound = std::nullopt);

  RingKind kind() const;
  Scalars scalars() const { return scalars_; }
  const std::vector<Generator>& generators() const { return generators_; }
  std::size_t num_generators() const { return generators_.size(); }
  const std::vector<ExponentVector>& zero_monomials() const { return zero_monomials_; }
  std::optional<int> weight_bound() const { return weight_bound_; }
  std::optional<std::size_t> generator_index(const std::string& name) const;

  // Same generators and relations with rational (resp. integer) scalars.
  RingPtr rationalized() const;
  RingPtr integral() const;

  Coeff zero() const { return {}; }
  Coeff one() const { return from_rational(1); }
  Coeff from_rational(const mpq_class& value) const;
  Coeff generator(std::size_t index) const;

  // Weighted degree of a monomial; nullopt if it uses an unweighted generator.
  std::optional<int> weight(const ExponentVector& mono) const;
  bool is_zero_monomial(const ExponentVector& mono) const;
  bool is_nilpotent_monomial(const ExponentVector& mono) const;

  bool contains(const Coeff& value) const;
  Coeff reduce(const Coeff& value) const;
  Coeff mul(const Coeff& a, const Coeff& b) const;
  // acc += a * b, reduced.
  void add_mul(Coeff& acc, const Coeff& a, const Coeff& b) const;
  Coeff pow(const Coeff& a, int exponent) const;

  bool is_unit(const Coeff& a) const;
  bool is_nilpotent(const Coeff& a) const;
  Coeff inverse(const Coeff& a) const;

  // Maps a value into this ring; throws IntegralityFailure if a rational
  // value lands in an integer ring, RingMismatch on generator mismatch.
  Coeff coerce(const Coeff& value) const;

  std::string format(const Coeff& value) const;
  std::string describe() const;

  bool operator==(const CoeffRing& other) const;

 private:
  bool scalar_is_unit(const mpq_class& q) const;

  Scalars scalars_;
  std::vector<Generator> generators_;
  std::vector<ExponentVector> zero_monomials_;
  std::optional<int> weight_bound_;
};

bool same_ring(const RingPtr& a, const RingPtr& b);

}  // namespace cobcalc

#pragma once

#include <stdexcept>
#include <string>

namespace cobcalc {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define COBCALC_DEFINE_ERROR(Name)         \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  };

COBCALC_DEFINE_ERROR(VariableMismatch)
COBCALC_DEFINE_ERROR(RingMismatch)
COBCALC_DEFINE_ERROR(NotAUnit)
COBCALC_DEFINE_ERROR(DivergentSubstitution)
COBCALC_DEFINE_ERROR(BadLowestTerm)
COBCALC_DEFINE_ERROR(UngradedRing)
COBCALC_DEFINE_ERROR(IntegralityFailure)
COBCALC_DEFINE_ERROR(NonNilpotentArgument)
COBCALC_DEFINE_ERROR(PrecisionTooLow)
COBCALC_DEFINE_ERROR(NonPositiveMultiplicity)
COBCALC_DEFINE_ERROR(StructureViolation)
COBCALC_DEFINE_ERROR(NotInvertible)
COBCALC_DEFINE_ERROR(UnsupportedTheory)
COBCALC_DEFINE_ERROR(WrongLaw)
COBCALC_DEFINE_ERROR(NonIntegerResult)
COBCALC_DEFINE_ERROR(ParseError)
COBCALC_DEFINE_ERROR(InvalidArgument)

#undef COBCALC_DEFINE_ERROR

// Raised when a candidate formal group law fails one of its axioms.
class AxiomViolation : public Error {
 public:
  AxiomViolation(std::string axiom, int degree)
      : Error("axiom violated: " + axiom + " (first failing degree " +
              std::to_string(degree) + ")"),
        axiom_(std::move(axiom)),
        degree_(degree) {}

  const std::string& axiom() const { return axiom_; }
  int degree() const { return degree_; }

 private:
  std::string axiom_;
  int degree_;
};

}  // namespace cobcalc

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>

namespace cobcalc {

// Fixed-capacity exponent vector, used both for series monomials and for
// monomials in the generators of a coefficient ring.
class ExponentVector {
 public:
  static constexpr std::size_t kMaxVars = 24;
  static constexpr int kMaxExponent = 255;

  ExponentVector() = default;
  explicit ExponentVector(std::size_t n);
  ExponentVector(std::initializer_list<int> exps);

  static ExponentVector unit(std::size_t n, std::size_t index, int power = 1);

  std::size_t size() const { return n_; }
  int operator[](std::size_t i) const { return e_[i]; }
  void set(std::size_t i, int value);

  int total_degree() const;
  bool is_zero() const { return total_degree() == 0; }
  // Bit i is set iff variable i has positive exponent.
  std::uint32_t support() const;

  ExponentVector operator+(const ExponentVector& other) const;
  // Componentwise difference; requires other to divide *this.
  ExponentVector operator-(const ExponentVector& other) const;
  bool divides(const ExponentVector& other) const;

  // Graded order: total degree first, then lexicographic on the entries.
  std::strong_ordering operator<=>(const ExponentVector& other) const;
  bool operator==(const ExponentVector& other) const;

  std::size_t hash() const;

 private:
  std::array<std::uint8_t, kMaxVars> e_{};
  std::uint8_t n_ = 0;
};

struct ExponentVectorHash {
  std::size_t operator()(const ExponentVector& v) const { return v.hash(); }
};

}  // namespace cobcalc

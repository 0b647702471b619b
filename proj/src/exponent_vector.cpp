#include "cobcalc/exponent_vector.hpp"

#include <string>

#include "cobcalc/errors.hpp"

namespace cobcalc {

namespace {

void check_exponent(int value) {
  if (value < 0 || value > ExponentVector::kMaxExponent) {
    throw InvalidArgument("exponent out of range: " + std::to_string(value));
  }
}

}  // namespace

ExponentVector::ExponentVector(std::size_t n) : n_(static_cast<std::uint8_t>(n)) {
  if (n > kMaxVars) {
    throw InvalidArgument("too many variables: " + std::to_string(n));
  }
}

ExponentVector::ExponentVector(std::initializer_list<int> exps) : ExponentVector(exps.size()) {
  std::size_t i = 0;
  for (int e : exps) set(i++, e);
}

ExponentVector ExponentVector::unit(std::size_t n, std::size_t index, int power) {
  ExponentVector v(n);
  v.set(index, power);
  return v;
}

void ExponentVector::set(std::size_t i, int value) {
  check_exponent(value);
  e_[i] = static_cast<std::uint8_t>(value);
}

int ExponentVector::total_degree() const {
  int d = 0;
  for (std::size_t i = 0; i < n_; ++i) d += e_[i];
  return d;
}

std::uint32_t ExponentVector::support() const {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (e_[i] != 0) mask |= (1u << i);
  }
  return mask;
}

ExponentVector ExponentVector::operator+(const ExponentVector& other) const {
  ExponentVector out(n_);
  for (std::size_t i = 0; i < n_; ++i) out.set(i, int(e_[i]) + int(other.e_[i]));
  return out;
}

ExponentVector ExponentVector::operator-(const ExponentVector& other) const {
  ExponentVector out(n_);
  for (std::size_t i = 0; i < n_; ++i) out.set(i, int(e_[i]) - int(other.e_[i]));
  return out;
}

bool ExponentVector::divides(const ExponentVector& other) const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (e_[i] > other.e_[i]) return false;
  }
  return true;
}

std::strong_ordering ExponentVector::operator<=>(const ExponentVector& other) const {
  if (auto c = total_degree() <=> other.total_degree(); c != 0) return c;
  if (auto c = n_ <=> other.n_; c != 0) return c;
  for (std::size_t i = 0; i < n_; ++i) {
    if (auto c = e_[i] <=> other.e_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

bool ExponentVector::operator==(const ExponentVector& other) const {
  if (n_ != other.n_) return false;
  for (std::size_t i = 0; i < n_; ++i) {
    if (e_[i] != other.e_[i]) return false;
  }
  return true;
}

std::size_t ExponentVector::hash() const {
  // FNV-1a over the used prefix.
  std::size_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < n_; ++i) {
    h ^= e_[i];
    h *= 1099511628211ull;
  }
  return h ^ n_;
}

}  // namespace cobcalc

#include "cobcalc/coeff_ring.hpp"

#include <algorithm>
#include <sstream>

#include "cobcalc/errors.hpp"

namespace cobcalc {

namespace {

using Term = Coeff::Term;

// Merges two sorted term lists, summing equal monomials and dropping zeros.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, negate_b ? mpq_class(-ib->second) : ib->second);
      ++ib;
    } else {
      mpq_class s = negate_b ? mpq_class(ia->second - ib->second) : mpq_class(ia->second + ib->second);
      if (s != 0) out.emplace_back(ia->first, std::move(s));
      ++ia;
      ++ib;
    }
  }
  return out;
}

// Sorts and combines an unsorted list of terms.
std::vector<Term> normalize(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return x.first < y.first; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      if (!out.empty() && out.back().second == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().second == 0) out.pop_back();
  return out;
}

std::string format_scalar(const mpq_class& q) { return q.get_str(); }

}  // namespace

// ---------------------------------------------------------------------------
// Coeff

Coeff Coeff::constant(const mpq_class& value, std::size_t num_generators) {
  if (value == 0) return {};
  return Coeff({{ExponentVector(num_generators), value}});
}

Coeff Coeff::monomial(const ExponentVector& mono, const mpq_class& value) {
  if (value == 0) return {};
  return Coeff({{mono, value}});
}

mpq_class Coeff::constant_part() const {
  if (!terms_.empty() && terms_.front().first.is_zero()) return terms_.front().second;
  return 0;
}

bool Coeff::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().first.is_zero());
}

Coeff Coeff::operator-() const {
  Coeff out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

Coeff Coeff::operator+(const Coeff& other) const { return Coeff(merge_terms(terms_, other.terms_, false)); }

Coeff Coeff::operator-(const Coeff& other) const { return Coeff(merge_terms(terms_, other.terms_, true)); }

Coeff& Coeff::operator+=(const Coeff& other) {
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = other.terms_;
    return *this;
  }
  terms_ = merge_terms(terms_, other.terms_, false);
  return *this;
}

Coeff Coeff::scaled(const mpq_class& factor) const {
  if (factor == 0) return {};
  Coeff out = *this;
  for (auto& t : out.terms_) t.second *= factor;
  return out;
}

bool Coeff::operator==(const Coeff& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!(terms_[i].first == other.terms_[i].first) || terms_[i].second != other.terms_[i].second) {
      return false;
    }
  }
  return true;
}

mpz_class Coeff::denominator_lcm() const {
  mpz_class l = 1;
  for (const auto& t : terms_) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.second.get_den_mpz_t());
  }
  return l;
}

// ---------------------------------------------------------------------------
// CoeffRing

std::string to_string(RingKind kind) {
  switch (kind) {
    case RingKind::Integers: return "Integers";
    case RingKind::Rationals: return "Rationals";
    case RingKind::GradedIntPoly: return "GradedIntPoly";
    case RingKind::GradedRatPoly: return "GradedRatPoly";
    case RingKind::Quotient: return "Quotient";
  }
  return "?";
}

CoeffRing::CoeffRing(Scalars scalars, std::vector<Generator> generators,
                     std::vector<ExponentVector> zero_monomials, std::optional<int> weight_bound)
    : scalars_(scalars),
      generators_(std::move(generators)),
      zero_monomials_(std::move(zero_monomials)),
      weight_bound_(weight_bound) {
  if (generators_.size() > ExponentVector::kMaxVars) {
    throw InvalidArgument("too many ring generators");
  }
  for (const auto& z : zero_monomials_) {
    if (z.size() != generators_.size() || z.is_zero()) {
      throw InvalidArgument("zero monomial must be a non-constant monomial in the ring generators");
    }
  }
  if (weight_bound_) {
    if (*weight_bound_ < 1) throw InvalidArgument("weight bound must be positive");
    for (const auto& g : generators_) {
      if (!g.weight || *g.weight < 1) {
        throw InvalidArgument("weight bound requires positively weighted generators");
      }
    }
  }
  std::sort(zero_monomials_.begin(), zero_monomials_.end());
  zero_monomials_.erase(std::unique(zero_monomials_.begin(), zero_monomials_.end()), zero_monomials_.end());
}

RingPtr CoeffRing::integers() {
  static const RingPtr ring = std::make_shared<const CoeffRing>(Scalars::Integer, std::vector<Generator>{});
  return ring;
}

RingPtr CoeffRing::rationals() {
  static const RingPtr ring = std::make_shared<const CoeffRing>(Scalars::Rational, std::vector<Generator>{});
  return ring;
}

RingPtr CoeffRing::lazard_polynomials(int num_generators, Scalars scalars) {
  std::vector<Generator> gens;
  for (int i = 1; i <= num_generators; ++i) gens.push_back({"b" + std::to_string(i), i});
  return std::make_shared<const CoeffRing>(scalars, std::move(gens));
}

RingPtr CoeffRing::quotient(const CoeffRing& base, std::vector<ExponentVector> zero_monomials,
                            std::optional<int> weight_bound) {
  auto zs = base.zero_monomials_;
  zs.insert(zs.end(), zero_monomials.begin(), zero_monomials.end());
  auto wb = base.weight_bound_;
  if (weight_bound) wb = wb ? std::min(*wb, *weight_bound) : *weight_bound;
  return std::make_shared<const CoeffRing>(base.scalars_, base.generators_, std::move(zs), wb);
}

RingKind CoeffRing::kind() const {
  if (!zero_monomials_.empty() || weight_bound_) return RingKind::Quotient;
  if (generators_.empty()) return scalars_ == Scalars::Integer ? RingKind::Integers : RingKind::Rationals;
  return scalars_ == Scalars::Integer ? RingKind::GradedIntPoly : RingKind::GradedRatPoly;
}

std::optional<std::size_t> CoeffRing::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].name == name) return i;
  }
  return std::nullopt;
}

RingPtr CoeffRing::rationalized() const {
  return std::make_shared<const CoeffRing>(Scalars::Rational, generators_, zero_monomials_, weight_bound_);
}

RingPtr CoeffRing::integral() const {
  return std::make_shared<const CoeffRing>(Scalars::Integer, generators_, zero_monomials_, weight_bound_);
}

Coeff CoeffRing::from_rational(const mpq_class& value) const {
  if (scalars_ == Scalars::Integer && value.get_den() != 1) {
    throw IntegralityFailure("non-integer scalar " + value.get_str() + " in integer ring");
  }
  return Coeff::constant(value, generators_.size());
}

Coeff CoeffRing::generator(std::size_t index) const {
  return reduce(Coeff::monomial(ExponentVector::unit(generators_.size(), index), 1));
}

std::optional<int> CoeffRing::weight(const ExponentVector& mono) const {
  int w = 0;
  for (std::size_t i = 0; i < mono.size(); ++i) {
    if (mono[i] == 0) continue;
    if (!generators_[i].weight) return std::nullopt;
    w += mono[i] * *generators_[i].weight;
  }
  return w;
}

bool CoeffRing::is_zero_monomial(const ExponentVector& mono) const {
  if (weight_bound_ && *weight(mono) >= *weight_bound_) return true;
  for (const auto& z : zero_monomials_) {
    if (z.divides(mono)) return true;
  }
  return false;
}

bool CoeffRing::is_nilpotent_monomial(const ExponentVector& mono) const {
  if (mono.is_zero()) return false;
  if (weight_bound_) return true;  // every generator has positive weight
  const auto supp = mono.support();
  for (const auto& z : zero_monomials_) {
    if ((z.support() & ~supp) == 0) return true;
  }
  return false;
}

bool CoeffRing::contains(const Coeff& value) const {
  for (const auto& [mono, q] : value.terms()) {
    if (mono.size() != generators_.size()) return false;
    if (scalars_ == Scalars::Integer && q.get_den() != 1) return false;
    if (is_zero_monomial(mono)) return false;
  }
  return true;
}

Coeff CoeffRing::reduce(const Coeff& value) const {
  if (zero_monomials_.empty() && !weight_bound_) return value;
  std::vector<Term> kept;
  for (const auto& t : value.terms()) {
    if (!is_zero_monomial(t.first)) kept.push_back(t);
  }
  return Coeff(std::move(kept));
}

Coeff CoeffRing::mul(const Coeff& a, const Coeff& b) const {
  Coeff out;
  add_mul(out, a, b);
  return out;
}

void CoeffRing::add_mul(Coeff& acc, const Coeff& a, const Coeff& b) const {
  if (a.terms_.empty() || b.terms_.empty()) return;
  // Scalar fast path.
  if (a.terms_.size() == 1 && b.terms_.size() == 1) {
    const auto& [ma, qa] = a.terms_.front();
    const auto& [mb, qb] = b.terms_.front();
    ExponentVector m = ma + mb;
    if (is_zero_monomial(m)) return;
    mpq_class q = qa * qb;
    if (acc.terms_.size() == 1 && acc.terms_.front().first == m) {
      acc.terms_.front().second += q;
      if (acc.terms_.front().second == 0) acc.terms_.clear();
      return;
    }
    acc += Coeff({{m, std::move(q)}});
    return;
  }
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, qa] : a.terms_) {
    for (const auto& [mb, qb] : b.terms_) {
      ExponentVector m = ma + mb;
      if (is_zero_monomial(m)) continue;
      prod.emplace_back(m, qa * qb);
    }
  }
  acc += Coeff(normalize(std::move(prod)));
}

Coeff CoeffRing::pow(const Coeff& a, int exponent) const {
  if (exponent < 0) throw InvalidArgument("negative exponent");
  Coeff result = one();
  Coeff base = a;
  while (exponent > 0) {
    if (exponent & 1) result = mul(result, base);
    exponent >>= 1;
    if (exponent > 0) base = mul(base, base);
  }
  return result;
}

bool CoeffRing::scalar_is_unit(const mpq_class& q) const {
  if (scalars_ == Scalars::Rational) return q != 0;
  return q == 1 || q == -1;
}

bool CoeffRing::is_nilpotent(const Coeff& a) const {
  for (const auto& [mono, q] : a.terms()) {
    if (!is_nilpotent_monomial(mono)) return false;
  }
  return true;
}

bool CoeffRing::is_unit(const Coeff& a) const {
  if (!scalar_is_unit(a.constant_part())) return false;
  for (const auto& [mono, q] : a.terms()) {
    if (!mono.is_zero() && !is_nilpotent_monomial(mono)) return false;
  }
  return true;
}

Coeff CoeffRing::inverse(const Coeff& a) const {
  if (!is_unit(a)) throw NotAUnit("not a unit in " + describe() + ": " + format(a));
  const mpq_class s_inv = 1 / a.constant_part();
  // a = s (1 + n) with n nilpotent; 1/a = s^-1 * sum (-n)^k.
  Coeff n = (a - from_rational(a.constant_part())).scaled(s_inv);
  Coeff neg_n = -n;
  Coeff result = one();
  Coeff power = one();
  for (int k = 1;; ++k) {
    power = mul(power, neg_n);
    if (power.is_zero()) break;
    result += power;
    if (k > 100000) throw NotAUnit("nilpotent part did not vanish");
  }
  return result.scaled(s_inv);
}

Coeff CoeffRing::coerce(const Coeff& value) const {
  for (const auto& [mono, q] : value.terms()) {
    if (mono.size() != generators_.size()) {
      throw RingMismatch("coefficient has wrong number of generators for " + describe());
    }
    if (scalars_ == Scalars::Integer && q.get_den() != 1) {
      throw IntegralityFailure("coefficient " + q.get_str() + " is not integral");
    }
  }
  return reduce(value);
}

std::string CoeffRing::format(const Coeff& value) const {
  if (value.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [mono, q] : value.terms()) {
    mpq_class mag = abs(q);
    if (first) {
      if (q < 0) out << "-";
    } else {
      out << (q < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mono.is_zero() || mag != 1) {
      out << format_scalar(mag);
      wrote = true;
    }
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (mono[i] == 0) continue;
      if (wrote) out << "*";
      out << generators_[i].name;
      if (mono[i] > 1) out << "^" << mono[i];
      wrote = true;
    }
  }
  return out.str();
}

std::string CoeffRing::describe() const {
  std::ostringstream out;
  out << (scalars_ == Scalars::Integer ? "ZZ" : "QQ");
  if (!generators_.empty()) {
    out << "[";
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if (i) out << ",";
      out << generators_[i].name;
    }
    out << "]";
  }
  if (weight_bound_) out << "/(weight>=" << *weight_bound_ << ")";
  for (const auto& z : zero_monomials_) {
    out << "/(" << format(Coeff::monomial(z, 1)) << ")";
  }
  return out.str();
}

bool CoeffRing::operator==(const CoeffRing& other) const {
  return scalars_ == other.scalars_ && generators_ == other.generators_ &&
         zero_monomials_ == other.zero_monomials_ && weight_bound_ == other.weight_bound_;
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

}  // namespace cobcalc

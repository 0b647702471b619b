#include "cobcalc/series.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "cobcalc/errors.hpp"

namespace cobcalc {

namespace {

using TermMap = std::unordered_map<ExponentVector, Coeff, ExponentVectorHash>;

int clamp_precision(const VarSpace& space, int precision) {
  if (precision < 0) throw PrecisionTooLow("negative precision " + std::to_string(precision));
  precision = std::min(precision, Series::kMaxPrecision);
  if (space.all_capped()) precision = std::min(precision, space.cap_sum());
  return precision;
}

std::vector<Series::Term> collect(TermMap&& acc) {
  std::vector<Series::Term> out;
  out.reserve(acc.size());
  for (auto& [exps, c] : acc) {
    if (!c.is_zero()) out.push_back({exps, std::move(c)});
  }
  std::sort(out.begin(), out.end(), [](const Series::Term& a, const Series::Term& b) { return a.exps < b.exps; });
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// VarSpace

std::optional<std::size_t> VarSpace::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  return std::nullopt;
}

bool VarSpace::all_capped() const {
  return std::all_of(caps.begin(), caps.end(), [](int c) { return c != kNoCap; });
}

int VarSpace::cap_sum() const {
  int s = 0;
  for (int c : caps) {
    if (c == kNoCap) return std::numeric_limits<int>::max();
    s += c;
  }
  return s;
}

bool VarSpace::admits(const ExponentVector& exps) const {
  for (std::size_t i = 0; i < caps.size(); ++i) {
    if (caps[i] != kNoCap && exps[i] > caps[i]) return false;
  }
  return true;
}

SpacePtr make_space(std::vector<std::string> names, std::vector<int> caps) {
  if (caps.empty()) caps.assign(names.size(), VarSpace::kNoCap);
  if (caps.size() != names.size()) throw InvalidArgument("caps and variable names differ in length");
  if (names.size() > ExponentVector::kMaxVars) throw InvalidArgument("too many variables");
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (caps[i] < VarSpace::kNoCap) throw InvalidArgument("negative cap for " + names[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (names[i] == names[j]) throw InvalidArgument("duplicate variable " + names[i]);
    }
  }
  return std::make_shared<const VarSpace>(VarSpace{std::move(names), std::move(caps)});
}

// ---------------------------------------------------------------------------
// Series

Series::Series() : Series(CoeffRing::integers(), make_space({}), 0) {}

Series::Series(RingPtr ring, SpacePtr space, int precision)
    : ring_(std::move(ring)), space_(std::move(space)), precision_(clamp_precision(*space_, precision)) {}

Series::Series(RingPtr ring, SpacePtr space, int precision, std::vector<Term> sorted_terms, bool)
    : ring_(std::move(ring)),
      space_(std::move(space)),
      precision_(clamp_precision(*space_, precision)),
      terms_(std::move(sorted_terms)) {}

Series Series::from_terms(RingPtr ring, SpacePtr space, int precision, std::vector<Term> terms) {
  const int p = clamp_precision(*space, precision);
  TermMap acc;
  for (auto& t : terms) {
    if (t.exps.size() != space->size()) throw VariableMismatch("exponent vector has wrong length");
    if (t.exps.total_degree() > p || !space->admits(t.exps)) continue;
    acc[t.exps] += ring->coerce(t.coeff);
  }
  return Series(ring, space, p, collect(std::move(acc)), true);
}

Series Series::constant(RingPtr ring, SpacePtr space, int precision, const Coeff& value) {
  std::vector<Term> terms;
  terms.push_back({ExponentVector(space->size()), value});
  return from_terms(std::move(ring), std::move(space), precision, std::move(terms));
}

Series Series::variable(RingPtr ring, SpacePtr space, int precision, const std::string& name) {
  auto idx = space->index_of(name);
  if (!idx) throw VariableMismatch("unknown variable " + name);
  auto one = ring->one();
  return monomial(std::move(ring), space, precision, ExponentVector::unit(space->size(), *idx), one);
}

Series Series::monomial(RingPtr ring, SpacePtr space, int precision, const ExponentVector& exps,
                        const Coeff& value) {
  std::vector<Term> terms;
  terms.push_back({exps, value});
  return from_terms(std::move(ring), std::move(space), precision, std::move(terms));
}

bool Series::is_exact() const { return space_->all_capped() && precision_ >= space_->cap_sum(); }

Coeff Series::coefficient(const ExponentVector& exps) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exps,
                             [](const Term& t, const ExponentVector& e) { return t.exps < e; });
  if (it != terms_.end() && it->exps == exps) return it->coeff;
  return {};
}

Coeff Series::constant_term() const {
  if (!terms_.empty() && terms_.front().exps.is_zero()) return terms_.front().coeff;
  return {};
}

std::optional<int> Series::valuation() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.front().exps.total_degree();
}

int Series::max_exponent(std::size_t index) const {
  int m = 0;
  for (const auto& t : terms_) m = std::max(m, t.exps[index]);
  return m;
}

bool Series::is_unit() const { return ring_->is_unit(constant_term()); }

bool Series::is_nilpotent() const { return ring_->is_nilpotent(constant_term()); }

void Series::check_compatible(const Series& other) const {
  if (!same_ring(ring_, other.ring_)) {
    throw RingMismatch("ring mismatch: " + ring_->describe() + " vs " + other.ring_->describe());
  }
  if (space_ != other.space_ && !(*space_ == *other.space_)) {
    throw VariableMismatch("variable spaces differ");
  }
}

Series Series::operator-() const {
  auto terms = terms_;
  for (auto& t : terms) t.coeff = -t.coeff;
  return Series(ring_, space_, precision_, std::move(terms), true);
}

Series Series::operator+(const Series& other) const {
  check_compatible(other);
  const int p = std::min(precision_, other.precision_);
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto ia = terms_.begin();
  auto ib = other.terms_.begin();
  auto in_range = [p](const auto& it) { return it->exps.total_degree() <= p; };
  while (ia != terms_.end() && in_range(ia) && ib != other.terms_.end() && in_range(ib)) {
    if (ia->exps < ib->exps) {
      out.push_back(*ia++);
    } else if (ib->exps < ia->exps) {
      out.push_back(*ib++);
    } else {
      Coeff s = ia->coeff + ib->coeff;
      if (!s.is_zero()) out.push_back({ia->exps, std::move(s)});
      ++ia;
      ++ib;
    }
  }
  for (; ia != terms_.end() && in_range(ia); ++ia) out.push_back(*ia);
  for (; ib != other.terms_.end() && in_range(ib); ++ib) out.push_back(*ib);
  return Series(ring_, space_, p, std::move(out), true);
}

Series Series::operator-(const Series& other) const { return *this + (-other); }

Series Series::operator*(const Series& other) const {
  check_compatible(other);
  const int p = std::min(precision_, other.precision_);
  TermMap acc;
  for (const auto& ta : terms_) {
    const int da = ta.exps.total_degree();
    if (da > p) break;
    for (const auto& tb : other.terms_) {
      if (da + tb.exps.total_degree() > p) break;
      ExponentVector m = ta.exps + tb.exps;
      if (!space_->admits(m)) continue;
      ring_->add_mul(acc[m], ta.coeff, tb.coeff);
    }
  }
  return Series(ring_, space_, p, collect(std::move(acc)), true);
}

Series Series::scaled(const Coeff& factor) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Coeff c = ring_->mul(t.coeff, factor);
    if (!c.is_zero()) out.push_back({t.exps, std::move(c)});
  }
  return Series(ring_, space_, precision_, std::move(out), true);
}

Series Series::truncated(int precision) const {
  const int p = std::min(precision_, clamp_precision(*space_, precision));
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exps.total_degree() > p) break;
    out.push_back(t);
  }
  return Series(ring_, space_, p, std::move(out), true);
}

Series Series::assume_precision(int precision) const {
  const int p = clamp_precision(*space_, precision);
  if (p >= precision_) return Series(ring_, space_, p, terms_, true);
  return truncated(p);
}

Series Series::pow(int exponent) const {
  if (exponent < 0) throw InvalidArgument("negative exponent; use invert_unit");
  Series result = constant(ring_, space_, precision_, ring_->one());
  Series base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Named operations

Series add(const Series& a, const Series& b) { return a + b; }

Series mul(const Series& a, const Series& b) { return a * b; }

Series invert_unit(const Series& a) {
  const auto& ring = a.ring();
  const Coeff c0 = a.constant_term();
  if (!ring->is_unit(c0)) {
    throw NotAUnit("constant term " + ring->format(c0) + " is not a unit in " + ring->describe());
  }
  const int target = a.precision();
  Series s = Series::constant(ring, a.space(), 0, ring->inverse(c0));
  // Newton iteration s <- s + s(1 - a s), doubling the correct precision.
  int q = 0;
  while (q < target) {
    q = std::min(target, 2 * q + 1);
    Series st = s.assume_precision(q);
    Series err = Series::constant(ring, a.space(), q, ring->one()) - a.truncated(q) * st;
    s = st + st * err;
  }
  return s.assume_precision(target);
}

Series substitute(const Series& target, const std::map<std::string, Series>& assignment) {
  if (assignment.empty()) return target;
  const Series& ref = assignment.begin()->second;
  if (!same_ring(target.ring(), ref.ring())) {
    throw RingMismatch("substitution ring mismatch: " + target.ring()->describe() + " vs " +
                       ref.ring()->describe());
  }
  for (const auto& [name, s] : assignment) {
    if (!same_ring(s.ring(), ref.ring())) throw RingMismatch("substituted series use different rings");
    if (!(*s.space() == *ref.space())) throw VariableMismatch("substituted series use different variables");
    if (!target.space()->index_of(name)) throw VariableMismatch("target has no variable " + name);
  }
  const auto& ring = ref.ring();
  const auto& space = ref.space();
  const VarSpace& tspace = *target.space();
  const std::size_t n = tspace.size();

  std::vector<Series> images;
  images.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = assignment.find(tspace.names[i]);
    if (it != assignment.end()) {
      images.push_back(it->second);
    } else {
      images.push_back(Series::variable(ring, space, Series::kMaxPrecision, tspace.names[i]));
    }
  }

  int p = Series::kMaxPrecision;
  int cap_const = 0;
  std::optional<int> min_val;
  for (std::size_t i = 0; i < n; ++i) {
    p = std::min(p, images[i].precision());
    if (!images[i].constant_term().is_zero()) {
      if (tspace.caps[i] == VarSpace::kNoCap) {
        throw DivergentSubstitution("series with nonzero constant term substituted for unbounded variable " +
                                    tspace.names[i]);
      }
      cap_const += tspace.caps[i];
    } else if (auto v = images[i].valuation()) {
      min_val = min_val ? std::min(*min_val, *v) : *v;
    }
  }
  if (!target.is_exact()) {
    // Unknown target terms have degree > N; at most cap_const of it sits in
    // variables whose images have a constant term.
    const int k = target.precision() + 1 - cap_const;
    if (k <= 0) throw DivergentSubstitution("substitution result has no known terms");
    if (min_val) p = std::min<long>(p, static_cast<long>(k) * *min_val - 1);
  }
  p = std::max(p, 0);
  for (auto& img : images) img = img.truncated(p);

  // Nested Horner evaluation, one variable at a time.
  std::vector<Series::Term> terms = target.terms();
  std::sort(terms.begin(), terms.end(), [n](const Series::Term& a, const Series::Term& b) {
    for (std::size_t i = 0; i < n; ++i) {
      if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i];
    }
    return false;
  });
  std::vector<std::vector<Series>> powers(n);
  auto power = [&](std::size_t var, int e) -> const Series& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(Series::constant(ring, space, p, ring->one()));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[var]);
    return cache[e];
  };
  const Series zero(ring, space, p);

  auto eval = [&](auto&& self, std::size_t lo, std::size_t hi, std::size_t var) -> Series {
    if (var == n) {
      Coeff sum;
      for (std::size_t i = lo; i < hi; ++i) sum += terms[i].coeff;
      return Series::constant(ring, space, p, sum);
    }
    Series acc = zero;
    std::size_t i = lo;
    while (i < hi) {
      const int e = terms[i].exps[var];
      std::size_t j = i;
      while (j < hi && terms[j].exps[var] == e) ++j;
      Series inner = self(self, i, j, var + 1);
      if (e == 0) {
        acc = acc + inner;
      } else if (inner.size() == 1 && inner.terms().front().exps.is_zero()) {
        acc = acc + power(var, e).scaled(inner.terms().front().coeff);
      } else {
        acc = acc + inner * power(var, e);
      }
      i = j;
    }
    return acc;
  };
  return eval(eval, 0, terms.size(), 0);
}

Series compositional_inverse(const Series& a) {
  if (a.space()->size() != 1) throw InvalidArgument("compositional inverse needs a univariate series");
  const auto& ring = a.ring();
  const std::string& var = a.space()->names[0];
  if (!a.constant_term().is_zero() || !(a.coefficient(ExponentVector{1}) == ring->one())) {
    throw BadLowestTerm("series must have the form x + O(x^2)");
  }
  const int n = a.precision();
  Series g = Series::variable(ring, a.space(), n, var);
  for (int k = 2; k <= n; ++k) {
    Series comp = substitute(a.truncated(k), {{var, g.truncated(k)}});
    Coeff c = comp.coefficient(ExponentVector{k});
    if (!c.is_zero()) {
      g = g - Series::monomial(ring, a.space(), n, ExponentVector{k}, c);
    }
  }
  return g;
}

Series graded_component(const Series& a, int degree) {
  if (degree > a.precision()) {
    throw PrecisionTooLow("degree " + std::to_string(degree) + " exceeds precision " +
                          std::to_string(a.precision()));
  }
  std::vector<Series::Term> out;
  for (const auto& t : a.terms()) {
    if (t.exps.total_degree() == degree) out.push_back(t);
  }
  return Series::from_terms(a.ring(), a.space(), a.precision(), std::move(out));
}

Series homogeneous_component(const Series& a, int degree) {
  const auto& ring = *a.ring();
  std::vector<Series::Term> out;
  for (const auto& t : a.terms()) {
    Coeff part;
    for (const auto& [mono, q] : t.coeff.terms()) {
      auto w = ring.weight(mono);
      if (!w) throw UngradedRing("coefficient uses an unweighted generator: " + ring.describe());
      if (t.exps.total_degree() - *w == degree) part += Coeff::monomial(mono, q);
    }
    if (!part.is_zero()) out.push_back({t.exps, std::move(part)});
  }
  return Series::from_terms(a.ring(), a.space(), a.precision(), std::move(out));
}

Series derivative(const Series& a, std::size_t var) {
  if (var >= a.space()->size()) throw VariableMismatch("variable index out of range");
  if (a.precision() == 0 && !a.is_exact()) throw PrecisionTooLow("derivative of a precision-0 series");
  std::vector<Series::Term> out;
  for (const auto& t : a.terms()) {
    const int e = t.exps[var];
    if (e == 0) continue;
    ExponentVector m = t.exps;
    m.set(var, e - 1);
    out.push_back({m, t.coeff.scaled(e)});
  }
  const int p = a.is_exact() ? a.precision() : a.precision() - 1;
  return Series::from_terms(a.ring(), a.space(), p, std::move(out));
}

Series integrate(const Series& a, std::size_t var) {
  if (var >= a.space()->size()) throw VariableMismatch("variable index out of range");
  if (a.ring()->scalars() != Scalars::Rational) throw InvalidArgument("integration needs rational scalars");
  if (a.space()->caps[var] != VarSpace::kNoCap) throw InvalidArgument("cannot integrate in a capped variable");
  std::vector<Series::Term> out;
  for (const auto& t : a.terms()) {
    const int e = t.exps[var];
    ExponentVector m = t.exps;
    m.set(var, e + 1);
    out.push_back({m, t.coeff.scaled(mpq_class(1, e + 1))});
  }
  return Series::from_terms(a.ring(), a.space(), a.precision() + 1, std::move(out));
}

Series change_ring(const Series& a, RingPtr ring) {
  std::vector<Series::Term> out;
  out.reserve(a.size());
  for (const auto& t : a.terms()) out.push_back({t.exps, ring->coerce(t.coeff)});
  return Series::from_terms(std::move(ring), a.space(), a.precision(), std::move(out));
}

Series embed(const Series& a, SpacePtr space) { return embed(a, std::move(space), a.space()->names); }

Series embed(const Series& a, SpacePtr space, const std::vector<std::string>& names) {
  if (names.size() != a.space()->size()) throw VariableMismatch("name list has wrong length");
  std::vector<std::size_t> index;
  for (const auto& name : names) {
    auto idx = space->index_of(name);
    if (!idx) throw VariableMismatch("target space has no variable " + name);
    index.push_back(*idx);
  }
  std::vector<Series::Term> out;
  out.reserve(a.size());
  for (const auto& t : a.terms()) {
    ExponentVector m(space->size());
    for (std::size_t i = 0; i < index.size(); ++i) m.set(index[i], m[index[i]] + t.exps[i]);
    out.push_back({m, t.coeff});
  }
  int p = a.precision();
  // An exact source stays exact when the target's caps bound the same terms.
  if (a.is_exact()) p = Series::kMaxPrecision;
  return Series::from_terms(a.ring(), std::move(space), p, std::move(out));
}

Series divide_by_monomial(const Series& a, const ExponentVector& mono) {
  const int d = mono.total_degree();
  if (a.precision() < d) throw PrecisionTooLow("precision below divisor degree");
  std::vector<Series::Term> out;
  out.reserve(a.size());
  for (const auto& t : a.terms()) {
    if (!mono.divides(t.exps)) throw InvalidArgument("monomial does not divide every term");
    out.push_back({t.exps - mono, t.coeff});
  }
  return Series::from_terms(a.ring(), a.space(), a.precision() - d, std::move(out));
}

SeriesComparison compare(const Series& a, const Series& b) {
  Series diff = a - b;
  SeriesComparison out;
  out.precision = diff.precision();
  out.equal = diff.is_zero();
  if (!out.equal) out.first_difference = diff.terms().front().exps;
  return out;
}

std::string format_monomial(const VarSpace& space, const ExponentVector& exps) {
  std::ostringstream out;
  bool wrote = false;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] == 0) continue;
    if (wrote) out << "*";
    out << space.names[i];
    if (exps[i] > 1) out << "^" << exps[i];
    wrote = true;
  }
  return wrote ? out.str() : "1";
}

}  // namespace cobcalc

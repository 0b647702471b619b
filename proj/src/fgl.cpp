#include "cobcalc/fgl.hpp"

#include <mutex>

#include "cobcalc/errors.hpp"

namespace cobcalc {

namespace {

const SpacePtr& xy_space() {
  static const SpacePtr s = make_space({"x", "y"});
  return s;
}

const SpacePtr& x_space() {
  static const SpacePtr s = make_space({"x"});
  return s;
}

ExponentVector xy(int i, int j) { return ExponentVector{i, j}; }

void check_unitality(const Series& F) {
  std::optional<int> bad;
  auto note = [&](int d) { bad = bad ? std::min(*bad, d) : d; };
  const auto& ring = *F.ring();
  for (const auto& t : F.terms()) {
    const int i = t.exps[0], j = t.exps[1];
    if (i > 0 && j > 0) continue;
    if (i + j == 1) {
      if (!(t.coeff == ring.one())) note(1);
    } else {
      note(i + j);
    }
  }
  if (F.precision() >= 1) {
    if (F.coefficient(xy(1, 0)).is_zero() || F.coefficient(xy(0, 1)).is_zero()) note(1);
  }
  if (bad) throw AxiomViolation("unitality", *bad);
}

void check_commutativity(const Series& F) {
  Series swapped = embed(F, xy_space(), {"y", "x"});
  auto cmp = compare(F, swapped);
  if (!cmp.equal) throw AxiomViolation("commutativity", cmp.first_difference->total_degree());
}

void check_associativity(const Series& F) {
  static const SpacePtr xyz = make_space({"x", "y", "z"});
  const auto& ring = F.ring();
  const int p = F.precision();
  Series x = Series::variable(ring, xyz, p, "x");
  Series y = Series::variable(ring, xyz, p, "y");
  Series z = Series::variable(ring, xyz, p, "z");
  auto f = [&](const Series& a, const Series& b) { return substitute(F, {{"x", a}, {"y", b}}); };
  Series lhs = f(f(x, y), z);
  Series rhs = f(x, f(y, z));
  auto cmp = compare(lhs, rhs);
  if (!cmp.equal) throw AxiomViolation("associativity", cmp.first_difference->total_degree());
}

Series solve_inverse(const Series& F, int p) {
  const auto& ring = F.ring();
  Series iota = -Series::variable(ring, x_space(), p, "x");
  Series x = Series::variable(ring, x_space(), p, "x");
  for (int k = 2; k <= p; ++k) {
    Series val = substitute(F.truncated(k), {{"x", x.truncated(k)}, {"y", iota.truncated(k)}});
    Coeff c = val.coefficient(ExponentVector{k});
    if (!c.is_zero()) iota = iota - Series::monomial(ring, x_space(), p, ExponentVector{k}, c);
  }
  if (!substitute(F, {{"x", x}, {"y", iota}}).is_zero()) {
    throw AxiomViolation("inverse", p);
  }
  return iota;
}

Series polynomial_law(RingPtr ring, const std::map<std::pair<int, int>, Coeff>& a) {
  std::vector<Series::Term> terms{{xy(1, 0), ring->one()}, {xy(0, 1), ring->one()}};
  for (const auto& [ij, c] : a) {
    if (ij.first < 1 || ij.second < 1) throw InvalidArgument("a_ij needs i, j >= 1");
    terms.push_back({xy(ij.first, ij.second), c});
  }
  return Series::from_terms(std::move(ring), xy_space(), Series::kMaxPrecision, std::move(terms));
}

}  // namespace

// ---------------------------------------------------------------------------
// FormalGroupLaw

struct FormalGroupLaw::Cache {
  std::mutex mutex;
  std::map<int, Series> inverses;  // by precision
  std::map<std::pair<int, int>, Series> nseries;  // by (n, precision)
};

FormalGroupLaw::FormalGroupLaw(const Series& F, int precision, std::string name)
    : F_(F), precision_(precision), name_(std::move(name)), cache_(std::make_shared<Cache>()) {
  if (F.space()->size() != 2) throw VariableMismatch("a formal group law needs two variables");
  if (precision < 1) throw PrecisionTooLow("formal group law precision must be >= 1");
  if (F.precision() < precision) {
    throw PrecisionTooLow("series known to degree " + std::to_string(F.precision()) + ", law needs " +
                          std::to_string(precision));
  }
  F_ = embed(F, xy_space());
  Series checked = F_.truncated(precision);
  check_unitality(checked);
  check_commutativity(checked);
  check_associativity(checked);
  cache_->inverses.emplace(precision, solve_inverse(checked, precision));
}

FormalGroupLaw FormalGroupLaw::additive(RingPtr ring, int precision) {
  return FormalGroupLaw(polynomial_law(std::move(ring), {}), precision, "add");
}

FormalGroupLaw FormalGroupLaw::multiplicative(RingPtr ring, int precision) {
  auto m = ring->from_rational(-1);
  return FormalGroupLaw(polynomial_law(std::move(ring), {{{1, 1}, m}}), precision, "mult");
}

FormalGroupLaw FormalGroupLaw::from_coefficients(RingPtr ring, int precision,
                                                 const std::map<std::pair<int, int>, Coeff>& a,
                                                 std::string name) {
  return FormalGroupLaw(polynomial_law(std::move(ring), a), precision, std::move(name));
}

Coeff FormalGroupLaw::coefficient(int i, int j) const {
  if (i + j > F_.precision()) throw PrecisionTooLow("coefficient beyond known precision");
  return F_.coefficient(xy(i, j));
}

bool FormalGroupLaw::is_multiplicative() const {
  auto m = polynomial_law(ring(), {{{1, 1}, ring()->from_rational(-1)}});
  return compare(F_, m).equal;
}

bool FormalGroupLaw::is_additive() const {
  return compare(F_, polynomial_law(ring(), {})).equal;
}

Series FormalGroupLaw::inverse(int precision) const {
  const int p = precision > 0 ? precision : precision_;
  std::lock_guard lock(cache_->mutex);
  auto it = cache_->inverses.lower_bound(p);
  if (it != cache_->inverses.end()) return it->second.truncated(p);
  if (F_.precision() < p) {
    throw PrecisionTooLow("inverse to degree " + std::to_string(p) + " needs a law known that far");
  }
  Series inv = solve_inverse(F_.truncated(p), p);
  cache_->inverses.emplace(p, inv);
  return inv;
}

Series FormalGroupLaw::n_series(int n, int precision) const {
  const int p = precision > 0 ? precision : precision_;
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->nseries.find({n, p});
    if (it != cache_->nseries.end()) return it->second;
  }
  Series x = Series::variable(ring(), x_space(), p, "x");
  Series result(ring(), x_space(), p);
  if (n < 0) {
    result = substitute(n_series(-n, p), {{"x", inverse(p)}});
  } else {
    const Series F = F_.truncated(std::min(F_.precision(), p));
    for (int k = 0; k < n; ++k) result = k == 0 ? x : substitute(F, {{"x", result}, {"y", x}});
  }
  std::lock_guard lock(cache_->mutex);
  cache_->nseries.emplace(std::make_pair(n, p), result);
  return result;
}

Series FormalGroupLaw::apply(const Series& a, const Series& b) const {
  return substitute(F_, {{"x", a}, {"y", b}});
}

FormalGroupLaw fgl_from_series(const Series& F, int precision) { return FormalGroupLaw(F, precision); }

Series formal_sum(const FormalGroupLaw& law, const std::vector<Series>& parts) {
  if (parts.empty()) return Series(law.ring(), make_space({}), 0);
  for (const auto& p : parts) {
    if (!p.constant_term().is_zero()) {
      throw NonNilpotentArgument("formal sum of a series with nonzero constant term");
    }
  }
  Series acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = law.apply(acc, parts[i]);
  return acc;
}

Series logarithm(const FormalGroupLaw& law, int precision) {
  const int p = precision > 0 ? precision : law.precision();
  RingPtr q = law.ring()->rationalized();
  // dF/dy at y = 0 is sum_i a_i1 x^i.
  std::vector<Series::Term> terms;
  for (const auto& t : law.series().terms()) {
    if (t.exps[1] == 1 && t.exps[0] < p) terms.push_back({ExponentVector{t.exps[0]}, q->coerce(t.coeff)});
  }
  Series dy = Series::from_terms(q, x_space(), p - 1, std::move(terms));
  return integrate(invert_unit(dy), 0);
}

// ---------------------------------------------------------------------------
// LazardModel

LazardModel::LazardModel(int degree)
    : degree_(degree),
      log_(CoeffRing::rationals(), x_space(), 0),
      exp_(CoeffRing::rationals(), x_space(), 0) {
  if (degree < 1) throw InvalidArgument("universal law degree must be >= 1");
  const int N = degree;
  RingPtr zb = CoeffRing::lazard_polynomials(N - 1);
  RingPtr qb = zb->rationalized();
  std::vector<Series::Term> terms{{ExponentVector{1}, qb->one()}};
  for (int i = 1; i < N; ++i) terms.push_back({ExponentVector{i + 1}, qb->generator(i - 1)});
  log_ = Series::from_terms(qb, x_space(), N, std::move(terms));
  exp_ = compositional_inverse(log_);
  Series sum = embed(log_, xy_space(), {"x"}) + embed(log_, xy_space(), {"y"});
  Series Fq = substitute(exp_, {{"x", sum}});
  for (const auto& t : Fq.terms()) {
    if (t.coeff.denominator_lcm() != 1) {
      throw IntegralityFailure("universal law coefficient " + qb->format(t.coeff) + " is not integral");
    }
  }
  law_.emplace(change_ring(Fq, zb), N, "univ");
  RingPtr reduced_ring = CoeffRing::quotient(*zb, {}, N);
  Series Fr = change_ring(law_->series(), reduced_ring).assume_precision(Series::kMaxPrecision);
  reduced_.emplace(Fr, N, "univ");
}

LazardModel universal_fgl(int degree) { return LazardModel(degree); }

// ---------------------------------------------------------------------------
// TheoryNormalization

TheoryNormalization::TheoryNormalization(RingPtr ring, std::vector<Coeff> table, std::optional<Coeff> tail)
    : ring_(std::move(ring)), table_(std::move(table)), tail_(std::move(tail)) {}

TheoryNormalization TheoryNormalization::additive(RingPtr ring) {
  auto one = ring->one();
  return TheoryNormalization(std::move(ring), {one}, Coeff{});
}

TheoryNormalization TheoryNormalization::multiplicative(RingPtr ring) {
  auto one = ring->one();
  return TheoryNormalization(std::move(ring), {}, one);
}

TheoryNormalization TheoryNormalization::universal(const LazardModel& model) {
  const auto& ring = model.ring();
  std::vector<Coeff> table{ring->one()};
  for (int n = 1; n < model.degree(); ++n) table.push_back(ring->generator(n - 1).scaled(n + 1));
  return TheoryNormalization(ring, std::move(table), std::nullopt);
}

TheoryNormalization TheoryNormalization::universal_reduced(const LazardModel& model) {
  const auto& ring = model.reduced_law().ring();
  std::vector<Coeff> table{ring->one()};
  for (int n = 1; n < model.degree(); ++n) table.push_back(ring->generator(n - 1).scaled(n + 1));
  return TheoryNormalization(ring, std::move(table), Coeff{});
}

Coeff TheoryNormalization::point_class(int n) const {
  if (n < 0) return {};
  if (n < static_cast<int>(table_.size())) return table_[n];
  if (tail_) return *tail_;
  throw PrecisionTooLow("class of P^" + std::to_string(n) + " is not in the normalization table");
}

int TheoryNormalization::known_up_to() const {
  return tail_ ? Series::kMaxPrecision : static_cast<int>(table_.size()) - 1;
}

bool normalization_consistent(const FormalGroupLaw& law, const TheoryNormalization& norm, int precision) {
  if (!same_ring(law.ring(), norm.ring())) throw RingMismatch("normalization over a different ring");
  Series log = logarithm(law, precision);
  const auto& q = log.ring();
  std::vector<Series::Term> terms;
  for (int n = 0; n < precision; ++n) {
    terms.push_back({ExponentVector{n + 1}, q->coerce(norm.point_class(n)).scaled(mpq_class(1, n + 1))});
  }
  Series s = Series::from_terms(q, log.space(), precision, std::move(terms));
  return compare(s, log).equal;
}

// ---------------------------------------------------------------------------
// ClassifyingMap

ClassifyingMap::ClassifyingMap(const LazardModel& model, const FormalGroupLaw& target)
    : source_(model.ring()), target_(target.ring()), target_q_(target.ring()->rationalized()) {
  const int N = model.degree();
  if (target.precision() < N) {
    throw PrecisionTooLow("target law precision " + std::to_string(target.precision()) +
                          " is below model degree " + std::to_string(N));
  }
  Series log = logarithm(target, N);
  for (int n = 1; n < N; ++n) b_images_.push_back(log.coefficient(ExponentVector{n + 1}));
  for (int i = 1; i < N; ++i) {
    for (int j = 1; i + j <= N; ++j) a_source_[{i, j}] = model.a(i, j);
  }
}

Coeff ClassifyingMap::apply(const Coeff& c) const {
  Coeff acc;
  for (const auto& [mono, q] : c.terms()) {
    if (mono.size() != b_images_.size()) throw RingMismatch("coefficient is not over the model ring");
    Coeff term = target_q_->from_rational(q);
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (mono[i] > 0) term = target_q_->mul(term, target_q_->pow(b_images_[i], mono[i]));
    }
    acc += term;
  }
  return target_->coerce(target_q_->reduce(acc));
}

Series ClassifyingMap::apply(const Series& s) const {
  std::vector<Series::Term> out;
  out.reserve(s.size());
  for (const auto& t : s.terms()) out.push_back({t.exps, apply(t.coeff)});
  return Series::from_terms(target_, s.space(), s.precision(), std::move(out));
}

std::map<std::pair<int, int>, Coeff> ClassifyingMap::a_table() const {
  std::map<std::pair<int, int>, Coeff> out;
  for (const auto& [ij, c] : a_source_) out[ij] = apply(c);
  return out;
}

ClassifyingMap specialize_a(const LazardModel& model, const FormalGroupLaw& target) {
  return ClassifyingMap(model, target);
}

}  // namespace cobcalc

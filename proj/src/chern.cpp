#include "cobcalc/chern.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "cobcalc/errors.hpp"
#include "cobcalc/series_io.hpp"

namespace cobcalc {

namespace {

void require_nilpotent(const Series& a, const char* what) {
  if (!a.constant_term().is_zero()) {
    throw NonNilpotentArgument(std::string(what) + " needs an argument with zero constant term");
  }
}

// Expands prod_k (y_k - t) and solves for t^r.
std::vector<Series> relation_from_duals(const ChernContext& ctx, const std::vector<Series>& duals) {
  const std::size_t r = duals.size();
  std::vector<Series> p{ctx.one()};  // coefficients of t^0..t^k
  for (const auto& y : duals) {
    std::vector<Series> next(p.size() + 1, ctx.zero());
    for (std::size_t i = 0; i < p.size(); ++i) {
      next[i] = next[i] + p[i] * y;
      next[i + 1] = next[i + 1] - p[i];
    }
    p = std::move(next);
  }
  // p[r] = (-1)^r, so t^r = -(-1)^r sum_{i<r} p[i] t^i.
  const Coeff sign = ctx.ring()->from_rational(r % 2 == 0 ? -1 : 1);
  std::vector<Series> d(r, ctx.zero());
  for (std::size_t i = 0; i < r; ++i) d[r - i - 1] = p[i].scaled(sign);
  return d;
}

Series drop_terms(const Series& s, const std::function<bool(const ExponentVector&)>& drop) {
  std::vector<Series::Term> keep;
  for (const auto& t : s.terms()) {
    if (!drop(t.exps)) keep.push_back(t);
  }
  return Series::from_terms(s.ring(), s.space(), s.precision(), std::move(keep));
}

}  // namespace

// ---------------------------------------------------------------------------
// ChernContext

ChernContext::ChernContext(FormalGroupLaw law, std::vector<int> caps, std::vector<std::string> names)
    : law_(std::move(law)) {
  if (names.empty()) {
    for (std::size_t i = 1; i <= caps.size(); ++i) names.push_back("x" + std::to_string(i));
  }
  if (names.size() != caps.size()) throw InvalidArgument("one cap per root required");
  for (int c : caps) {
    if (c < 0) throw InvalidArgument("root caps must be >= 0");
  }
  space_ = make_space(std::move(names), std::move(caps));
  if (law_.series().precision() < space_->cap_sum()) {
    throw PrecisionTooLow("law known to degree " + std::to_string(law_.series().precision()) +
                          " but the context needs " + std::to_string(space_->cap_sum()));
  }
}

Series ChernContext::root(std::size_t k) const {
  return Series::variable(ring(), space_, precision(), space_->names.at(k));
}

std::vector<Series> ChernContext::roots() const {
  std::vector<Series> out;
  for (std::size_t k = 0; k < rank(); ++k) out.push_back(root(k));
  return out;
}

Series ChernContext::zero() const { return Series(ring(), space_, precision()); }

Series ChernContext::one() const { return constant(ring()->one()); }

Series ChernContext::constant(const Coeff& c) const { return Series::constant(ring(), space_, precision(), c); }

Series ChernContext::parse(const std::string& text) const {
  return parse_series(text, ring(), space_, precision());
}

Series euler_tensor(const ChernContext& ctx, const Series& a, const Series& b) {
  require_nilpotent(a, "euler_tensor");
  require_nilpotent(b, "euler_tensor");
  return ctx.law().apply(a, b);
}

Series euler_dual(const ChernContext& ctx, const Series& a) {
  require_nilpotent(a, "euler_dual");
  if (a.is_zero()) return a;
  return substitute(ctx.law().inverse(std::max(1, ctx.precision())), {{"x", a}});
}

std::vector<Series> chern_classes(const ChernContext& ctx, const std::vector<Series>& roots) {
  std::vector<Series> e{ctx.one()};
  for (const auto& x : roots) {
    e.push_back(ctx.zero());
    for (std::size_t j = e.size() - 1; j >= 1; --j) e[j] = e[j] + e[j - 1] * x;
  }
  return e;
}

Series total_chern_class(const ChernContext& ctx, const std::vector<Series>& roots) {
  Series acc = ctx.zero();
  for (const auto& c : chern_classes(ctx, roots)) acc = acc + c;
  return acc;
}

// ---------------------------------------------------------------------------
// ProjectiveBundleContext

ProjectiveBundleContext::ProjectiveBundleContext(ChernContext base) : base_(std::move(base)) {
  std::vector<Series> duals;
  for (const auto& x : base_.roots()) duals.push_back(euler_dual(base_, x));
  d_ = relation_from_duals(base_, duals);
}

ProjectiveBundleContext::ProjectiveBundleContext(ChernContext base, std::vector<Series> d)
    : base_(std::move(base)), d_(std::move(d)) {
  if (d_.size() != base_.rank()) throw InvalidArgument("relation needs one coefficient per root");
}

std::vector<Series> ProjectiveBundleContext::reduce(std::vector<Series> poly) const {
  const std::size_t r = rank();
  for (std::size_t k = poly.size(); k-- > r;) {
    if (poly[k].is_zero()) continue;
    for (std::size_t i = 1; i <= r; ++i) poly[k - i] = poly[k - i] + d_[i - 1] * poly[k];
  }
  poly.resize(r, base_.zero());
  return poly;
}

std::vector<Series> ProjectiveBundleContext::multiply(const std::vector<Series>& a,
                                                      const std::vector<Series>& b) const {
  if (a.empty() || b.empty()) return reduce({});
  std::vector<Series> prod(a.size() + b.size() - 1, base_.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = prod[i + j] + a[i] * b[j];
  }
  return reduce(std::move(prod));
}

std::vector<Series> ProjectiveBundleContext::hyperplane_power(int k) const {
  std::vector<Series> poly(k + 1, base_.zero());
  poly[k] = base_.one();
  return reduce(std::move(poly));
}

ProjectiveBundleContext hyperplane_relation(const ChernContext& ctx) { return ProjectiveBundleContext(ctx); }

// ---------------------------------------------------------------------------
// Coefficients of the fundamental class

std::vector<Series> pb_fundamental_coefficients(const ChernContext& ctx, int count) {
  return pb_fundamental_coefficients(ctx, count, ctx.law().series());
}

std::vector<Series> pb_fundamental_coefficients(const ChernContext& ctx, int count, const Series& F) {
  const std::size_t r = ctx.rank();
  if (count < static_cast<int>(r)) throw InvalidArgument("need at least r coefficients");
  const auto& ring = ctx.ring();
  if (!same_ring(F.ring(), ring)) throw RingMismatch("law series and context use different rings");
  if (F.space()->size() != 2) throw VariableMismatch("law series must be bivariate");

  // Each root contributes an index i_k in 1..cap_k+1; t^j lowers the final
  // index by j, so t-exponents beyond sum(cap_k + 1) - 1 never contribute.
  std::vector<int> reach(r + 1, 0);  // reach[k] = sum over roots >= k of cap + 1
  for (std::size_t k = r; k-- > 0;) reach[k] = reach[k + 1] + ctx.cap(k) + 1;
  const int t_cap = reach[0] - 1;
  int max_cap = 0;
  for (std::size_t k = 0; k < r; ++k) max_cap = std::max(max_cap, ctx.cap(k));
  if (F.precision() < t_cap + 1 + max_cap) {
    throw PrecisionTooLow("coefficient expansion needs the law to degree " + std::to_string(t_cap + 1 + max_cap));
  }

  auto names = ctx.space()->names;
  auto caps = ctx.space()->caps;
  if (ctx.space()->index_of("t")) throw InvalidArgument("root named t clashes with the hyperplane class");
  names.push_back("t");
  caps.push_back(t_cap);
  const SpacePtr big = make_space(names, caps);
  const std::size_t t_index = r;
  const int p = big->cap_sum();

  std::map<int, Series> partial{{0, Series::constant(ring, big, p, ring->one())}};
  for (std::size_t k = 0; k < r; ++k) {
    // H(t, x_k) = 1 / (1 + sum a_ij t^(i-1) x_k^j)
    std::vector<Series::Term> terms{{ExponentVector(r + 1), ring->one()}};
    for (const auto& term : F.terms()) {
      const int i = term.exps[0], j = term.exps[1];
      if (i < 1 || j < 1) continue;
      ExponentVector e(r + 1);
      e.set(t_index, i - 1);
      e.set(k, j);
      terms.push_back({e, term.coeff});
    }
    Series H = invert_unit(Series::from_terms(ring, big, p, std::move(terms)));
    Series x = Series::variable(ring, big, p, names[k]);

    std::vector<Series> factors;  // (-1)^(i-1) H^i x^(i-1), i = 1..cap+1
    Series f = H;
    for (int i = 1; i <= ctx.cap(k) + 1; ++i) {
      factors.push_back(f);
      f = -(f * H * x);
    }
    std::map<int, Series> next;
    for (const auto& [sigma, s] : partial) {
      for (int i = 1; i <= ctx.cap(k) + 1; ++i) {
        const int sig = sigma + i;
        const int t_bound = sig + reach[k + 1] - 1;
        Series prod = drop_terms(s * factors[i - 1], [&](const ExponentVector& e) { return e[t_index] > t_bound; });
        auto it = next.find(sig);
        if (it == next.end()) {
          next.emplace(sig, std::move(prod));
        } else {
          it->second = it->second + prod;
        }
      }
    }
    partial = std::move(next);
  }

  std::vector<std::vector<Series::Term>> buckets(count);
  for (const auto& [sigma, s] : partial) {
    for (const auto& term : s.terms()) {
      const int m = sigma - 1 - term.exps[t_index];
      if (m < 0 || m >= count) continue;
      ExponentVector e(r);
      for (std::size_t k = 0; k < r; ++k) e.set(k, term.exps[k]);
      buckets[m].push_back({e, term.coeff});
    }
  }
  std::vector<Series> u;
  for (auto& b : buckets) u.push_back(Series::from_terms(ring, ctx.space(), ctx.precision(), std::move(b)));
  return u;
}

// ---------------------------------------------------------------------------
// Matrices

CheckResult check_matrix_structure(const Matrix& a) {
  const std::size_t n = a.size();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const bool anti = i + j + 1 == n;
      const auto& e = a[j][i];
      if (anti && !e.is_unit()) {
        return CheckResult::fail("anti-diagonal entry (" + std::to_string(j) + "," + std::to_string(i) +
                                 ") is not a unit: " + to_text(e));
      }
      if (!anti && !e.is_nilpotent()) {
        return CheckResult::fail("entry (" + std::to_string(j) + "," + std::to_string(i) +
                                 ") is not nilpotent: " + to_text(e));
      }
    }
  }
  return CheckResult::pass();
}

Matrix coefficient_matrix(const ChernContext& ctx, const std::vector<Series>& u) {
  const std::size_t r = ctx.rank();
  if (u.size() < 2 * r - 1) throw InvalidArgument("coefficient matrix needs u_0..u_{2r-2}");
  Matrix a(r);
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t i = 0; i < r; ++i) a[j].push_back(u[i + j]);
  }
  auto structure = check_matrix_structure(a);
  if (!structure) throw StructureViolation(structure.witness);
  return a;
}

Matrix coefficient_matrix(const ChernContext& ctx) {
  return coefficient_matrix(ctx, pb_fundamental_coefficients(ctx, static_cast<int>(2 * ctx.rank() - 1)));
}

Matrix invert_matrix(const Matrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  const auto& ring = a[0][0].ring();
  const auto& space = a[0][0].space();
  const int p = a[0][0].precision();
  Matrix m = a;
  Matrix inv(n, std::vector<Series>(n, Series(ring, space, p)));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw InvalidArgument("matrix is not square");
    inv[i][i] = Series::constant(ring, space, p, ring->one());
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && !m[pivot][col].is_unit()) ++pivot;
    if (pivot == n) throw NotInvertible("no unit pivot in column " + std::to_string(col));
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    const Series s = invert_unit(m[col][col]);
    for (std::size_t k = 0; k < n; ++k) {
      m[col][k] = m[col][k] * s;
      inv[col][k] = inv[col][k] * s;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col].is_zero()) continue;
      const Series f = m[row][col];
      for (std::size_t k = 0; k < n; ++k) {
        m[row][k] = m[row][k] - f * m[col][k];
        inv[row][k] = inv[row][k] - f * inv[col][k];
      }
    }
  }
  return inv;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < b[0].size(); ++j) {
      Series acc(a[0][0].ring(), a[0][0].space(), a[0][0].precision());
      for (std::size_t k = 0; k < b.size(); ++k) acc = acc + a[i][k] * b[k][j];
      c[i].push_back(acc);
    }
  }
  return c;
}

CheckResult check_identity(const Matrix& a, const std::string& label) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      const auto& e = a[i][j];
      Series want = i == j ? Series::constant(e.ring(), e.space(), e.precision(), e.ring()->one())
                           : Series(e.ring(), e.space(), e.precision());
      auto res = check_equal(e, want, label + " entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
      if (!res) return res;
    }
  }
  return CheckResult::pass();
}

CheckResult coefficient_recursion_check(const ProjectiveBundleContext& pb, int depth) {
  return coefficient_recursion_check(pb, depth, pb_fundamental_coefficients(pb.base(), static_cast<int>(pb.rank()) + depth));
}

CheckResult coefficient_recursion_check(const ProjectiveBundleContext& pb, int depth, const std::vector<Series>& u) {
  const int r = static_cast<int>(pb.rank());
  if (static_cast<int>(u.size()) < r + depth) throw InvalidArgument("recursion check needs u_0..u_{r+depth-1}");
  for (int i = 0; i < depth; ++i) {
    Series rhs = pb.base().zero();
    for (int j = 0; j < r; ++j) rhs = rhs + pb.d(r - j) * u[j + i];
    auto res = check_equal(u[r + i], rhs,
                           "hyperplane_relation recursion u_" + std::to_string(r + i) + " = sum d_{r-j} u_{j+" +
                               std::to_string(i) + "}");
    if (!res) return res;
  }
  return CheckResult::pass();
}

std::vector<Series> chern_classes_from_relation(const ChernContext& ctx) {
  // E^dual has roots inv(x_k); P(E^dual) is cut out by prod (inv(inv(x_k)) - t).
  std::vector<Series> dual_of_dual;
  for (const auto& x : ctx.roots()) dual_of_dual.push_back(euler_dual(ctx, euler_dual(ctx, x)));
  auto d = relation_from_duals(ctx, dual_of_dual);
  std::vector<Series> c{ctx.one()};
  for (std::size_t m = 1; m <= d.size(); ++m) {
    c.push_back(m % 2 == 1 ? d[m - 1] : -d[m - 1]);
  }
  return c;
}

}  // namespace cobcalc

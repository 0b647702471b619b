#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cobcalc/check.hpp"
#include "cobcalc/fgl.hpp"

namespace cobcalc {

// Chern roots x1..xr with x_k^(m_k + 1) = 0 over a formal group law's ring.
// Elements are exact series in the roots.
class ChernContext {
 public:
  static constexpr int kDefaultCap = 3;

  // The law must be known to at least the sum of the caps.
  ChernContext(FormalGroupLaw law, std::vector<int> caps, std::vector<std::string> names = {});

  const FormalGroupLaw& law() const { return law_; }
  const RingPtr& ring() const { return law_.ring(); }
  const SpacePtr& space() const { return space_; }
  std::size_t rank() const { return space_->size(); }
  int cap(std::size_t k) const { return space_->caps[k]; }
  int precision() const { return space_->cap_sum(); }

  Series root(std::size_t k) const;
  std::vector<Series> roots() const;
  Series zero() const;
  Series one() const;
  Series constant(const Coeff& c) const;
  // Parses an element written in the roots and ring generators.
  Series parse(const std::string& text) const;

 private:
  FormalGroupLaw law_;
  SpacePtr space_;
};

// e(L1 (x) L2) = F(e(L1), e(L2)).
Series euler_tensor(const ChernContext& ctx, const Series& a, const Series& b);
// e(L^dual) = inv_F(e(L)).
Series euler_dual(const ChernContext& ctx, const Series& a);

// c_0..c_n of the bundle with the given root classes (elementary symmetric
// polynomials).
std::vector<Series> chern_classes(const ChernContext& ctx, const std::vector<Series>& roots);
Series total_chern_class(const ChernContext& ctx, const std::vector<Series>& roots);

using Matrix = std::vector<std::vector<Series>>;

// P(E) for the split bundle with the context's roots: t = e(O(1)) with
// t^r = sum_i d_i t^(r-i). Elements are kept as coefficient vectors in
// powers of t.
class ProjectiveBundleContext {
 public:
  // d_i = (-1)^(i+1) s_i(inv_F(x_1), ..., inv_F(x_r)), from prod (inv_F(x_k) - t) = 0.
  explicit ProjectiveBundleContext(ChernContext base);
  // Explicit relation coefficients d_1..d_r.
  ProjectiveBundleContext(ChernContext base, std::vector<Series> d);

  const ChernContext& base() const { return base_; }
  std::size_t rank() const { return base_.rank(); }
  // d_i for 1 <= i <= r.
  const Series& d(std::size_t i) const { return d_.at(i - 1); }
  const std::vector<Series>& relation() const { return d_; }

  // Normal form sum_{i<r} c_i t^i of sum_k poly[k] t^k.
  std::vector<Series> reduce(std::vector<Series> poly) const;
  std::vector<Series> multiply(const std::vector<Series>& a, const std::vector<Series>& b) const;
  // Normal form of t^k.
  std::vector<Series> hyperplane_power(int k) const;

 private:
  ChernContext base_;
  std::vector<Series> d_;
};

ProjectiveBundleContext hyperplane_relation(const ChernContext& ctx);

// u_0..u_{count-1} of the fundamental class of P(E) for the split bundle:
// its image in the P^infinity model is sum_i [P^i] u_i. Every u_i is a
// symmetric series in the roots.
std::vector<Series> pb_fundamental_coefficients(const ChernContext& ctx, int count);
// Same expansion with the a_ij read from `law_series` (a series in x, y over
// the context ring) instead of the context's law. The series is not checked
// against the axioms.
std::vector<Series> pb_fundamental_coefficients(const ChernContext& ctx, int count, const Series& law_series);

// A_{j,i} = u_{i+j}, r x r. Throws StructureViolation unless anti-diagonal
// entries are units and all others are nilpotent.
Matrix coefficient_matrix(const ChernContext& ctx);
Matrix coefficient_matrix(const ChernContext& ctx, const std::vector<Series>& u);
CheckResult check_matrix_structure(const Matrix& a);

// Gauss-Jordan elimination with unit pivots. Throws NotInvertible.
Matrix invert_matrix(const Matrix& a);
Matrix multiply(const Matrix& a, const Matrix& b);
CheckResult check_identity(const Matrix& a, const std::string& label);

// u_{r+i} = sum_{j<r} d_{r-j} u_{j+i} for 0 <= i < depth, with d taken from
// the given projective bundle context.
CheckResult coefficient_recursion_check(const ProjectiveBundleContext& pb, int depth);
// Checks given coefficients u_0..u_{r+depth-1}.
CheckResult coefficient_recursion_check(const ProjectiveBundleContext& pb, int depth, const std::vector<Series>& u);

// c_m(E) recovered from the relation on P(E^dual): c_m = (-1)^(m+1) d_m(E^dual).
std::vector<Series> chern_classes_from_relation(const ChernContext& ctx);

}  // namespace cobcalc

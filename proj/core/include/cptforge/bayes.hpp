#pragma once

#include <cstddef>
#include <optional>

#include "cptforge/dirichlet.hpp"
#include "cptforge/dist.hpp"

namespace cptforge {

// The predicate x -> (x |= p) on the simplex: a convex combination of p's
// values, hence again [0,1]-valued.
class LiftedPredicate {
 public:
  explicit LiftedPredicate(Predicate base);

  std::size_t size() const { return base_.size(); }
  const Predicate& base() const { return base_; }
  double operator()(const SimplexPoint& x) const;

  // Index i when the base is the point predicate 1_{i}.
  std::optional<std::size_t> point_index() const;

 private:
  Predicate base_;
  std::vector<double> weights_;
};

LiftedPredicate lift_predicate(const Predicate& p);

// Dir(alpha) |= lift(p) in closed form: sum_i p(i) alpha_i / sum alpha.
Rational cont_validity_exact(const HyperParams& alpha, const LiftedPredicate& q);

// Integral of q against the density by simplex quadrature.
double cont_validity_quadrature(const SimplexDensity& density, const LiftedPredicate& q,
                                unsigned resolution);

// Closed form for pure Dirichlet densities, quadrature otherwise. Throws
// kUnsupportedDimension when only quadrature applies and n is too large.
double cont_validity(const SimplexDensity& density, const LiftedPredicate& q, unsigned resolution);

// Conditions a pure Dirichlet density on a lifted point predicate 1_{i}.
// The result evaluates x -> x_i d(alpha)(x) / (alpha_i / sum alpha) and is
// tagged as Dir(alpha + e_i).
SimplexDensity cont_condition(const SimplexDensity& density, const LiftedPredicate& q);

// alpha + data, entrywise.
HyperParams batch_update(const HyperParams& alpha, const Multiset& data);

struct ValidityTransfer {
  Rational lhs;        // mle(alpha) |= p
  Rational rhs_exact;  // Dir(alpha) |= lift(p), closed form
  double rhs;          // the same, as returned by cont_validity
  bool holds() const { return lhs == rhs_exact; }
};

ValidityTransfer validity_transfer_check(const HyperParams& alpha, const Predicate& p);

}  // namespace cptforge

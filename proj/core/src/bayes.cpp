#include "cptforge/bayes.hpp"

#include "cptforge/error.hpp"
#include "cptforge/mle.hpp"

namespace cptforge {

LiftedPredicate::LiftedPredicate(Predicate base) : base_(std::move(base)) {
  weights_.reserve(base_.size());
  for (const auto& v : base_.values()) weights_.push_back(to_double(v));
}

double LiftedPredicate::operator()(const SimplexPoint& x) const {
  if (x.size() != size()) throw Error(ErrorKind::kDimensionMismatch, "lifted predicate dimension");
  double v = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) v += weights_[i] * x[i];
  return v;
}

std::optional<std::size_t> LiftedPredicate::point_index() const {
  std::optional<std::size_t> index;
  for (std::size_t i = 0; i < size(); ++i) {
    if (base_[i] == 0) continue;
    if (base_[i] != 1 || index) return std::nullopt;
    index = i;
  }
  return index;
}

LiftedPredicate lift_predicate(const Predicate& p) { return LiftedPredicate(p); }

Rational cont_validity_exact(const HyperParams& alpha, const LiftedPredicate& q) {
  if (alpha.size() != q.size()) throw Error(ErrorKind::kDimensionMismatch, "validity dimension");
  return validity(dirichlet_mean(alpha), q.base());
}

double cont_validity_quadrature(const SimplexDensity& density, const LiftedPredicate& q,
                                unsigned resolution) {
  if (density.size() != q.size()) throw Error(ErrorKind::kDimensionMismatch, "validity dimension");
  return simplex_quadrature([&](const SimplexPoint& x) { return q(x) * density(x); }, density.size(),
                            resolution);
}

double cont_validity(const SimplexDensity& density, const LiftedPredicate& q, unsigned resolution) {
  if (density.is_pure_dirichlet()) return to_double(cont_validity_exact(density.base(), q));
  return cont_validity_quadrature(density, q, resolution);
}

SimplexDensity cont_condition(const SimplexDensity& density, const LiftedPredicate& q) {
  if (!density.is_pure_dirichlet()) {
    throw Error(ErrorKind::kInvalidArgument, "conditioning is implemented for Dirichlet densities only");
  }
  const auto i = q.point_index();
  if (!i) throw Error(ErrorKind::kInvalidArgument, "conditioning needs a lifted point predicate");
  if (density.size() != q.size()) throw Error(ErrorKind::kDimensionMismatch, "conditioning dimension");
  const HyperParams& alpha = density.base();
  std::vector<unsigned> weight(alpha.size(), 0);
  weight[*i] = 1;
  Rational v = cont_validity_exact(alpha, q);
  return SimplexDensity::weighted(alpha, std::move(weight), std::move(v), alpha.incremented(*i));
}

HyperParams batch_update(const HyperParams& alpha, const Multiset& data) {
  if (alpha.size() != data.size()) throw Error(ErrorKind::kDimensionMismatch, "batch update dimension");
  std::vector<Integer> out(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) out[i] = alpha[i] + data[i];
  return HyperParams(std::move(out));
}

ValidityTransfer validity_transfer_check(const HyperParams& alpha, const Predicate& p) {
  const LiftedPredicate q(p);
  ValidityTransfer result{validity(mle(alpha.as_multiset()), p), cont_validity_exact(alpha, q), 0.0};
  result.rhs = cont_validity(SimplexDensity::dirichlet(alpha), q, 2);
  return result;
}

}  // namespace cptforge

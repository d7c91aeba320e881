#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cptforge/dist.hpp"
#include "cptforge/finset.hpp"
#include "cptforge/numeric.hpp"
#include "cptforge/random.hpp"

namespace cptforge {

// Dirichlet hyperparameters: strictly positive integers.
class HyperParams {
 public:
  explicit HyperParams(std::vector<Integer> alphas);
  HyperParams(std::initializer_list<long> alphas);
  static HyperParams from_multiset(const Multiset& m);
  static HyperParams ones(std::size_t n);

  std::size_t size() const { return alphas_.size(); }
  const Integer& operator[](std::size_t i) const { return alphas_.at(i); }
  std::span<const Integer> alphas() const { return alphas_; }
  const Integer& total() const { return total_; }
  Multiset as_multiset() const { return Multiset(alphas_); }

  // alpha with entry i increased by one.
  HyperParams incremented(std::size_t i) const;

  friend bool operator==(const HyperParams& a, const HyperParams& b) { return a.alphas_ == b.alphas_; }

 private:
  std::vector<Integer> alphas_;
  Integer total_;
};

std::string to_string(const HyperParams& alpha);

// A point of the open simplex. The single-point simplex over n = 1 is the
// one exception: its only point is (1).
class SimplexPoint {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit SimplexPoint(std::vector<double> coords);

  std::size_t size() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }

 private:
  std::vector<double> coords_;
};

// Gamma on positive naturals: (k - 1)!.
Integer gamma_nat(unsigned long k);

// Gamma(sum alpha) / prod Gamma(alpha_i), exactly.
Rational dirichlet_normalizer(const HyperParams& alpha);

// Evaluator for d(alpha) with the normaliser converted to binary64 once.
class DirichletPdf {
 public:
  explicit DirichletPdf(const HyperParams& alpha);

  std::size_t size() const { return exponents_.size(); }
  double operator()(const SimplexPoint& x) const;

 private:
  std::vector<double> exponents_;
  double scale_ = 0.0;
  double log_scale_ = 0.0;
  bool log_space_ = false;
};

double dirichlet_pdf(const HyperParams& alpha, const SimplexPoint& x);

// A density on the open simplex: x -> prod_i x_i^k_i * d(alpha)(x) / z.
// With no weight this is the Dirichlet density itself. `identified_as`
// records a Dirichlet the density is known to coincide with.
class SimplexDensity {
 public:
  static SimplexDensity dirichlet(HyperParams alpha);
  static SimplexDensity weighted(HyperParams base, std::vector<unsigned> exponents,
                                 Rational normalizer,
                                 std::optional<HyperParams> identified_as = std::nullopt);

  std::size_t size() const { return base_.size(); }
  double operator()(const SimplexPoint& x) const;

  const HyperParams& base() const { return base_; }
  std::span<const unsigned> weight_exponents() const { return exponents_; }
  const Rational& normalizer() const { return normalizer_; }
  bool is_pure_dirichlet() const { return exponents_.empty(); }
  // The Dirichlet hyperparameters this density equals, when known.
  std::optional<HyperParams> as_dirichlet() const;
  std::string description() const;

 private:
  SimplexDensity(HyperParams base, std::vector<unsigned> exponents, Rational normalizer,
                 std::optional<HyperParams> identified_as);

  HyperParams base_;
  DirichletPdf pdf_;
  std::vector<unsigned> exponents_;
  Rational normalizer_;
  std::optional<HyperParams> identified_as_;
};

using SimplexFunction = std::function<double(const SimplexPoint&)>;

constexpr std::size_t kMaxQuadratureDimension = 4;

// Centroid-rule integral over the simplex of dimension n - 1, with respect
// to Lebesgue measure on the first n - 1 coordinates. The simplex is cut
// into resolution^(n-1) congruent sub-simplices (Kuhn triangulation of the
// cumulative-sum coordinates); each contributes f(centroid) * volume.
double simplex_quadrature(const SimplexFunction& f, std::size_t n, unsigned resolution);

// Midpoint rule on (a, b) with `cells` equal cells.
double midpoint_rule(const std::function<double(double)>& f, double a, double b, unsigned cells);

// Gamma(alpha_i) variates as sums of alpha_i exponentials, normalised.
SimplexPoint dirichlet_sample(const HyperParams& alpha, Rng& rng);

Dist dirichlet_mean(const HyperParams& alpha);

// Row-major n x n covariance matrix of Dir(alpha).
std::vector<Rational> dirichlet_covariance(const HyperParams& alpha);

// Merges hyperparameters along a surjection.
HyperParams aggregate_params(const FinMap& h, const HyperParams& alpha);

// The image of a simplex point under h: coordinates summed per fibre.
SimplexPoint simplex_map(const FinMap& h, const SimplexPoint& x);

struct OneSumCheck {
  double lhs;
  double rhs;
};

// lhs = d(alpha_0 + alpha_1, alpha_2, ...)(x), rhs = integral over y in
// (0, x_0) of d(alpha)(y, x_0 - y, x_1, ...), by the midpoint rule.
OneSumCheck one_sum_check(const HyperParams& alpha, const SimplexPoint& x, unsigned resolution);

}  // namespace cptforge

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "cptforge/finset.hpp"
#include "cptforge/numeric.hpp"

namespace cptforge {

// Probability vector over {0..n-1} with exact rational entries summing to 1.
class Dist {
 public:
  explicit Dist(std::vector<Rational> probs);
  static Dist point(std::size_t n, std::size_t i);
  static Dist uniform(std::size_t n);

  std::size_t size() const { return probs_.size(); }
  const Rational& operator[](std::size_t i) const { return probs_.at(i); }
  std::span<const Rational> probs() const { return probs_; }
  bool is_full_support() const;

  friend bool operator==(const Dist& a, const Dist& b) { return a.probs_ == b.probs_; }

 private:
  std::vector<Rational> probs_;
};

// Row-stochastic matrix: one distribution over {0..m-1} per input index.
class Channel {
 public:
  explicit Channel(std::vector<Dist> rows);
  static Channel identity(std::size_t n);
  static Channel deterministic(const FinMap& h);

  std::size_t domain_size() const { return rows_.size(); }
  std::size_t codomain_size() const { return rows_.front().size(); }
  const Dist& operator()(std::size_t x) const { return rows_.at(x); }
  std::span<const Dist> rows() const { return rows_; }

  friend bool operator==(const Channel& a, const Channel& b) { return a.rows_ == b.rows_; }

 private:
  std::vector<Dist> rows_;
};

// Fuzzy predicate: values in [0, 1].
class Predicate {
 public:
  explicit Predicate(std::vector<Rational> values);
  static Predicate point(std::size_t n, std::size_t i);
  static Predicate truth(std::size_t n);

  std::size_t size() const { return values_.size(); }
  const Rational& operator[](std::size_t i) const { return values_.at(i); }
  std::span<const Rational> values() const { return values_; }

  // Pointwise conjunction p & q.
  Predicate operator&(const Predicate& other) const;

 private:
  std::vector<Rational> values_;
};

// Joint distribution over the row-major product n x m.
class JointDist {
 public:
  JointDist(std::size_t rows, std::size_t cols, std::vector<Rational> probs);
  static JointDist from_dist(std::size_t rows, std::size_t cols, const Dist& flat);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Rational& at(std::size_t i, std::size_t j) const;
  const Dist& flat() const { return flat_; }

  friend bool operator==(const JointDist& a, const JointDist& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.flat_ == b.flat_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  Dist flat_;
};

// Marginalisation along h.
Dist dist_map(const FinMap& h, const Dist& omega);

// c >> omega.
Dist state_transform(const Channel& c, const Dist& omega);

// (d . c)(x) = d >> c(x).
Channel channel_compose(const Channel& d, const Channel& c);

struct Disintegration {
  Dist first;
  Channel channel;
};

// Splits a joint into its first marginal and the conditional channel. Throws
// kNotFullSupport when some first-marginal entry is zero.
Disintegration disintegrate(const JointDist& omega);

// <id, c> >> omega.
JointDist pair_graph(const Channel& c, const Dist& omega);

JointDist dist_tensor(const Dist& omega, const Dist& rho);

Rational validity(const Dist& omega, const Predicate& p);

// Throws kZeroValidity when omega |= p is zero.
Dist condition(const Dist& omega, const Predicate& p);

}  // namespace cptforge

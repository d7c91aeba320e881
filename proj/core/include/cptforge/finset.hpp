#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cptforge/numeric.hpp"

namespace cptforge {

// A function h : n -> m between finite index sets {0..n-1} and {0..m-1}.
class FinMap {
 public:
  FinMap(std::vector<std::size_t> targets, std::size_t codomain_size);

  static FinMap identity(std::size_t n);
  static FinMap constant(std::size_t n, std::size_t m = 1, std::size_t value = 0);
  // Projections out of the row-major product n x m.
  static FinMap first_projection(std::size_t n, std::size_t m);
  static FinMap second_projection(std::size_t n, std::size_t m);

  std::size_t domain_size() const { return targets_.size(); }
  std::size_t codomain_size() const { return codomain_size_; }
  std::size_t operator()(std::size_t x) const { return targets_.at(x); }
  std::span<const std::size_t> targets() const { return targets_; }
  bool is_surjective() const;

  // (g.after(h))(x) = g(h(x)).
  FinMap after(const FinMap& h) const;

  friend bool operator==(const FinMap&, const FinMap&) = default;

 private:
  std::vector<std::size_t> targets_;
  std::size_t codomain_size_;
};

// Count vector over {0..n-1}.
class Multiset {
 public:
  explicit Multiset(std::vector<Integer> counts);
  Multiset(std::initializer_list<long> counts);
  static Multiset zeros(std::size_t n);

  std::size_t size() const { return counts_.size(); }
  const Integer& operator[](std::size_t i) const { return counts_.at(i); }
  std::span<const Integer> counts() const { return counts_; }
  const Integer& total() const { return total_; }

  bool is_nonempty() const { return total_ > 0; }
  bool is_full_support() const;

  friend bool operator==(const Multiset& a, const Multiset& b) { return a.counts_ == b.counts_; }

 private:
  std::vector<Integer> counts_;
  Integer total_;
};

// n x m count table, stored row-major: (i, j) <-> i*m + j.
class JointMultiset {
 public:
  JointMultiset(std::size_t rows, std::size_t cols, std::vector<Integer> counts);
  static JointMultiset from_multiset(std::size_t rows, std::size_t cols, const Multiset& flat);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Integer& at(std::size_t i, std::size_t j) const;
  const Multiset& flat() const { return flat_; }
  Integer row_total(std::size_t i) const;
  bool is_row_positive() const;

  friend bool operator==(const JointMultiset&, const JointMultiset&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  Multiset flat_;
};

// Pushes counts forward along h: result[y] = sum of phi[x] over h(x) = y.
Multiset ms_map(const FinMap& h, const Multiset& phi);

// The same action restricted to full-support multisets and surjective maps.
Multiset ms_map_full(const FinMap& h, const Multiset& phi);

// Slices a row-positive table into its rows. Throws kZeroRow naming the
// first empty row.
std::vector<Multiset> row_extract(const JointMultiset& phi);

JointMultiset ms_tensor(const Multiset& phi, const Multiset& psi);

}  // namespace cptforge

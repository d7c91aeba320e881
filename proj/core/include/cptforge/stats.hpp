#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cptforge {

// Row-per-draw sample store with two-pass moment estimates and their
// standard errors. Sums run in draw order, so results are reproducible.
class SampleMatrix {
 public:
  explicit SampleMatrix(std::size_t dims) : dims_(dims) {}

  void add(std::span<const double> row);

  std::size_t dims() const { return dims_; }
  std::size_t count() const { return dims_ == 0 ? 0 : data_.size() / dims_; }
  double at(std::size_t draw, std::size_t dim) const { return data_[draw * dims_ + dim]; }

  double mean(std::size_t i) const;
  // Population-normalised (1/N) second moments.
  double variance(std::size_t i) const { return covariance(i, i); }
  double covariance(std::size_t i, std::size_t j) const;

  double mean_standard_error(std::size_t i) const;
  // Standard error of covariance(i, j), from the fourth-order moment
  // E[(x_i - m_i)^2 (x_j - m_j)^2].
  double covariance_standard_error(std::size_t i, std::size_t j) const;
  double variance_standard_error(std::size_t i) const { return covariance_standard_error(i, i); }

 private:
  std::size_t dims_;
  std::vector<double> data_;
};

// Two-sample agreement on a fixed panel of test functions (coordinates,
// squares, pairwise products) plus per-coordinate histograms on [0, 1].
// Each entry is a two-sample z statistic; the maxima are reported.
struct SampleComparison {
  double max_panel_z = 0.0;
  double max_histogram_z = 0.0;
  std::size_t panel_size = 0;
  std::size_t histogram_cells = 0;
  double max_z() const { return max_panel_z > max_histogram_z ? max_panel_z : max_histogram_z; }
};

SampleComparison compare_samples(const SampleMatrix& a, const SampleMatrix& b, unsigned bins = 10);

// |observed - expected| / standard_error, with a zero error mapped to 0 for
// exact agreement and to +inf otherwise.
double z_score(double observed, double expected, double standard_error);

}  // namespace cptforge

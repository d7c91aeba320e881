#include "cptforge/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cptforge/error.hpp"
#include "cptforge/numeric.hpp"

namespace cptforge {

void SampleMatrix::add(std::span<const double> row) {
  if (row.size() != dims_) throw Error(ErrorKind::kDimensionMismatch, "sample row has wrong width");
  data_.insert(data_.end(), row.begin(), row.end());
}

double SampleMatrix::mean(std::size_t i) const {
  CompensatedSum s;
  for (std::size_t k = 0; k < count(); ++k) s.add(at(k, i));
  return s.value() / static_cast<double>(count());
}

double SampleMatrix::covariance(std::size_t i, std::size_t j) const {
  const double mi = mean(i);
  const double mj = mean(j);
  CompensatedSum s;
  for (std::size_t k = 0; k < count(); ++k) s.add((at(k, i) - mi) * (at(k, j) - mj));
  return s.value() / static_cast<double>(count());
}

double SampleMatrix::mean_standard_error(std::size_t i) const {
  return std::sqrt(variance(i) / static_cast<double>(count()));
}

double SampleMatrix::covariance_standard_error(std::size_t i, std::size_t j) const {
  const double mi = mean(i);
  const double mj = mean(j);
  const double c = covariance(i, j);
  CompensatedSum s;
  for (std::size_t k = 0; k < count(); ++k) {
    const double di = at(k, i) - mi;
    const double dj = at(k, j) - mj;
    s.add(di * di * dj * dj);
  }
  const double fourth = s.value() / static_cast<double>(count());
  return std::sqrt(std::max(fourth - c * c, 0.0) / static_cast<double>(count()));
}

namespace {

struct MeanAndError {
  double mean;
  double standard_error;
};

template <typename F>
MeanAndError summarize(const SampleMatrix& m, F&& f) {
  const auto n = static_cast<double>(m.count());
  CompensatedSum s;
  for (std::size_t k = 0; k < m.count(); ++k) s.add(f(m, k));
  const double mean = s.value() / n;
  CompensatedSum d;
  for (std::size_t k = 0; k < m.count(); ++k) {
    const double v = f(m, k) - mean;
    d.add(v * v);
  }
  return {mean, std::sqrt(d.value() / n / n)};
}

template <typename F>
double two_sample_z(const SampleMatrix& a, const SampleMatrix& b, F&& f) {
  const MeanAndError x = summarize(a, f);
  const MeanAndError y = summarize(b, f);
  return z_score(x.mean, y.mean, std::hypot(x.standard_error, y.standard_error));
}

}  // namespace

SampleComparison compare_samples(const SampleMatrix& a, const SampleMatrix& b, unsigned bins) {
  if (a.dims() != b.dims()) throw Error(ErrorKind::kDimensionMismatch, "compared samples differ in width");
  if (a.count() == 0 || b.count() == 0) throw Error(ErrorKind::kInvalidArgument, "comparing empty samples");
  SampleComparison out;
  const std::size_t d = a.dims();
  auto record_panel = [&](double z) {
    out.max_panel_z = std::max(out.max_panel_z, z);
    ++out.panel_size;
  };
  for (std::size_t i = 0; i < d; ++i) {
    record_panel(two_sample_z(a, b, [i](const SampleMatrix& m, std::size_t k) { return m.at(k, i); }));
    record_panel(two_sample_z(a, b, [i](const SampleMatrix& m, std::size_t k) { return m.at(k, i) * m.at(k, i); }));
    for (std::size_t j = i + 1; j < d; ++j) {
      record_panel(
          two_sample_z(a, b, [i, j](const SampleMatrix& m, std::size_t k) { return m.at(k, i) * m.at(k, j); }));
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (unsigned cell = 0; cell < bins; ++cell) {
      const double lo = static_cast<double>(cell) / bins;
      const double hi = static_cast<double>(cell + 1) / bins;
      const bool last = cell + 1 == bins;
      auto indicator = [i, lo, hi, last](const SampleMatrix& m, std::size_t k) {
        const double v = m.at(k, i);
        return (v >= lo && (v < hi || last)) ? 1.0 : 0.0;
      };
      out.max_histogram_z = std::max(out.max_histogram_z, two_sample_z(a, b, indicator));
      ++out.histogram_cells;
    }
  }
  return out;
}

double z_score(double observed, double expected, double standard_error) {
  const double diff = std::abs(observed - expected);
  if (standard_error > 0.0) return diff / standard_error;
  return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace cptforge

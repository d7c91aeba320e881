#pragma once

// Brute-force reference implementations used to cross-check the library.
// They work on plain vectors of GMP numbers and doubles and share no code
// with cptforge beyond the number types.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Z = mpz_class;

inline std::vector<Q> normalize(const std::vector<Z>& counts) {
  Z total = 0;
  for (const auto& c : counts) total += c;
  std::vector<Q> out;
  for (const auto& c : counts) {
    Q q(c, total);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

template <class T>
std::vector<T> push(const std::vector<std::size_t>& targets, std::size_t m, const std::vector<T>& v) {
  std::vector<T> out(m, T(0));
  for (std::size_t x = 0; x < targets.size(); ++x) out[targets[x]] += v[x];
  return out;
}

// Conditional rows of a joint table given its first coordinate, cell by cell.
inline std::vector<std::vector<Q>> conditional_rows(std::size_t rows, std::size_t cols, const std::vector<Q>& joint) {
  std::vector<std::vector<Q>> out(rows, std::vector<Q>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    Q marginal = 0;
    for (std::size_t j = 0; j < cols; ++j) marginal += joint[i * cols + j];
    for (std::size_t j = 0; j < cols; ++j) out[i][j] = joint[i * cols + j] / marginal;
  }
  return out;
}

inline Q power_likelihood(const std::vector<Z>& counts, const std::vector<Q>& w) {
  Q out = 1;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    for (Z k = 0; k < counts[i]; ++k) out *= w[i];
  }
  return out;
}

inline double log_gamma(double x) { return std::lgamma(x); }

inline double dirichlet_density(const std::vector<long>& alpha, const std::vector<double>& x) {
  double total = 0.0, log_value = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    total += static_cast<double>(alpha[i]);
    log_value += (static_cast<double>(alpha[i]) - 1.0) * std::log(x[i]) - log_gamma(static_cast<double>(alpha[i]));
  }
  return std::exp(log_value + log_gamma(total));
}

inline double dirichlet_variance(const std::vector<long>& alpha, std::size_t i) {
  double a0 = 0.0;
  for (long a : alpha) a0 += static_cast<double>(a);
  const double ai = static_cast<double>(alpha[i]);
  return ai * (a0 - ai) / (a0 * a0 * (a0 + 1.0));
}

// Product midpoint rule for d(alpha) on the 2-simplex through the map
// (s, t) -> (s, (1 - s) t), whose Jacobian is 1 - s.
inline double integrate_2simplex(const std::vector<long>& alpha, unsigned cells) {
  const double h = 1.0 / cells;
  double total = 0.0;
  for (unsigned a = 0; a < cells; ++a) {
    const double s = (a + 0.5) * h;
    for (unsigned b = 0; b < cells; ++b) {
      const double t = (b + 0.5) * h;
      const double x0 = s, x1 = (1.0 - s) * t, x2 = 1.0 - x0 - x1;
      total += dirichlet_density(alpha, {x0, x1, x2}) * (1.0 - s) * h * h;
    }
  }
  return total;
}

// A tiny deterministic generator for test inputs, independent of cptforge::Rng.
class Lcg {
 public:
  explicit Lcg(std::uint64_t seed) : state_(seed * 6364136223846793005ULL + 1442695040888963407ULL) {}
  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    std::uint64_t x = state_;
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    return x;
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  long between(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::size_t>(hi - lo + 1))); }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace oracle

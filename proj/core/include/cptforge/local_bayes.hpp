#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cptforge/dirichlet.hpp"

namespace cptforge {

// Shape of the joint table behind a split; cells are row-major.
struct GridShape {
  std::size_t rows = 2;
  std::size_t cols = 3;
  std::size_t cells() const { return rows * cols; }
};

// A joint point x over rows x cols, re-expressed as its row totals y and
// the within-row proportions of every row (u, v for the 2 x 3 case).
struct SplitCoords {
  SimplexPoint totals;
  std::vector<SimplexPoint> rows;

  const SimplexPoint& y() const { return totals; }
  const SimplexPoint& u() const { return rows.at(0); }
  const SimplexPoint& v() const { return rows.at(1); }
};

SplitCoords split(const SimplexPoint& x, GridShape shape = {});
SimplexPoint unsplit(const SplitCoords& coords);

struct FactorizationCheck {
  double lhs;          // d(alpha)(x)
  double rhs_jacobian; // d(beta)(y) / prod y_i^(cols-1) * prod_i d(alpha_i-)(row_i)
  double rhs_shifted;  // prefactor * d(beta - (cols-1))(y) * prod_i d(alpha_i-)(row_i)
  Rational shifted_prefactor;
};

// Row sums beta_i of the hyperparameters.
HyperParams row_totals(const HyperParams& alpha, GridShape shape = {});
HyperParams row_params(const HyperParams& alpha, std::size_t row, GridShape shape = {});

// Evaluates both factorizations of the joint Dirichlet density through the
// split. Each row total sums cols positive entries, so beta_i - (cols - 1)
// is always a valid Dirichlet parameter.
FactorizationCheck pdf_factorization_check(const HyperParams& alpha, const SimplexPoint& x,
                                           GridShape shape = {});

// The constant displayed alongside the shifted local factorization, for an
// increment in row `row` of a 2 x 3 table:
//   B(B-1)(B-2)(B-3) / (b_r (b_r - 1)(b_o - 1)(b_o - 2)),  B = b_r + b_o.
Rational stated_local_constant(const HyperParams& alpha, std::size_t row);

struct CandidateReport {
  std::string name;
  HyperParams totals;
  std::vector<HyperParams> rows{};
  Rational constant;  // multiplier the candidate carries
  std::vector<double> expected_mean{};
  std::vector<double> expected_variance{};
  double max_mean_z = 0.0;
  double max_variance_z = 0.0;
  double mass_ratio = 0.0;  // pushforward mass / (constant * candidate mass)
  bool matches = false;
};

struct LocalUpdateAudit {
  HyperParams prior;
  std::size_t cell_row = 0;
  std::size_t cell_col = 0;
  HyperParams updated;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double z_threshold = 4.0;

  double pushforward_mass = 0.0;
  // Components in order y_0..y_{r-1}, then each row's proportions.
  std::vector<std::string> component_names{};
  std::vector<double> sample_mean{};
  std::vector<double> sample_variance{};
  double max_independence_z = 0.0;

  std::vector<CandidateReport> candidates{};
  Rational stated_constant{};
  std::optional<std::string> matching_candidate{};
  bool constant_tension = false;

  std::string to_text() const;
};

constexpr std::size_t kMinAuditSamples = 10000;

// Samples Dir(alpha + e_(row,col)), pushes the draws through split, and
// compares their moments with two local parameterisations: the shifted one
// (beta - 2 with the row total incremented, scaled by the stated constant)
// and the direct one (beta with the row total incremented).
LocalUpdateAudit local_update_audit(const HyperParams& alpha, std::size_t row, std::size_t col,
                                    std::size_t samples, std::uint64_t seed);

}  // namespace cptforge

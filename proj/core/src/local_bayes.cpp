#include "cptforge/local_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "cptforge/error.hpp"
#include "cptforge/stats.hpp"

namespace cptforge {

namespace {

void require_shape(std::size_t n, GridShape shape) {
  if (shape.rows < 1 || shape.cols < 1 || n != shape.cells()) {
    throw Error(ErrorKind::kDimensionMismatch, "point does not match the table shape");
  }
}

HyperParams shifted(const HyperParams& alpha, long by) {
  std::vector<Integer> out(alpha.alphas().begin(), alpha.alphas().end());
  for (auto& a : out) a -= by;
  return HyperParams(std::move(out));
}

// Moments of the concatenated product Dir(totals) x Dir(row_0) x ...
void product_moments(const HyperParams& totals, const std::vector<HyperParams>& rows,
                     std::vector<double>& mean, std::vector<double>& variance) {
  auto append = [&](const HyperParams& a) {
    const Dist m = dirichlet_mean(a);
    const auto cov = dirichlet_covariance(a);
    for (std::size_t i = 0; i < a.size(); ++i) {
      mean.push_back(to_double(m[i]));
      variance.push_back(to_double(cov[i * a.size() + i]));
    }
  };
  append(totals);
  for (const auto& r : rows) append(r);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

SplitCoords split(const SimplexPoint& x, GridShape shape) {
  require_shape(x.size(), shape);
  std::vector<double> totals(shape.rows, 0.0);
  for (std::size_t i = 0; i < shape.rows; ++i) {
    for (std::size_t j = 0; j < shape.cols; ++j) totals[i] += x[i * shape.cols + j];
  }
  std::vector<SimplexPoint> rows;
  rows.reserve(shape.rows);
  for (std::size_t i = 0; i < shape.rows; ++i) {
    std::vector<double> r(shape.cols);
    for (std::size_t j = 0; j < shape.cols; ++j) r[j] = x[i * shape.cols + j] / totals[i];
    rows.emplace_back(std::move(r));
  }
  return {SimplexPoint(std::move(totals)), std::move(rows)};
}

SimplexPoint unsplit(const SplitCoords& coords) {
  if (coords.rows.size() != coords.totals.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "split coordinates have the wrong number of rows");
  }
  std::vector<double> x;
  for (std::size_t i = 0; i < coords.rows.size(); ++i) {
    for (double p : coords.rows[i].coords()) x.push_back(coords.totals[i] * p);
  }
  return SimplexPoint(std::move(x));
}

HyperParams row_totals(const HyperParams& alpha, GridShape shape) {
  require_shape(alpha.size(), shape);
  std::vector<Integer> beta(shape.rows, 0);
  for (std::size_t k = 0; k < alpha.size(); ++k) beta[k / shape.cols] += alpha[k];
  return HyperParams(std::move(beta));
}

HyperParams row_params(const HyperParams& alpha, std::size_t row, GridShape shape) {
  require_shape(alpha.size(), shape);
  if (row >= shape.rows) throw Error(ErrorKind::kInvalidArgument, "row index out of range");
  std::vector<Integer> r(alpha.alphas().begin() + row * shape.cols,
                         alpha.alphas().begin() + (row + 1) * shape.cols);
  return HyperParams(std::move(r));
}

FactorizationCheck pdf_factorization_check(const HyperParams& alpha, const SimplexPoint& x,
                                           GridShape shape) {
  require_shape(alpha.size(), shape);
  require_shape(x.size(), shape);
  const HyperParams beta = row_totals(alpha, shape);
  const long shift = static_cast<long>(shape.cols) - 1;
  for (const auto& b : beta.alphas()) {
    if (b <= shift) {
      throw Error(ErrorKind::kInvalidArgument, "shifted form needs every row total >= number of columns");
    }
  }
  const SplitCoords s = split(x, shape);

  double locals = 1.0;
  for (std::size_t i = 0; i < shape.rows; ++i) locals *= dirichlet_pdf(row_params(alpha, i, shape), s.rows[i]);

  double jacobian = 1.0;
  for (std::size_t i = 0; i < shape.rows; ++i) jacobian *= std::pow(s.totals[i], static_cast<double>(shift));

  // Gamma(B)/Gamma(B - rows*shift) * prod_i Gamma(b_i - shift)/Gamma(b_i).
  const unsigned long total = beta.total().get_ui();
  Rational prefactor(gamma_nat(total), gamma_nat(total - shape.rows * shift));
  for (const auto& b : beta.alphas()) {
    prefactor *= Rational(gamma_nat(b.get_ui() - shift), gamma_nat(b.get_ui()));
  }
  prefactor.canonicalize();

  FactorizationCheck out{};
  out.lhs = dirichlet_pdf(alpha, x);
  out.rhs_jacobian = dirichlet_pdf(beta, s.totals) / jacobian * locals;
  out.rhs_shifted = to_double(prefactor) * dirichlet_pdf(shifted(beta, shift), s.totals) * locals;
  out.shifted_prefactor = prefactor;
  return out;
}

Rational stated_local_constant(const HyperParams& alpha, std::size_t row) {
  const HyperParams beta = row_totals(alpha, GridShape{2, 3});
  if (row > 1) throw Error(ErrorKind::kInvalidArgument, "row index out of range");
  const Rational br(beta[row]);
  const Rational bo(beta[1 - row]);
  const Rational b = br + bo;
  Rational c = b * (b - 1) * (b - 2) * (b - 3) / (br * (br - 1) * (bo - 1) * (bo - 2));
  c.canonicalize();
  return c;
}

std::string LocalUpdateAudit::to_text() const {
  std::ostringstream os;
  os << "audit: local-update\n";
  os << "prior: " << to_string(prior) << "\n";
  os << "increment_cell: (" << cell_row << "," << cell_col << ")\n";
  os << "updated: " << to_string(updated) << "\n";
  os << "samples: " << samples << "\n";
  os << "seed: " << seed << "\n";
  os << "z_threshold: " << fmt(z_threshold) << "\n";
  os << "pushforward_mass: " << fmt(pushforward_mass) << "\n";
  for (std::size_t k = 0; k < component_names.size(); ++k) {
    os << "component " << component_names[k] << ": mean=" << fmt(sample_mean[k])
       << " variance=" << fmt(sample_variance[k]) << "\n";
  }
  os << "independence_max_z: " << fmt(max_independence_z) << "\n";
  for (const auto& c : candidates) {
    os << "candidate " << c.name << ": totals=" << to_string(c.totals);
    for (std::size_t i = 0; i < c.rows.size(); ++i) os << " row" << i << "=" << to_string(c.rows[i]);
    os << " constant=" << to_fraction_string(c.constant) << " mass_ratio=" << fmt(c.mass_ratio)
       << " max_mean_z=" << fmt(c.max_mean_z) << " max_variance_z=" << fmt(c.max_variance_z)
       << " matches=" << (c.matches ? "yes" : "no") << "\n";
  }
  os << "stated_constant: " << to_fraction_string(stated_constant) << "\n";
  os << "matching_candidate: " << (matching_candidate ? *matching_candidate : "none") << "\n";
  os << "constant_tension: " << (constant_tension ? "yes" : "no") << "\n";
  return os.str();
}

LocalUpdateAudit local_update_audit(const HyperParams& alpha, std::size_t row, std::size_t col,
                                    std::size_t samples, std::uint64_t seed) {
  const GridShape shape{2, 3};
  require_shape(alpha.size(), shape);
  if (row >= shape.rows || col >= shape.cols) throw Error(ErrorKind::kInvalidArgument, "cell out of range");
  if (samples < kMinAuditSamples) {
    throw Error(ErrorKind::kInvalidArgument, "audit needs at least " + std::to_string(kMinAuditSamples) + " samples");
  }

  const std::size_t cell = row * shape.cols + col;
  LocalUpdateAudit audit{.prior = alpha,
                         .cell_row = row,
                         .cell_col = col,
                         .updated = alpha.incremented(cell),
                         .samples = samples,
                         .seed = seed};

  for (std::size_t i = 0; i < shape.rows; ++i) audit.component_names.push_back("y" + std::to_string(i));
  for (std::size_t i = 0; i < shape.rows; ++i) {
    for (std::size_t j = 0; j < shape.cols; ++j) {
      audit.component_names.push_back("row" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  const std::size_t dims = audit.component_names.size();

  // Draws come in blocks, each block from its own substream.
  constexpr std::size_t kBlock = 10000;
  const Rng root(seed);
  SampleMatrix draws(dims);
  std::size_t landed = 0;
  std::vector<double> row_buf(dims);
  for (std::size_t start = 0, block = 0; start < samples; start += kBlock, ++block) {
    Rng rng = root.split(block);
    const std::size_t end = std::min(samples, start + kBlock);
    for (std::size_t k = start; k < end; ++k) {
      const SplitCoords s = split(dirichlet_sample(audit.updated, rng), shape);
      std::size_t d = 0;
      for (double v : s.totals.coords()) row_buf[d++] = v;
      for (const auto& r : s.rows) {
        for (double v : r.coords()) row_buf[d++] = v;
      }
      draws.add(row_buf);
      ++landed;
    }
  }
  audit.pushforward_mass = static_cast<double>(landed) / static_cast<double>(samples);

  for (std::size_t k = 0; k < dims; ++k) {
    audit.sample_mean.push_back(draws.mean(k));
    audit.sample_variance.push_back(draws.variance(k));
  }
  for (std::size_t t = 0; t < shape.rows; ++t) {
    for (std::size_t k = shape.rows; k < dims; ++k) {
      audit.max_independence_z = std::max(
          audit.max_independence_z, z_score(draws.covariance(t, k), 0.0, draws.covariance_standard_error(t, k)));
    }
  }

  const HyperParams beta = row_totals(alpha, shape);
  auto local_rows = [&] {
    std::vector<HyperParams> rows;
    for (std::size_t i = 0; i < shape.rows; ++i) {
      HyperParams r = row_params(alpha, i, shape);
      rows.push_back(i == row ? r.incremented(col) : r);
    }
    return rows;
  };

  audit.stated_constant = stated_local_constant(alpha, row);
  const long shift = static_cast<long>(shape.cols) - 1;
  audit.candidates.push_back({.name = "shifted",
                              .totals = shifted(beta, shift).incremented(row),
                              .rows = local_rows(),
                              .constant = audit.stated_constant});
  audit.candidates.push_back(
      {.name = "direct", .totals = beta.incremented(row), .rows = local_rows(), .constant = Rational(1)});

  for (auto& c : audit.candidates) {
    product_moments(c.totals, c.rows, c.expected_mean, c.expected_variance);
    for (std::size_t k = 0; k < dims; ++k) {
      c.max_mean_z = std::max(c.max_mean_z,
                              z_score(audit.sample_mean[k], c.expected_mean[k], draws.mean_standard_error(k)));
      c.max_variance_z = std::max(
          c.max_variance_z, z_score(audit.sample_variance[k], c.expected_variance[k], draws.variance_standard_error(k)));
    }
    // Every factor is a probability measure, so the candidate's total mass
    // is its constant.
    c.mass_ratio = audit.pushforward_mass / to_double(c.constant);
    c.matches = c.max_mean_z <= audit.z_threshold && c.max_variance_z <= audit.z_threshold &&
                c.mass_ratio == 1.0;
    if (c.matches && !audit.matching_candidate) audit.matching_candidate = c.name;
  }
  audit.constant_tension = audit.stated_constant != 1;
  return audit;
}

}  // namespace cptforge

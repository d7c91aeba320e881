#include "cptforge/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cptforge/error.hpp"

namespace cptforge {

HyperParams::HyperParams(std::vector<Integer> alphas) : alphas_(std::move(alphas)), total_(0) {
  if (alphas_.empty()) throw Error(ErrorKind::kInvalidArgument, "hyperparameters over empty set");
  for (const auto& a : alphas_) {
    if (a < 1) throw Error(ErrorKind::kNotFullSupport, "hyperparameters must be positive integers");
    total_ += a;
  }
}

HyperParams::HyperParams(std::initializer_list<long> alphas)
    : HyperParams(std::vector<Integer>(alphas.begin(), alphas.end())) {}

HyperParams HyperParams::from_multiset(const Multiset& m) {
  return HyperParams(std::vector<Integer>(m.counts().begin(), m.counts().end()));
}

HyperParams HyperParams::ones(std::size_t n) { return HyperParams(std::vector<Integer>(n, 1)); }

HyperParams HyperParams::incremented(std::size_t i) const {
  auto a = alphas_;
  a.at(i) += 1;
  return HyperParams(std::move(a));
}

std::string to_string(const HyperParams& alpha) {
  std::string s = "(";
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (i) s += ",";
    s += alpha[i].get_str();
  }
  return s + ")";
}

SimplexPoint::SimplexPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw Error(ErrorKind::kInvalidArgument, "simplex point with no coordinates");
  if (coords_.size() == 1) {
    if (std::abs(coords_[0] - 1.0) > kSumTolerance) {
      throw Error(ErrorKind::kInvalidArgument, "the one-point simplex only contains (1)");
    }
    return;
  }
  double total = 0.0;
  for (double c : coords_) {
    if (!(c > 0.0 && c < 1.0)) {
      throw Error(ErrorKind::kBoundaryPoint, "coordinate outside the open interval (0,1)");
    }
    total += c;
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw Error(ErrorKind::kInvalidArgument, "coordinates do not sum to 1");
  }
}

Integer gamma_nat(unsigned long k) {
  if (k == 0) throw Error(ErrorKind::kInvalidArgument, "Gamma is only defined here on k >= 1");
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), k - 1);
  return f;
}

namespace {

unsigned long as_ulong(const Integer& z) {
  if (!z.fits_ulong_p()) throw Error(ErrorKind::kInvalidArgument, "hyperparameter too large");
  return z.get_ui();
}

void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::string(what) + ": " + std::to_string(got) + " vs " + std::to_string(want));
  }
}

}  // namespace

Rational dirichlet_normalizer(const HyperParams& alpha) {
  Integer den = 1;
  for (const auto& a : alpha.alphas()) den *= gamma_nat(as_ulong(a));
  Rational q(gamma_nat(as_ulong(alpha.total())), den);
  q.canonicalize();
  return q;
}

DirichletPdf::DirichletPdf(const HyperParams& alpha) {
  exponents_.reserve(alpha.size());
  for (const auto& a : alpha.alphas()) exponents_.push_back(Integer(a - 1).get_d());
  const Rational z = dirichlet_normalizer(alpha);
  scale_ = to_double(z);
  if (!std::isfinite(scale_) || scale_ == 0.0) {
    // Normaliser beyond binary64 range: evaluate in log space.
    log_space_ = true;
    log_scale_ = log_of(z.get_num()) - log_of(z.get_den());
  }
}

double DirichletPdf::operator()(const SimplexPoint& x) const {
  require_size(x.size(), exponents_.size(), "dirichlet_pdf");
  if (!log_space_) {
    double p = scale_;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (exponents_[i] != 0.0) p *= std::pow(x[i], exponents_[i]);
    }
    return p;
  }
  double log_p = log_scale_;
  for (std::size_t i = 0; i < x.size(); ++i) log_p += exponents_[i] * std::log(x[i]);
  return std::exp(log_p);
}

double dirichlet_pdf(const HyperParams& alpha, const SimplexPoint& x) { return DirichletPdf(alpha)(x); }

SimplexDensity::SimplexDensity(HyperParams base, std::vector<unsigned> exponents, Rational normalizer,
                               std::optional<HyperParams> identified_as)
    : base_(std::move(base)),
      pdf_(base_),
      exponents_(std::move(exponents)),
      normalizer_(std::move(normalizer)),
      identified_as_(std::move(identified_as)) {
  if (!exponents_.empty()) require_size(exponents_.size(), base_.size(), "density weight");
  if (normalizer_ <= 0) throw Error(ErrorKind::kInvalidArgument, "density normaliser must be positive");
  if (identified_as_) require_size(identified_as_->size(), base_.size(), "identified Dirichlet");
}

SimplexDensity SimplexDensity::dirichlet(HyperParams alpha) {
  return SimplexDensity(std::move(alpha), {}, Rational(1), std::nullopt);
}

SimplexDensity SimplexDensity::weighted(HyperParams base, std::vector<unsigned> exponents,
                                        Rational normalizer,
                                        std::optional<HyperParams> identified_as) {
  return SimplexDensity(std::move(base), std::move(exponents), std::move(normalizer),
                        std::move(identified_as));
}

double SimplexDensity::operator()(const SimplexPoint& x) const {
  double v = pdf_(x);
  if (exponents_.empty()) return v;
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i]) v *= std::pow(x[i], static_cast<double>(exponents_[i]));
  }
  return v / to_double(normalizer_);
}

std::optional<HyperParams> SimplexDensity::as_dirichlet() const {
  if (exponents_.empty()) return base_;
  return identified_as_;
}

std::string SimplexDensity::description() const {
  std::ostringstream os;
  if (exponents_.empty()) {
    os << "Dirichlet" << to_string(base_);
    return os.str();
  }
  os << "x^(";
  for (std::size_t i = 0; i < exponents_.size(); ++i) os << (i ? "," : "") << exponents_[i];
  os << ") * Dirichlet" << to_string(base_) << " / " << to_fraction_string(normalizer_);
  if (identified_as_) os << " = Dirichlet" << to_string(*identified_as_);
  return os.str();
}

double simplex_quadrature(const SimplexFunction& f, std::size_t n, unsigned resolution) {
  if (n == 0 || n > kMaxQuadratureDimension) {
    throw Error(ErrorKind::kUnsupportedDimension,
                "simplex quadrature supports 1 <= n <= " + std::to_string(kMaxQuadratureDimension));
  }
  if (resolution < 2) throw Error(ErrorKind::kInvalidArgument, "quadrature resolution must be >= 2");
  if (n == 1) return f(SimplexPoint({1.0}));

  const std::size_t d = n - 1;
  const double r = resolution;
  double factorial = 1.0;
  for (std::size_t k = 2; k <= d; ++k) factorial *= static_cast<double>(k);
  const double cell_volume = 1.0 / (factorial * std::pow(r, static_cast<double>(d)));

  // Centroid offsets of a Kuhn simplex are the distinct values k/(d+1),
  // k = 1..d, one per axis. Every permutation is a simplex of the cube.
  std::vector<std::vector<double>> offsets;
  {
    std::vector<unsigned> perm(d);
    std::iota(perm.begin(), perm.end(), 1u);
    do {
      std::vector<double> t(d);
      for (std::size_t k = 0; k < d; ++k) t[k] = static_cast<double>(perm[k]) / static_cast<double>(d + 1);
      offsets.push_back(std::move(t));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  // In cumulative coordinates s_k = x_0 + ... + x_k the simplex is
  // 0 <= s_0 <= ... <= s_{d-1} <= 1. A cube with base b lies in it when b is
  // non-decreasing; tied axes need the matching order inside the cube.
  CompensatedSum total;
  std::vector<unsigned> base(d, 0);
  std::vector<double> coords(n);
  while (true) {
    for (const auto& t : offsets) {
      bool inside = true;
      for (std::size_t k = 0; k + 1 < d; ++k) {
        if (base[k] == base[k + 1] && !(t[k] < t[k + 1])) {
          inside = false;
          break;
        }
      }
      if (!inside) continue;
      double previous = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double s = (static_cast<double>(base[k]) + t[k]) / r;
        coords[k] = s - previous;
        previous = s;
      }
      coords[d] = 1.0 - previous;
      total.add(f(SimplexPoint(coords)) * cell_volume);
    }
    // Next non-decreasing base sequence in lexicographic order.
    std::size_t k = d;
    while (k > 0 && base[k - 1] == resolution - 1) --k;
    if (k == 0) break;
    ++base[k - 1];
    for (std::size_t j = k; j < d; ++j) base[j] = base[k - 1];
  }
  return total.value();
}

double midpoint_rule(const std::function<double(double)>& f, double a, double b, unsigned cells) {
  if (cells == 0) throw Error(ErrorKind::kInvalidArgument, "midpoint rule needs at least one cell");
  const double h = (b - a) / cells;
  CompensatedSum total;
  for (unsigned k = 0; k < cells; ++k) total.add(f(a + (k + 0.5) * h));
  return total.value() * h;
}

SimplexPoint dirichlet_sample(const HyperParams& alpha, Rng& rng) {
  std::vector<double> g(alpha.size());
  while (true) {
    double total = 0.0;
    bool degenerate = false;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      const unsigned long k = as_ulong(alpha[i]);
      double s = 0.0;
      for (unsigned long e = 0; e < k; ++e) s += rng.exponential();
      g[i] = s;
      total += s;
      degenerate = degenerate || s == 0.0;
    }
    // A zero Gamma variate (probability ~2^-53) would land on the boundary.
    if (degenerate) continue;
    for (auto& v : g) v /= total;
    if (g.size() > 1) {
      // Re-close the sum so rounding in the division cannot breach the
      // simplex tolerance.
      double head = 0.0;
      for (std::size_t i = 0; i + 1 < g.size(); ++i) head += g[i];
      g.back() = 1.0 - head;
      if (!(g.back() > 0.0)) continue;
    }
    return SimplexPoint(g);
  }
}

Dist dirichlet_mean(const HyperParams& alpha) {
  std::vector<Rational> p(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    p[i] = Rational(alpha[i], alpha.total());
    p[i].canonicalize();
  }
  return Dist(std::move(p));
}

std::vector<Rational> dirichlet_covariance(const HyperParams& alpha) {
  const std::size_t n = alpha.size();
  const Rational a0(alpha.total());
  const Rational denom = a0 * a0 * (a0 + 1);
  std::vector<Rational> cov(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational ai(alpha[i]);
      const Rational aj(alpha[j]);
      cov[i * n + j] = i == j ? Rational(ai * (a0 - ai) / denom) : Rational(-ai * aj / denom);
    }
  }
  return cov;
}

HyperParams aggregate_params(const FinMap& h, const HyperParams& alpha) {
  return HyperParams::from_multiset(ms_map_full(h, alpha.as_multiset()));
}

SimplexPoint simplex_map(const FinMap& h, const SimplexPoint& x) {
  require_size(x.size(), h.domain_size(), "simplex_map");
  std::vector<double> out(h.codomain_size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) out[h(i)] += x[i];
  return SimplexPoint(std::move(out));
}

OneSumCheck one_sum_check(const HyperParams& alpha, const SimplexPoint& x, unsigned resolution) {
  const std::size_t n = alpha.size();
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "aggregation needs at least two categories");
  require_size(x.size(), n - 1, "one_sum_check point");

  std::vector<Integer> merged;
  merged.push_back(alpha[0] + alpha[1]);
  for (std::size_t i = 2; i < n; ++i) merged.push_back(alpha[i]);
  const double lhs = dirichlet_pdf(HyperParams(std::move(merged)), x);
  const DirichletPdf pdf(alpha);

  const double x0 = x[0];
  std::vector<double> y(n);
  for (std::size_t i = 1; i < x.size(); ++i) y[i + 1] = x[i];
  const double rhs = midpoint_rule(
      [&](double t) {
        y[0] = t;
        y[1] = x0 - t;
        return pdf(SimplexPoint(y));
      },
      0.0, x0, resolution);
  return {lhs, rhs};
}

}  // namespace cptforge

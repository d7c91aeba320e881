#include <cmath>

#include "cptforge/dirichlet.hpp"
#include "cptforge/error.hpp"
#include "cptforge/mle.hpp"
#include "cptforge/random.hpp"
#include "cptforge/stats.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cptforge;

namespace {

Rational q(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kInput;
}

}  // namespace

TEST_CASE("gamma on naturals") {
  CHECK(gamma_nat(1) == 1);
  CHECK(gamma_nat(2) == 1);
  CHECK(gamma_nat(5) == 24);
  CHECK(gamma_nat(21) == Integer("2432902008176640000"));
  CHECK(kind_of([] { gamma_nat(0); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("hyperparameters must be positive") {
  CHECK(kind_of([] { HyperParams{1, 0}; }) == ErrorKind::kNotFullSupport);
  CHECK(HyperParams::from_multiset(Multiset{2, 3}) == HyperParams{2, 3});
  CHECK(HyperParams{1, 2}.incremented(0) == HyperParams{2, 2});
  CHECK(to_string(HyperParams{1, 2, 3}) == "(1,2,3)");
  CHECK(dirichlet_normalizer(HyperParams{2, 1}) == 2);
  CHECK(dirichlet_normalizer(HyperParams{3, 3}) == 30);
}

TEST_CASE("simplex points") {
  CHECK(kind_of([] { SimplexPoint({0.0, 1.0}); }) == ErrorKind::kBoundaryPoint);
  CHECK(kind_of([] { SimplexPoint({0.5, 0.6}); }) == ErrorKind::kInvalidArgument);
  CHECK(SimplexPoint({1.0}).size() == 1);
  CHECK(kind_of([] { SimplexPoint({0.5}); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("density values") {
  for (double x : {0.1, 0.25, 0.5, 0.9}) CHECK(dirichlet_pdf(HyperParams{1, 1}, SimplexPoint({x, 1 - x})) == doctest::Approx(1.0));
  CHECK(dirichlet_pdf(HyperParams{2, 1}, SimplexPoint({0.3, 0.7})) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(dirichlet_pdf(HyperParams{1, 1, 1}, SimplexPoint({0.2, 0.3, 0.5})) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(dirichlet_pdf(HyperParams{1, 1}, SimplexPoint({1e-12, 1.0 - 1e-12})) == doctest::Approx(1.0));
  CHECK(kind_of([] { dirichlet_pdf(HyperParams{1, 1}, SimplexPoint({0.2, 0.3, 0.5})); }) ==
        ErrorKind::kDimensionMismatch);

  oracle::Lcg g(17);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + g.below(5);
    std::vector<long> a(n);
    std::vector<Integer> ai(n);
    std::vector<double> x(n);
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = g.between(1, 30);
      ai[i] = a[i];
      x[i] = 0.05 + g.unit();
      s += x[i];
    }
    for (auto& v : x) v /= s;
    double rest = 1.0;
    for (std::size_t i = 0; i + 1 < n; ++i) rest -= x[i];
    x[n - 1] = rest;
    const double want = oracle::dirichlet_density(a, x);
    CHECK(std::abs(dirichlet_pdf(HyperParams(ai), SimplexPoint(x)) - want) <= 1e-9 * want);
  }
}

TEST_CASE("large hyperparameters evaluate in log space") {
  std::vector<Integer> big(3, 400);
  const double v = dirichlet_pdf(HyperParams(big), SimplexPoint({0.3, 0.3, 0.4}));
  const double want = oracle::dirichlet_density({400, 400, 400}, {0.3, 0.3, 0.4});
  CHECK(std::isfinite(v));
  CHECK(std::abs(v - want) <= 1e-8 * want);
}

TEST_CASE("simplex quadrature") {
  CHECK(simplex_quadrature([](const SimplexPoint&) { return 1.0; }, 2, 50) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(simplex_quadrature([](const SimplexPoint&) { return 1.0; }, 3, 50) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(simplex_quadrature([](const SimplexPoint&) { return 1.0; }, 4, 20) == doctest::Approx(1.0 / 6).epsilon(1e-9));
  CHECK(simplex_quadrature([](const SimplexPoint& x) { return x[0] * 5.0; }, 1, 2) == 5.0);
  const DirichletPdf uniform2(HyperParams{1, 1});
  CHECK(simplex_quadrature([&](const SimplexPoint& x) { return x[0] * uniform2(x); }, 2, 100) ==
        doctest::Approx(0.5).epsilon(1e-6));
  const DirichletPdf d211(HyperParams{2, 1, 1});
  CHECK(std::abs(simplex_quadrature(d211, 3, 400) - 1.0) <= 1e-3);
  CHECK(std::abs(oracle::integrate_2simplex({2, 1, 1}, 400) - 1.0) <= 1e-3);
  CHECK(kind_of([] { simplex_quadrature([](const SimplexPoint&) { return 1.0; }, 5, 4); }) ==
        ErrorKind::kUnsupportedDimension);
  CHECK(kind_of([] { simplex_quadrature([](const SimplexPoint&) { return 1.0; }, 2, 1); }) ==
        ErrorKind::kInvalidArgument);
}

TEST_CASE("quadrature agrees with an independent product rule") {
  for (const std::vector<long>& a : {std::vector<long>{1, 1, 1}, {3, 2, 1}, {4, 4, 2}, {1, 6, 1}}) {
    const HyperParams alpha(std::vector<Integer>(a.begin(), a.end()));
    CHECK(simplex_quadrature(DirichletPdf(alpha), 3, 400) == doctest::Approx(oracle::integrate_2simplex(a, 800)).epsilon(1e-4));
  }
}

TEST_CASE("midpoint rule") {
  CHECK(midpoint_rule([](double x) { return 2 * x; }, 0, 1, 10) == doctest::Approx(1.0));
  CHECK(midpoint_rule([](double x) { return x * x; }, 0, 3, 3000) == doctest::Approx(9.0).epsilon(1e-6));
}

TEST_CASE("dirichlet mean and covariance") {
  CHECK(dirichlet_mean(HyperParams{2, 1, 1}) == Dist({q(1, 2), q(1, 4), q(1, 4)}));
  CHECK(dirichlet_mean(HyperParams{1, 1}) == Dist::uniform(2));
  oracle::Lcg g(23);
  for (int t = 0; t < 100; ++t) {
    std::vector<Integer> a(1 + g.below(6));
    for (auto& v : a) v = g.between(1, 50);
    CHECK(dirichlet_mean(HyperParams(a)) == mle(Multiset(a)));
  }
  const auto cov = dirichlet_covariance(HyperParams{2, 1, 1});
  CHECK(cov[0] == q(2 * 2, 16 * 5));
  CHECK(cov[1] == q(-2, 16 * 5));
  CHECK(to_double(cov[4]) == doctest::Approx(oracle::dirichlet_variance({2, 1, 1}, 1)));
}

TEST_CASE("sampler moments and determinism") {
  Rng a(42), b(42);
  for (int k = 0; k < 100; ++k) {
    const auto x = dirichlet_sample(HyperParams{2, 1, 1}, a);
    const auto y = dirichlet_sample(HyperParams{2, 1, 1}, b);
    CHECK(std::equal(x.coords().begin(), x.coords().end(), y.coords().begin()));
  }

  Rng rng(7);
  SampleMatrix draws(3), flat(2);
  for (int k = 0; k < 100000; ++k) {
    draws.add(dirichlet_sample(HyperParams{2, 1, 1}, rng).coords());
    flat.add(dirichlet_sample(HyperParams{1, 1}, rng).coords());
  }
  const double want[3] = {0.5, 0.25, 0.25};
  for (std::size_t i = 0; i < 3; ++i) CHECK(z_score(draws.mean(i), want[i], draws.mean_standard_error(i)) <= 4.0);
  for (std::size_t i = 0; i < 2; ++i) CHECK(z_score(flat.mean(i), 0.5, flat.mean_standard_error(i)) <= 4.0);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(z_score(draws.variance(i), oracle::dirichlet_variance({2, 1, 1}, i), draws.variance_standard_error(i)) <=
          4.0);
  }
}

TEST_CASE("aggregation of hyperparameters") {
  CHECK(aggregate_params(FinMap({0, 0, 1}, 2), HyperParams{2, 3, 4}) == HyperParams{5, 4});
  CHECK(aggregate_params(FinMap::identity(3), HyperParams{2, 3, 4}) == HyperParams{2, 3, 4});
  CHECK(aggregate_params(FinMap::constant(3), HyperParams{2, 3, 4}) == HyperParams{9});
  CHECK(kind_of([] { aggregate_params(FinMap({0, 0}, 2), HyperParams{1, 1}); }) == ErrorKind::kNotSurjective);
  const auto y = simplex_map(FinMap({1, 0, 1}, 2), SimplexPoint({0.2, 0.3, 0.5}));
  CHECK(y[0] == doctest::Approx(0.3));
  CHECK(y[1] == doctest::Approx(0.7));
}

TEST_CASE("one-sum check") {
  for (double s : {0.2, 0.5, 0.7}) {
    const auto r = one_sum_check(HyperParams{1, 1, 1}, SimplexPoint({s, 1 - s}), 1000);
    CHECK(r.lhs == doctest::Approx(2 * s));
    CHECK(r.rhs == doctest::Approx(2 * s));
  }
  const auto degenerate = one_sum_check(HyperParams{2, 1}, SimplexPoint({1.0}), 1000);
  CHECK(degenerate.lhs == doctest::Approx(1.0));
  CHECK(degenerate.rhs == doctest::Approx(1.0).epsilon(1e-6));
  const auto r = one_sum_check(HyperParams{2, 2, 1}, SimplexPoint({0.5, 0.5}), 10000);
  CHECK(r.lhs == doctest::Approx(oracle::dirichlet_density({4, 1}, {0.5, 0.5})));
  CHECK(std::abs(r.lhs - r.rhs) <= 1e-4);
}

#include "cptforge/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include "cptforge/bayes.hpp"
#include "cptforge/dirichlet.hpp"
#include "cptforge/dist.hpp"
#include "cptforge/error.hpp"
#include "cptforge/finset.hpp"
#include "cptforge/local_bayes.hpp"
#include "cptforge/mle.hpp"
#include "cptforge/netlearn.hpp"
#include "cptforge/random.hpp"
#include "cptforge/stats.hpp"

namespace cptforge {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

std::string dist_text(const Dist& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + to_fraction_string(d[i]);
  return s + ")";
}

Dist dist_of(std::initializer_list<std::pair<long, long>> fractions) {
  std::vector<Rational> p;
  for (const auto& [a, b] : fractions) {
    Rational q(a, b);
    q.canonicalize();
    p.push_back(q);
  }
  return Dist(std::move(p));
}

// Random instance helpers. Every draw comes from the Rng passed in.
std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng.next_u64() % n); }

Multiset random_multiset(Rng& rng, std::size_t n, long max_count, bool nonempty) {
  while (true) {
    std::vector<Integer> c(n);
    for (auto& v : c) v = static_cast<long>(pick(rng, static_cast<std::size_t>(max_count) + 1));
    Multiset m(std::move(c));
    if (!nonempty || m.is_nonempty()) return m;
  }
}

FinMap random_map(Rng& rng, std::size_t n, std::size_t m) {
  std::vector<std::size_t> t(n);
  for (auto& v : t) v = pick(rng, m);
  return FinMap(std::move(t), m);
}

JointMultiset random_row_positive(Rng& rng, std::size_t rows, std::size_t cols, long max_count) {
  std::vector<Integer> all;
  for (std::size_t i = 0; i < rows; ++i) {
    Multiset r = random_multiset(rng, cols, max_count, true);
    all.insert(all.end(), r.counts().begin(), r.counts().end());
  }
  return JointMultiset(rows, cols, std::move(all));
}

HyperParams random_hyper(Rng& rng, std::size_t n, long max_alpha) {
  std::vector<Integer> a(n);
  for (auto& v : a) v = static_cast<long>(1 + pick(rng, static_cast<std::size_t>(max_alpha)));
  return HyperParams(std::move(a));
}

Predicate random_predicate(Rng& rng, std::size_t n) {
  std::vector<Rational> v(n);
  for (auto& x : v) {
    const long den = static_cast<long>(1 + pick(rng, 12));
    x = Rational(static_cast<long>(pick(rng, static_cast<std::size_t>(den) + 1)), den);
    x.canonicalize();
  }
  return Predicate(std::move(v));
}

class Suite {
 public:
  Suite(std::string name, std::vector<LawResult>& out) : name_(std::move(name)), out_(out) {}

  void law(const std::string& name, const std::string& statement, const std::function<std::string(bool&)>& body) {
    LawResult r{name_, name, statement, true, ""};
    try {
      r.detail = body(r.passed);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    out_.push_back(std::move(r));
  }

 private:
  std::string name_;
  std::vector<LawResult>& out_;
};

const char* kGoldenGraph =
    "node Blood 2\n"
    "node Medicine 3\n"
    "edge Blood Medicine\n";

const char* kGoldenData =
    "Blood,Medicine,count\n"
    "0,0,10\n0,1,35\n0,2,25\n"
    "1,0,5\n1,1,10\n1,2,15\n";

void golden_suite(std::vector<LawResult>& out) {
  Suite s("golden", out);
  const Multiset table{10, 35, 25, 5, 10, 15};
  const Dist omega = dist_of({{1, 10}, {7, 20}, {1, 4}, {1, 20}, {1, 10}, {3, 20}});
  const Dist blood = dist_of({{7, 10}, {3, 10}});
  const Dist medicine = dist_of({{3, 20}, {9, 20}, {2, 5}});
  const Channel c({dist_of({{1, 7}, {1, 2}, {5, 14}}), dist_of({{1, 6}, {1, 3}, {1, 2}})});

  s.law("empirical-joint", "normalising the table gives the empirical joint", [&](bool& ok) {
    const Dist learned = mle(table);
    ok = learned == omega && table.total() == 100;
    return "joint=" + dist_text(learned);
  });
  s.law("marginals", "marginals of the joint equal the normalised totals", [&](bool& ok) {
    const Dist m1 = dist_map(FinMap::first_projection(2, 3), omega);
    const Dist m2 = dist_map(FinMap::second_projection(2, 3), omega);
    ok = m1 == blood && m2 == medicine && mle(ms_map(FinMap::first_projection(2, 3), table)) == blood &&
         mle(ms_map(FinMap::second_projection(2, 3), table)) == medicine;
    return "first=" + dist_text(m1) + " second=" + dist_text(m2);
  });
  s.law("network-tables", "the learned network carries the row-normalised tables", [&](bool& ok) {
    std::istringstream g(kGoldenGraph);
    std::istringstream d(kGoldenData);
    const GraphSpec graph = GraphSpec::parse(g);
    const auto cpts = learn_mle(ingest_counts(d, graph), graph);
    ok = cpts.size() == 2 && cpts[0].rows.size() == 1 && cpts[0].rows[0] == blood &&
         std::vector<Dist>(c.rows().begin(), c.rows().end()) == cpts[1].rows;
    return "Blood=" + dist_text(cpts[0].rows[0]) + " Medicine=" + dist_text(cpts[1].rows[0]) + "," +
           dist_text(cpts[1].rows[1]);
  });
  s.law("state-transformation", "the channel recovers the second marginal from the first", [&](bool& ok) {
    const Dist m2 = state_transform(c, blood);
    ok = m2 == medicine;
    return "c>>first=" + dist_text(m2);
  });
  s.law("disintegration", "disintegrating the joint yields the same channel", [&](bool& ok) {
    const auto [first, channel] = disintegrate(JointDist::from_dist(2, 3, omega));
    ok = first == blood && channel == c && pair_graph(channel, first) == JointDist::from_dist(2, 3, omega);
    return "c(H)=" + dist_text(channel(0)) + " c(L)=" + dist_text(channel(1));
  });
}

void exact_suite(std::vector<LawResult>& out, std::uint64_t seed) {
  Suite s("exact", out);
  const Rng root(seed);

  s.law("multiset-functoriality", "pushing counts along composites equals pushing twice", [&](bool& ok) {
    Rng rng = root.split(1);
    const int trials = 300;
    for (int t = 0; t < trials && ok; ++t) {
      const std::size_t n = 1 + pick(rng, 6), m = 1 + pick(rng, 6), k = 1 + pick(rng, 6);
      const FinMap h = random_map(rng, n, m), g = random_map(rng, m, k);
      const Multiset phi = random_multiset(rng, n, 20, false);
      ok = ms_map(g.after(h), phi) == ms_map(g, ms_map(h, phi)) && ms_map(FinMap::identity(n), phi) == phi &&
           ms_map(h, phi).total() == phi.total();
    }
    return std::to_string(trials) + " instances";
  });
  s.law("naturality", "learning commutes with pushing along any map", [&](bool& ok) {
    Rng rng = root.split(2);
    const int trials = 1000;
    for (int t = 0; t < trials && ok; ++t) {
      const std::size_t n = 1 + pick(rng, 6), m = 1 + pick(rng, 6);
      const FinMap h = random_map(rng, n, m);
      const Multiset phi = random_multiset(rng, n, 30, true);
      ok = mle(ms_map(h, phi)) == dist_map(h, mle(phi));
    }
    return std::to_string(trials) + " instances, n,m <= 6";
  });
  s.law("marginal-naturality", "learning commutes with both marginalisations", [&](bool& ok) {
    Rng rng = root.split(3);
    const int trials = 200;
    for (int t = 0; t < trials && ok; ++t) {
      const std::size_t n = 1 + pick(rng, 5), m = 1 + pick(rng, 5);
      const Multiset phi = random_multiset(rng, n * m, 20, true);
      for (const FinMap& p : {FinMap::first_projection(n, m), FinMap::second_projection(n, m)}) {
        ok = ok && mle(ms_map(p, phi)) == dist_map(p, mle(phi));
      }
    }
    return std::to_string(trials) + " tables";
  });
  s.law("decomposition", "row-wise learning equals disintegrating the learned joint", [&](bool& ok) {
    Rng rng = root.split(4);
    const int trials = 500;
    for (int t = 0; t < trials && ok; ++t) {
      const std::size_t n = 1 + pick(rng, 5), m = 1 + pick(rng, 5);
      const JointMultiset phi = random_row_positive(rng, n, m, 15);
      const Disintegration local = mle_decompose(phi);
      const Dist joint = mle(phi.flat());
      const Disintegration global = disintegrate(JointDist::from_dist(n, m, joint));
      ok = local.first == global.first && local.channel == global.channel &&
           pair_graph(local.channel, local.first).flat() == joint;
    }
    return std::to_string(trials) + " row-positive tables up to 5x5";
  });
  s.law("monoidality", "learning a product table equals the product of learned tables", [&](bool& ok) {
    Rng rng = root.split(5);
    const int trials = 200;
    for (int t = 0; t < trials && ok; ++t) {
      const Multiset phi = random_multiset(rng, 1 + pick(rng, 5), 20, true);
      const Multiset psi = random_multiset(rng, 1 + pick(rng, 5), 20, true);
      ok = mle(ms_tensor(phi, psi).flat()) == dist_tensor(mle(phi), mle(psi)).flat();
    }
    return std::to_string(trials) + " pairs";
  });
  s.law("monad-counterexample", "learning is not a map of monads", [&](bool& ok) {
    const auto r = monad_counterexample();
    ok = r.flatten_then_normalize == dist_of({{1, 3}, {1, 6}, {1, 2}}) &&
         r.normalize_then_flatten == dist_of({{1, 3}, {2, 9}, {4, 9}}) &&
         !(r.flatten_then_normalize == r.normalize_then_flatten);
    return "flatten-then-normalise=" + dist_text(r.flatten_then_normalize) +
           " normalise-then-flatten=" + dist_text(r.normalize_then_flatten);
  });
  s.law("mle-maximality", "the learned distribution maximises the likelihood on the 1/50 grid", [&](bool& ok) {
    Rng rng = root.split(6);
    const int trials = 50;
    std::size_t points = 0;
    for (int t = 0; t < trials && ok; ++t) {
      const std::size_t total = 1 + pick(rng, 20);
      std::vector<Integer> c(3, 0);
      for (std::size_t k = 0; k < total; ++k) c[pick(rng, 3)] += 1;
      const Multiset phi(std::move(c));
      const Rational at_mle = likelihood(phi, mle(phi));
      for_each_grid_dist(3, 50, [&](const Dist& w) {
        ++points;
        if (likelihood(phi, w) > at_mle) ok = false;
      });
    }
    return std::to_string(trials) + " multisets, " + std::to_string(points) + " grid comparisons";
  });
  s.law("disintegration-round-trip", "pairing and disintegration are mutually inverse", [&](bool& ok) {
    Rng rng = root.split(7);
    const int trials = 200;
    for (int t = 0; t < trials && ok; ++t) {
      const std::size_t n = 1 + pick(rng, 4), m = 1 + pick(rng, 4);
      const Dist omega = mle(random_multiset(rng, n, 9, true).is_full_support()
                                 ? random_multiset(rng, n, 9, true)
                                 : Multiset(std::vector<Integer>(n, 1)));
      std::vector<Dist> rows;
      for (std::size_t i = 0; i < n; ++i) rows.push_back(mle(random_multiset(rng, m, 9, true)));
      const Channel c(std::move(rows));
      const JointDist joint = pair_graph(c, omega);
      if (omega.is_full_support()) {
        const auto [first, channel] = disintegrate(joint);
        ok = first == omega && channel == c && pair_graph(channel, first) == joint;
      }
    }
    return std::to_string(trials) + " instances";
  });
  s.law("bayes-chain", "(w|p |= q) * (w |= p) equals w |= p&q", [&](bool& ok) {
    Rng rng = root.split(8);
    const int trials = 300;
    for (int t = 0; t < trials && ok; ++t) {
      const std::size_t n = 1 + pick(rng, 6);
      const Dist omega = mle(random_multiset(rng, n, 9, true));
      const Predicate p = random_predicate(rng, n), q = random_predicate(rng, n);
      const Rational v = validity(omega, p);
      if (v == 0) continue;
      ok = validity(condition(omega, p), q) * v == validity(omega, p & q);
    }
    return std::to_string(trials) + " instances";
  });
  s.law("validity-transfer", "validity in the learned distribution equals Dirichlet validity of the lifted predicate",
        [&](bool& ok) {
          Rng rng = root.split(9);
          const int trials = 200;
          for (int t = 0; t < trials && ok; ++t) {
            const HyperParams alpha = random_hyper(rng, 1 + pick(rng, 6), 10);
            ok = validity_transfer_check(alpha, random_predicate(rng, alpha.size())).holds();
          }
          return std::to_string(trials) + " instances, closed form";
        });
  s.law("frequentist-trivialisation", "conditioning a learned distribution on a point gives the point mass",
        [&](bool& ok) {
          Rng rng = root.split(10);
          const int trials = 200;
          for (int t = 0; t < trials && ok; ++t) {
            const Multiset phi = random_multiset(rng, 1 + pick(rng, 6), 9, true);
            const Dist w = mle(phi);
            const std::size_t i = pick(rng, phi.size());
            if (w[i] == 0) continue;
            ok = condition(w, Predicate::point(phi.size(), i)) == Dist::point(phi.size(), i);
          }
          return std::to_string(trials) + " instances";
        });
  s.law("posterior-mean", "the posterior mean equals learning from prior plus data", [&](bool& ok) {
    Rng rng = root.split(11);
    const int trials = 200;
    for (int t = 0; t < trials && ok; ++t) {
      const HyperParams alpha = random_hyper(rng, 1 + pick(rng, 6), 10);
      const Multiset data = random_multiset(rng, alpha.size(), 30, false);
      ok = dirichlet_mean(batch_update(alpha, data)) == mle(batch_update(alpha, data).as_multiset()) &&
           dirichlet_mean(alpha) == mle(alpha.as_multiset());
    }
    return std::to_string(trials) + " instances";
  });
}

void stochastic_suite(std::vector<LawResult>& out, std::uint64_t seed, unsigned resolution, std::size_t samples) {
  Suite s("stochastic", out);
  const Rng root(seed);

  s.law("normalisation", "every Dirichlet density integrates to one (n <= 3, sum alpha <= 12)", [&](bool& ok) {
    double worst = 0.0;
    std::size_t count = 0, not_improved = 0;
    const unsigned coarse = std::max(2u, resolution / 2);
    auto check = [&](const HyperParams& alpha) {
      const DirichletPdf pdf(alpha);
      const double fine_err = std::abs(simplex_quadrature(pdf, alpha.size(), resolution) - 1.0);
      const double coarse_err = std::abs(simplex_quadrature(pdf, alpha.size(), coarse) - 1.0);
      worst = std::max(worst, fine_err);
      // Rounding noise floor: errors at 1e-12 are already exact.
      if (!(fine_err < coarse_err || fine_err <= 1e-12)) ++not_improved;
      ++count;
    };
    for (long a = 1; a <= 12; ++a) check(HyperParams{a});
    for (long a = 1; a <= 11; ++a) {
      for (long b = 1; a + b <= 12; ++b) check(HyperParams{a, b});
    }
    for (long a = 1; a <= 10; ++a) {
      for (long b = 1; a + b <= 11; ++b) {
        for (long c = 1; a + b + c <= 12; ++c) check(HyperParams{a, b, c});
      }
    }
    ok = worst <= 1e-3 && not_improved == 0;
    return std::to_string(count) + " densities, max error " + num(worst) + " at resolution " +
           std::to_string(resolution) + ", " + std::to_string(not_improved) + " not improved from resolution " +
           std::to_string(coarse);
  });
  s.law("mean", "integrating x_i against the density gives alpha_i / sum alpha", [&](bool& ok) {
    Rng rng = root.split(21);
    double worst = 0.0;
    const int trials = 20;
    for (int t = 0; t < trials; ++t) {
      const HyperParams alpha = random_hyper(rng, 2 + pick(rng, 2), 5);
      const DirichletPdf pdf(alpha);
      const Dist mean = dirichlet_mean(alpha);
      for (std::size_t i = 0; i < alpha.size(); ++i) {
        const double q = simplex_quadrature([&](const SimplexPoint& x) { return x[i] * pdf(x); }, alpha.size(),
                                            resolution);
        worst = std::max(worst, std::abs(q - to_double(mean[i])));
      }
      ok = ok && dirichlet_mean(alpha) == mle(alpha.as_multiset());
    }
    ok = ok && worst <= 1e-3;
    return std::to_string(trials) + " densities, max error " + num(worst);
  });
  s.law("validity-transfer-quadrature", "the closed-form Dirichlet validity agrees with quadrature", [&](bool& ok) {
    Rng rng = root.split(22);
    double worst = 0.0;
    const int trials = 20;
    for (int t = 0; t < trials; ++t) {
      const HyperParams alpha = random_hyper(rng, 2 + pick(rng, 2), 5);
      const Predicate p = random_predicate(rng, alpha.size());
      const auto check = validity_transfer_check(alpha, p);
      const double q = cont_validity_quadrature(SimplexDensity::dirichlet(alpha), lift_predicate(p), resolution);
      worst = std::max(worst, std::abs(q - to_double(check.lhs)));
    }
    ok = worst <= 1e-3;
    return std::to_string(trials) + " instances, max error " + num(worst);
  });
  s.law("aggregation", "integrating out a split coordinate gives the merged Dirichlet density", [&](bool& ok) {
    Rng rng = root.split(23);
    double worst = 0.0;
    const int trials = 50;
    for (int t = 0; t < trials; ++t) {
      const HyperParams alpha = random_hyper(rng, 3, 6);
      const SimplexPoint x = dirichlet_sample(HyperParams{2, 2}, rng);
      const auto r = one_sum_check(alpha, x, 10000);
      worst = std::max(worst, std::abs(r.lhs - r.rhs));
    }
    ok = worst <= 1e-4;
    return std::to_string(trials) + " instances, max |lhs-rhs| " + num(worst);
  });
  s.law("surjective-naturality", "pushing Dirichlet samples along a surjection matches the merged Dirichlet",
        [&](bool& ok) {
          Rng rng = root.split(24);
          const HyperParams alpha{2, 3, 1, 4};
          const FinMap h({0, 0, 1, 2}, 3);
          const HyperParams merged = aggregate_params(h, alpha);
          SampleMatrix pushed(3), direct(3);
          Rng a = rng.split(0), b = rng.split(1);
          for (std::size_t k = 0; k < samples; ++k) {
            pushed.add(simplex_map(h, dirichlet_sample(alpha, a)).coords());
            direct.add(dirichlet_sample(merged, b).coords());
          }
          const auto cmp = compare_samples(pushed, direct);
          ok = cmp.max_z() <= 4.0;
          return std::to_string(samples) + " draws each, max panel z " + num(cmp.max_panel_z) +
                 ", max histogram z " + num(cmp.max_histogram_z);
        });
  s.law("sampler-moments", "sample covariance of the sampler matches the Dirichlet covariance", [&](bool& ok) {
    Rng rng = root.split(25);
    const HyperParams alpha{2, 1, 3};
    const auto cov = dirichlet_covariance(alpha);
    const Dist mean = dirichlet_mean(alpha);
    SampleMatrix draws(3);
    for (std::size_t k = 0; k < samples; ++k) draws.add(dirichlet_sample(alpha, rng).coords());
    double worst = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      worst = std::max(worst, z_score(draws.mean(i), to_double(mean[i]), draws.mean_standard_error(i)));
      for (std::size_t j = 0; j < 3; ++j) {
        worst = std::max(worst, z_score(draws.covariance(i, j), to_double(cov[i * 3 + j]),
                                        draws.covariance_standard_error(i, j)));
      }
    }
    ok = worst <= 4.0;
    return std::to_string(samples) + " draws, max z " + num(worst);
  });
  s.law("conjugacy", "conditioning on a lifted point increments that hyperparameter", [&](bool& ok) {
    Rng rng = root.split(26);
    double worst = 0.0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
      const HyperParams alpha = random_hyper(rng, 2 + pick(rng, 5), 8);
      const std::size_t i = pick(rng, alpha.size());
      const SimplexDensity cond =
          cont_condition(SimplexDensity::dirichlet(alpha), lift_predicate(Predicate::point(alpha.size(), i)));
      ok = ok && cond.as_dirichlet() == alpha.incremented(i);
      const DirichletPdf target(alpha.incremented(i));
      Rng panel = rng.split(static_cast<std::uint64_t>(t));
      for (int k = 0; k < 100; ++k) {
        const SimplexPoint x = dirichlet_sample(HyperParams::ones(alpha.size()), panel);
        const double want = target(x);
        worst = std::max(worst, std::abs(cond(x) - want) / want);
      }
    }
    ok = ok && worst <= 1e-9;
    return std::to_string(trials) + " instances x 100 points, max relative error " + num(worst);
  });
  s.law("factorisation", "the joint density factors through row totals and row proportions", [&](bool& ok) {
    Rng rng = root.split(27);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const HyperParams alpha = random_hyper(rng, 6, 8);
      for (int k = 0; k < 20; ++k) {
        const SimplexPoint x = dirichlet_sample(HyperParams::ones(6), rng);
        const auto f = pdf_factorization_check(alpha, x);
        worst = std::max({worst, std::abs(f.rhs_jacobian - f.lhs) / f.lhs, std::abs(f.rhs_shifted - f.lhs) / f.lhs});
      }
    }
    ok = worst <= 1e-9;
    return "20 hyperparameters x 20 points, max relative error " + num(worst);
  });
  s.law("local-update-audit", "pushing the updated joint Dirichlet through the split matches a local update",
        [&](bool& ok) {
          const HyperParams alpha{1, 1, 1, 1, 1, 1};
          const auto audit = local_update_audit(alpha, 0, 2, std::max(samples, kMinAuditSamples), seed);
          ok = audit.pushforward_mass == 1.0 && audit.matching_candidate.has_value() &&
               audit.max_independence_z <= audit.z_threshold;
          std::string detail = "mass " + num(audit.pushforward_mass) + ", matching candidate " +
                               audit.matching_candidate.value_or("none") + ", stated constant " +
                               to_fraction_string(audit.stated_constant);
          if (audit.constant_tension) detail += " (tension: stated constant is not 1)";
          return detail;
        });
}

}  // namespace

bool is_known_suite(const std::string& suite) {
  return suite == "golden" || suite == "exact" || suite == "stochastic" || suite == "all";
}

std::vector<LawResult> run_verify(const VerifyOptions& options) {
  if (!is_known_suite(options.suite)) throw Error(ErrorKind::kInput, "unknown suite '" + options.suite + "'");
  if (options.resolution < 2) throw Error(ErrorKind::kInput, "resolution must be >= 2");
  std::vector<LawResult> out;
  const bool all = options.suite == "all";
  if (all || options.suite == "golden") golden_suite(out);
  if (all || options.suite == "exact") exact_suite(out, options.seed);
  if (all || options.suite == "stochastic") stochastic_suite(out, options.seed, options.resolution, options.samples);
  return out;
}

std::string render_report(const std::vector<LawResult>& results) {
  std::ostringstream os;
  std::size_t failed = 0;
  for (const auto& r : results) {
    os << (r.passed ? "PASS" : "FAIL") << "  " << r.suite << "/" << r.name << "  [" << r.statement << "]  "
       << r.detail << "\n";
    if (!r.passed) ++failed;
  }
  os << results.size() - failed << "/" << results.size() << " laws passed\n";
  return os.str();
}

bool all_passed(const std::vector<LawResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const LawResult& r) { return r.passed; });
}

}  // namespace cptforge

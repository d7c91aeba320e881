// Randomised law checks on hand-rolled generators. Each generator draws from
// a seeded LCG so failures replay.

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cptforge/bayes.hpp"
#include "cptforge/dirichlet.hpp"
#include "cptforge/dist.hpp"
#include "cptforge/finset.hpp"
#include "cptforge/mle.hpp"
#include "cptforge/netlearn.hpp"
#include "cptforge/random.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cptforge;

namespace {

struct Gen {
  oracle::Lcg lcg;
  explicit Gen(std::uint64_t seed) : lcg(seed) {}

  FinMap map(std::size_t n, std::size_t m) {
    std::vector<std::size_t> t(n);
    for (auto& v : t) v = lcg.below(m);
    return FinMap(t, m);
  }
  FinMap surjection(std::size_t n, std::size_t m) {
    std::vector<std::size_t> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = i < m ? i : lcg.below(m);
    for (std::size_t i = n; i > 1; --i) std::swap(t[i - 1], t[lcg.below(i)]);
    return FinMap(t, m);
  }
  std::vector<Integer> counts(std::size_t n, long lo, long hi) {
    std::vector<Integer> c(n);
    for (auto& v : c) v = lcg.between(lo, hi);
    return c;
  }
  Multiset multiset(std::size_t n, bool nonempty = true) {
    auto c = counts(n, 0, 12);
    if (nonempty) c[lcg.below(n)] += 1;
    return Multiset(c);
  }
  Dist dist(std::size_t n) { return mle(multiset(n)); }
  Predicate predicate(std::size_t n) {
    std::vector<Rational> v(n);
    for (auto& x : v) {
      x = Rational(lcg.between(0, 6), 6);
      x.canonicalize();
    }
    return Predicate(v);
  }
  std::size_t size(std::size_t max) { return 1 + lcg.below(max); }
};

std::vector<Rational> as_vector(const Dist& d) { return {d.probs().begin(), d.probs().end()}; }

}  // namespace

TEST_CASE("property: multiset pushforward matches the oracle and is functorial") {
  Gen g(101);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = g.size(6), m = g.size(6), k = g.size(6);
    const FinMap h = g.map(n, m), f = g.map(m, k);
    const Multiset phi = g.multiset(n, false);
    const std::vector<Integer> raw(phi.counts().begin(), phi.counts().end());
    const std::vector<std::size_t> targets(h.targets().begin(), h.targets().end());
    CHECK(ms_map(h, phi) == Multiset(oracle::push(targets, m, raw)));
    CHECK(ms_map(f.after(h), phi) == ms_map(f, ms_map(h, phi)));
  }
}

TEST_CASE("property: learning is natural") {
  Gen g(102);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = g.size(6), m = g.size(6);
    const FinMap h = g.map(n, m);
    const Multiset phi = g.multiset(n);
    const Dist pushed = mle(ms_map(h, phi));
    CHECK(pushed == dist_map(h, mle(phi)));
    const std::vector<Integer> raw(phi.counts().begin(), phi.counts().end());
    const std::vector<std::size_t> targets(h.targets().begin(), h.targets().end());
    CHECK(as_vector(pushed) == oracle::normalize(oracle::push(targets, m, raw)));
  }
}

TEST_CASE("property: full-support pushforward along surjections stays full") {
  Gen g(103);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = g.size(5), n = m + g.lcg.below(4);
    const FinMap h = g.surjection(n, m);
    const Multiset phi(g.counts(n, 1, 9));
    CHECK(h.is_surjective());
    CHECK(ms_map_full(h, phi).is_full_support());
    const HyperParams alpha(g.counts(n, 1, 9));
    CHECK(aggregate_params(h, alpha).as_multiset() == ms_map(h, alpha.as_multiset()));
    CHECK(aggregate_params(h, alpha).total() == alpha.total());
  }
}

TEST_CASE("property: decomposition commutes with disintegration") {
  Gen g(104);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = g.size(5), m = g.size(5);
    std::vector<Integer> cells;
    for (std::size_t i = 0; i < n; ++i) {
      const Multiset row = g.multiset(m);
      cells.insert(cells.end(), row.counts().begin(), row.counts().end());
    }
    const JointMultiset phi(n, m, cells);
    const auto local = mle_decompose(phi);
    const Dist joint = mle(phi.flat());
    const auto global = disintegrate(JointDist::from_dist(n, m, joint));
    CHECK(local.first == global.first);
    CHECK(local.channel == global.channel);
    CHECK(pair_graph(local.channel, local.first).flat() == joint);
    const auto oracle_rows = oracle::conditional_rows(n, m, as_vector(joint));
    for (std::size_t i = 0; i < n; ++i) CHECK(as_vector(local.channel(i)) == oracle_rows[i]);
  }
}

TEST_CASE("property: learning is monoidal") {
  Gen g(105);
  for (int t = 0; t < 200; ++t) {
    const Multiset a = g.multiset(g.size(5)), b = g.multiset(g.size(5));
    CHECK(mle(ms_tensor(a, b).flat()) == dist_tensor(mle(a), mle(b)).flat());
  }
}

TEST_CASE("property: the learned distribution maximises likelihood on a grid") {
  Gen g(106);
  for (int t = 0; t < 10; ++t) {
    const Multiset phi(g.counts(3, 0, 6));
    if (!phi.is_nonempty()) continue;
    const auto r = grid_maximize_likelihood(phi, 30);
    CHECK(r.best_likelihood <= likelihood(phi, mle(phi)));
    if (30 % phi.total().get_ui() == 0) CHECK(r.best == mle(phi));
  }
}

TEST_CASE("property: conditioning chain rule and point collapse") {
  Gen g(107);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = g.size(6);
    const Dist w = g.dist(n);
    const Predicate p = g.predicate(n), q = g.predicate(n);
    const Rational v = validity(w, p);
    if (v != 0) CHECK(validity(condition(w, p), q) * v == validity(w, p & q));
    const std::size_t i = g.lcg.below(n);
    if (w[i] != 0) CHECK(condition(w, Predicate::point(n, i)) == Dist::point(n, i));
  }
}

TEST_CASE("property: Dirichlet mean equals learning the hyperparameters") {
  Gen g(108);
  for (int t = 0; t < 300; ++t) {
    const HyperParams alpha(g.counts(g.size(7), 1, 40));
    const Multiset data = g.multiset(alpha.size(), false);
    CHECK(dirichlet_mean(alpha) == mle(alpha.as_multiset()));
    std::vector<Integer> posterior(alpha.size());
    for (std::size_t k = 0; k < alpha.size(); ++k) posterior[k] = alpha[k] + data[k];
    const auto want = oracle::normalize(posterior);
    CHECK(as_vector(dirichlet_mean(batch_update(alpha, data))) == want);
    CHECK(validity_transfer_check(alpha, g.predicate(alpha.size())).holds());
  }
}

TEST_CASE("property: conjugate update evaluates as the incremented Dirichlet") {
  Gen g(109);
  Rng rng(109);
  for (int t = 0; t < 100; ++t) {
    const HyperParams alpha(g.counts(2 + g.lcg.below(4), 1, 9));
    const std::size_t i = g.lcg.below(alpha.size());
    const auto cond = cont_condition(SimplexDensity::dirichlet(alpha), lift_predicate(Predicate::point(alpha.size(), i)));
    for (int k = 0; k < 20; ++k) {
      const SimplexPoint x = dirichlet_sample(HyperParams::ones(alpha.size()), rng);
      const double want = dirichlet_pdf(alpha.incremented(i), x);
      CHECK(std::abs(cond(x) - want) <= 1e-9 * want);
    }
  }
}

TEST_CASE("property: ingestion is order-insensitive and additive") {
  Gen g(110);
  std::istringstream gin("node A 2\nnode B 3\nedge A B\n");
  const GraphSpec graph = GraphSpec::parse(gin);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::string> rows;
    for (int r = 0; r < 12; ++r) {
      rows.push_back(std::to_string(g.lcg.below(2)) + "," + std::to_string(g.lcg.below(3)) + "," +
                     std::to_string(g.lcg.below(20)));
    }
    auto join = [](const std::vector<std::string>& rs, std::size_t from, std::size_t to) {
      std::string s = "A,B,count\n";
      for (std::size_t k = from; k < to; ++k) s += rs[k] + "\n";
      return s;
    };
    std::istringstream all(join(rows, 0, rows.size()));
    const Multiset whole = ingest_counts(all, graph).to_multiset();

    std::vector<std::string> shuffled = rows;
    for (std::size_t k = shuffled.size(); k > 1; --k) std::swap(shuffled[k - 1], shuffled[g.lcg.below(k)]);
    std::istringstream perm(join(shuffled, 0, shuffled.size()));
    CHECK(ingest_counts(perm, graph).to_multiset() == whole);

    std::istringstream head(join(rows, 0, 5)), tail(join(rows, 5, rows.size()));
    const Multiset a = ingest_counts(head, graph).to_multiset(), b = ingest_counts(tail, graph).to_multiset();
    std::vector<Integer> sum(a.size());
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = a[k] + b[k];
    CHECK(Multiset(sum) == whole);
  }
}

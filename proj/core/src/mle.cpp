#include "cptforge/mle.hpp"

#include <optional>
#include <string>

#include "cptforge/error.hpp"

namespace cptforge {

Dist mle(const Multiset& phi) {
  if (!phi.is_nonempty()) throw Error(ErrorKind::kEmptyMultiset, "cannot normalise an empty multiset");
  std::vector<Rational> p(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    p[i] = Rational(phi[i], phi.total());
    p[i].canonicalize();
  }
  return Dist(std::move(p));
}

Rational likelihood(const Multiset& phi, const Dist& omega) {
  if (phi.size() != omega.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "likelihood: multiset and distribution sizes differ");
  }
  Rational result = 1;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (phi[i] == 0) continue;
    if (!phi[i].fits_ulong_p()) throw Error(ErrorKind::kInvalidArgument, "likelihood exponent too large");
    const unsigned long e = phi[i].get_ui();
    Rational term;
    mpz_pow_ui(term.get_num_mpz_t(), omega[i].get_num_mpz_t(), e);
    mpz_pow_ui(term.get_den_mpz_t(), omega[i].get_den_mpz_t(), e);
    result *= term;
  }
  return result;
}

Disintegration mle_decompose(const JointMultiset& phi) {
  const auto rows = row_extract(phi);
  std::vector<Dist> channel_rows;
  channel_rows.reserve(rows.size());
  for (const auto& r : rows) channel_rows.push_back(mle(r));
  return {mle(ms_map(FinMap::first_projection(phi.rows(), phi.cols()), phi.flat())),
          Channel(std::move(channel_rows))};
}

MonadCounterexample monad_counterexample() {
  // Index order a, b, c -> 0, 1, 2.
  struct Weighted {
    long weight;
    Multiset inner;
  };
  const std::vector<Weighted> outer = {{1, Multiset{2, 0, 4}}, {2, Multiset{1, 1, 1}}};

  // Multiset multiplication, then normalisation.
  std::vector<Integer> flat(3, 0);
  for (const auto& [w, inner] : outer) {
    for (std::size_t i = 0; i < 3; ++i) flat[i] += w * inner[i];
  }
  Dist first = mle(Multiset(std::move(flat)));

  // Normalise inner and outer, then distribution multiplication.
  Integer outer_total = 0;
  for (const auto& o : outer) outer_total += o.weight;
  std::vector<Rational> mixed(3, 0);
  for (const auto& [w, inner] : outer) {
    const Dist d = mle(inner);
    Rational ow(w, outer_total);
    ow.canonicalize();
    for (std::size_t i = 0; i < 3; ++i) mixed[i] += ow * d[i];
  }
  return {std::move(first), Dist(std::move(mixed))};
}

void for_each_grid_dist(std::size_t n, unsigned steps, const std::function<void(const Dist&)>& visit) {
  if (n == 0 || steps == 0) throw Error(ErrorKind::kInvalidArgument, "grid needs n >= 1 and steps >= 1");
  std::vector<unsigned> numerators(n, 0);
  // Enumerate compositions of `steps` into n parts, last part implied.
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t k, unsigned remaining) {
    if (k + 1 == n) {
      numerators[k] = remaining;
      std::vector<Rational> p(n);
      for (std::size_t i = 0; i < n; ++i) {
        p[i] = Rational(numerators[i], steps);
        p[i].canonicalize();
      }
      visit(Dist(std::move(p)));
      return;
    }
    for (unsigned v = 0; v <= remaining; ++v) {
      numerators[k] = v;
      rec(k + 1, remaining - v);
    }
  };
  rec(0, steps);
}

GridSearchResult grid_maximize_likelihood(const Multiset& phi, unsigned steps) {
  std::optional<GridSearchResult> best;
  std::size_t visited = 0;
  for_each_grid_dist(phi.size(), steps, [&](const Dist& omega) {
    ++visited;
    Rational l = likelihood(phi, omega);
    if (!best || l > best->best_likelihood) best = GridSearchResult{omega, std::move(l), 0};
  });
  best->points_visited = visited;
  return std::move(*best);
}

}  // namespace cptforge

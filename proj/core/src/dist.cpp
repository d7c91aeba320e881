#include "cptforge/dist.hpp"

#include <string>

#include "cptforge/error.hpp"

namespace cptforge {

namespace {

void require_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

Dist::Dist(std::vector<Rational> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw Error(ErrorKind::kInvalidArgument, "distribution over empty set");
  Rational total = 0;
  for (auto& p : probs_) {
    p.canonicalize();
    if (p < 0 || p > 1) throw Error(ErrorKind::kInvalidArgument, "probability outside [0,1]");
    total += p;
  }
  if (total != 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "probabilities sum to " + to_fraction_string(total) + ", not 1");
  }
}

Dist Dist::point(std::size_t n, std::size_t i) {
  std::vector<Rational> p(n, 0);
  p.at(i) = 1;
  return Dist(std::move(p));
}

Dist Dist::uniform(std::size_t n) {
  return Dist(std::vector<Rational>(n, Rational(1, static_cast<unsigned long>(n))));
}

bool Dist::is_full_support() const {
  for (const auto& p : probs_) {
    if (p == 0) return false;
  }
  return true;
}

Channel::Channel(std::vector<Dist> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw Error(ErrorKind::kInvalidArgument, "channel with no rows");
  for (const auto& r : rows_) require_same(r.size(), rows_.front().size(), "channel row sizes");
}

Channel Channel::identity(std::size_t n) { return deterministic(FinMap::identity(n)); }

Channel Channel::deterministic(const FinMap& h) {
  std::vector<Dist> rows;
  rows.reserve(h.domain_size());
  for (std::size_t x = 0; x < h.domain_size(); ++x) rows.push_back(Dist::point(h.codomain_size(), h(x)));
  return Channel(std::move(rows));
}

Predicate::Predicate(std::vector<Rational> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorKind::kInvalidArgument, "predicate over empty set");
  for (auto& v : values_) {
    v.canonicalize();
    if (v < 0 || v > 1) throw Error(ErrorKind::kInvalidArgument, "predicate value outside [0,1]");
  }
}

Predicate Predicate::point(std::size_t n, std::size_t i) {
  std::vector<Rational> v(n, 0);
  v.at(i) = 1;
  return Predicate(std::move(v));
}

Predicate Predicate::truth(std::size_t n) { return Predicate(std::vector<Rational>(n, 1)); }

Predicate Predicate::operator&(const Predicate& other) const {
  require_same(size(), other.size(), "predicate conjunction");
  std::vector<Rational> v(size());
  for (std::size_t i = 0; i < size(); ++i) v[i] = values_[i] * other.values_[i];
  return Predicate(std::move(v));
}

JointDist::JointDist(std::size_t rows, std::size_t cols, std::vector<Rational> probs)
    : rows_(rows), cols_(cols), flat_(std::move(probs)) {
  require_same(rows_ * cols_, flat_.size(), "joint distribution shape");
}

JointDist JointDist::from_dist(std::size_t rows, std::size_t cols, const Dist& flat) {
  return JointDist(rows, cols, std::vector<Rational>(flat.probs().begin(), flat.probs().end()));
}

const Rational& JointDist::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw Error(ErrorKind::kInvalidArgument, "joint index out of range");
  return flat_[i * cols_ + j];
}

Dist dist_map(const FinMap& h, const Dist& omega) {
  require_same(omega.size(), h.domain_size(), "dist_map");
  std::vector<Rational> out(h.codomain_size(), 0);
  for (std::size_t x = 0; x < omega.size(); ++x) out[h(x)] += omega[x];
  return Dist(std::move(out));
}

Dist state_transform(const Channel& c, const Dist& omega) {
  require_same(omega.size(), c.domain_size(), "state_transform");
  std::vector<Rational> out(c.codomain_size(), 0);
  for (std::size_t x = 0; x < omega.size(); ++x) {
    if (omega[x] == 0) continue;
    for (std::size_t y = 0; y < out.size(); ++y) out[y] += c(x)[y] * omega[x];
  }
  return Dist(std::move(out));
}

Channel channel_compose(const Channel& d, const Channel& c) {
  require_same(c.codomain_size(), d.domain_size(), "channel_compose");
  std::vector<Dist> rows;
  rows.reserve(c.domain_size());
  for (const auto& row : c.rows()) rows.push_back(state_transform(d, row));
  return Channel(std::move(rows));
}

Disintegration disintegrate(const JointDist& omega) {
  std::vector<Rational> first(omega.rows(), 0);
  for (std::size_t i = 0; i < omega.rows(); ++i) {
    for (std::size_t j = 0; j < omega.cols(); ++j) first[i] += omega.at(i, j);
  }
  std::vector<Dist> rows;
  rows.reserve(omega.rows());
  for (std::size_t i = 0; i < omega.rows(); ++i) {
    if (first[i] == 0) {
      throw Error(ErrorKind::kNotFullSupport,
                  "first marginal vanishes at " + std::to_string(i) + "; no disintegration");
    }
    std::vector<Rational> row(omega.cols());
    for (std::size_t j = 0; j < omega.cols(); ++j) row[j] = omega.at(i, j) / first[i];
    rows.emplace_back(std::move(row));
  }
  return {Dist(std::move(first)), Channel(std::move(rows))};
}

JointDist pair_graph(const Channel& c, const Dist& omega) {
  require_same(omega.size(), c.domain_size(), "pair_graph");
  std::vector<Rational> out;
  out.reserve(omega.size() * c.codomain_size());
  for (std::size_t x = 0; x < omega.size(); ++x) {
    for (std::size_t y = 0; y < c.codomain_size(); ++y) out.push_back(omega[x] * c(x)[y]);
  }
  return JointDist(omega.size(), c.codomain_size(), std::move(out));
}

JointDist dist_tensor(const Dist& omega, const Dist& rho) {
  std::vector<Rational> out;
  out.reserve(omega.size() * rho.size());
  for (std::size_t i = 0; i < omega.size(); ++i) {
    for (std::size_t j = 0; j < rho.size(); ++j) out.push_back(omega[i] * rho[j]);
  }
  return JointDist(omega.size(), rho.size(), std::move(out));
}

Rational validity(const Dist& omega, const Predicate& p) {
  require_same(omega.size(), p.size(), "validity");
  Rational v = 0;
  for (std::size_t x = 0; x < omega.size(); ++x) v += omega[x] * p[x];
  return v;
}

Dist condition(const Dist& omega, const Predicate& p) {
  const Rational v = validity(omega, p);
  if (v == 0) throw Error(ErrorKind::kZeroValidity, "conditioning on a predicate with zero validity");
  std::vector<Rational> out(omega.size());
  for (std::size_t x = 0; x < omega.size(); ++x) out[x] = omega[x] * p[x] / v;
  return Dist(std::move(out));
}

}  // namespace cptforge

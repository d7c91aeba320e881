#include "cptforge/finset.hpp"

#include <string>

#include "cptforge/error.hpp"

namespace cptforge {

namespace {

void require_positive_size(std::size_t n, const char* what) {
  if (n == 0) throw Error(ErrorKind::kInvalidArgument, std::string(what) + " must be positive");
}

}  // namespace

FinMap::FinMap(std::vector<std::size_t> targets, std::size_t codomain_size)
    : targets_(std::move(targets)), codomain_size_(codomain_size) {
  require_positive_size(targets_.size(), "domain size");
  require_positive_size(codomain_size_, "codomain size");
  for (std::size_t x = 0; x < targets_.size(); ++x) {
    if (targets_[x] >= codomain_size_) {
      throw Error(ErrorKind::kInvalidArgument,
                  "target of " + std::to_string(x) + " is outside the codomain");
    }
  }
}

FinMap FinMap::identity(std::size_t n) {
  std::vector<std::size_t> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = i;
  return FinMap(std::move(t), n);
}

FinMap FinMap::constant(std::size_t n, std::size_t m, std::size_t value) {
  return FinMap(std::vector<std::size_t>(n, value), m);
}

FinMap FinMap::first_projection(std::size_t n, std::size_t m) {
  std::vector<std::size_t> t(n * m);
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = k / m;
  return FinMap(std::move(t), n);
}

FinMap FinMap::second_projection(std::size_t n, std::size_t m) {
  std::vector<std::size_t> t(n * m);
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = k % m;
  return FinMap(std::move(t), m);
}

bool FinMap::is_surjective() const {
  std::vector<bool> hit(codomain_size_, false);
  for (auto y : targets_) hit[y] = true;
  for (bool b : hit) {
    if (!b) return false;
  }
  return true;
}

FinMap FinMap::after(const FinMap& h) const {
  if (h.codomain_size() != domain_size()) {
    throw Error(ErrorKind::kDimensionMismatch, "composing maps with mismatched sizes");
  }
  std::vector<std::size_t> t(h.domain_size());
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = targets_[h(x)];
  return FinMap(std::move(t), codomain_size_);
}

Multiset::Multiset(std::vector<Integer> counts) : counts_(std::move(counts)), total_(0) {
  require_positive_size(counts_.size(), "multiset size");
  for (const auto& c : counts_) {
    if (c < 0) throw Error(ErrorKind::kInvalidArgument, "negative multiplicity");
    total_ += c;
  }
}

Multiset::Multiset(std::initializer_list<long> counts)
    : Multiset(std::vector<Integer>(counts.begin(), counts.end())) {}

Multiset Multiset::zeros(std::size_t n) { return Multiset(std::vector<Integer>(n, 0)); }

bool Multiset::is_full_support() const {
  for (const auto& c : counts_) {
    if (c == 0) return false;
  }
  return true;
}

JointMultiset::JointMultiset(std::size_t rows, std::size_t cols, std::vector<Integer> counts)
    : rows_(rows), cols_(cols), flat_(std::move(counts)) {
  if (rows_ * cols_ != flat_.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "table counts do not match rows x cols");
  }
}

JointMultiset JointMultiset::from_multiset(std::size_t rows, std::size_t cols,
                                           const Multiset& flat) {
  return JointMultiset(rows, cols, std::vector<Integer>(flat.counts().begin(), flat.counts().end()));
}

const Integer& JointMultiset::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw Error(ErrorKind::kInvalidArgument, "table index out of range");
  return flat_[i * cols_ + j];
}

Integer JointMultiset::row_total(std::size_t i) const {
  Integer t = 0;
  for (std::size_t j = 0; j < cols_; ++j) t += at(i, j);
  return t;
}

bool JointMultiset::is_row_positive() const {
  for (std::size_t i = 0; i < rows_; ++i) {
    if (row_total(i) == 0) return false;
  }
  return true;
}

Multiset ms_map(const FinMap& h, const Multiset& phi) {
  if (phi.size() != h.domain_size()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "multiset over " + std::to_string(phi.size()) + " but map domain is " +
                    std::to_string(h.domain_size()));
  }
  std::vector<Integer> out(h.codomain_size(), 0);
  for (std::size_t x = 0; x < phi.size(); ++x) out[h(x)] += phi[x];
  return Multiset(std::move(out));
}

Multiset ms_map_full(const FinMap& h, const Multiset& phi) {
  if (!h.is_surjective()) throw Error(ErrorKind::kNotSurjective, "full-support action needs a surjection");
  if (!phi.is_full_support()) throw Error(ErrorKind::kNotFullSupport, "multiset has a zero entry");
  return ms_map(h, phi);
}

std::vector<Multiset> row_extract(const JointMultiset& phi) {
  std::vector<Multiset> rows;
  rows.reserve(phi.rows());
  for (std::size_t i = 0; i < phi.rows(); ++i) {
    std::vector<Integer> row(phi.cols());
    for (std::size_t j = 0; j < phi.cols(); ++j) row[j] = phi.at(i, j);
    Multiset r(std::move(row));
    if (!r.is_nonempty()) {
      throw Error(ErrorKind::kZeroRow, "row " + std::to_string(i) + " has zero total");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

JointMultiset ms_tensor(const Multiset& phi, const Multiset& psi) {
  std::vector<Integer> out;
  out.reserve(phi.size() * psi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    for (std::size_t j = 0; j < psi.size(); ++j) out.push_back(phi[i] * psi[j]);
  }
  return JointMultiset(phi.size(), psi.size(), std::move(out));
}

}  // namespace cptforge

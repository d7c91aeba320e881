#include "cptforge/numeric.hpp"

#include <cmath>
#include <numbers>

#include "cptforge/error.hpp"

namespace cptforge {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimensionMismatch: return "dimension mismatch";
    case ErrorKind::kNotSurjective: return "map is not surjective";
    case ErrorKind::kNotFullSupport: return "not full support";
    case ErrorKind::kEmptyMultiset: return "empty multiset";
    case ErrorKind::kZeroRow: return "zero row";
    case ErrorKind::kZeroValidity: return "zero validity";
    case ErrorKind::kBoundaryPoint: return "boundary point";
    case ErrorKind::kInvalidArgument: return "invalid argument";
    case ErrorKind::kUnsupportedDimension: return "unsupported dimension";
    case ErrorKind::kInput: return "input error";
  }
  return "unknown";
}

std::string to_fraction_string(const Rational& q) {
  // mpq_class keeps itself canonical: gcd-reduced, positive denominator.
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_fraction(const std::string& text) {
  auto is_integer = [](const std::string& s) {
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start >= s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!is_integer(num) || !is_integer(den) || den[0] == '-' || den[0] == '+') {
    throw Error(ErrorKind::kInput, "malformed fraction '" + text + "'");
  }
  Integer d(den);
  if (d == 0) throw Error(ErrorKind::kInput, "zero denominator in '" + text + "'");
  Rational q(Integer(num[0] == '+' ? num.substr(1) : num), d);
  q.canonicalize();
  return q;
}

double to_double(const Rational& q) { return q.get_d(); }

double log_of(const Integer& z) {
  if (z <= 0) throw Error(ErrorKind::kInvalidArgument, "log of non-positive integer");
  const std::size_t bits = mpz_sizeinbase(z.get_mpz_t(), 2);
  if (bits < 1000) return std::log(z.get_d());
  const std::size_t shift = bits - 64;
  Integer top = z >> shift;
  return std::log(top.get_d()) + static_cast<double>(shift) * std::numbers::ln2;
}

Rational sum(std::span<const Rational> values) {
  Rational total = 0;
  for (const auto& v : values) total += v;
  return total;
}

Integer sum(std::span<const Integer> values) {
  Integer total = 0;
  for (const auto& v : values) total += v;
  return total;
}

void CompensatedSum::add(double value) {
  const double t = sum_ + value;
  if (std::abs(sum_) >= std::abs(value)) {
    compensation_ += (sum_ - t) + value;
  } else {
    compensation_ += (value - t) + sum_;
  }
  sum_ = t;
}

}  // namespace cptforge

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cptforge {

using Integer = mpz_class;
using Rational = mpq_class;

// Renders `a/b` with gcd-reduced terms and b > 0; integers render as `a/1`.
std::string to_fraction_string(const Rational& q);

// Parses `a/b` or a plain integer. Throws Error(kInput) on malformed text or
// a zero denominator.
Rational parse_fraction(const std::string& text);

double to_double(const Rational& q);

// Natural logarithm of a positive big integer without overflowing binary64.
double log_of(const Integer& z);

Rational sum(std::span<const Rational> values);
Integer sum(std::span<const Integer> values);

// Neumaier-compensated running sum; accumulation order is the call order.
class CompensatedSum {
 public:
  void add(double value);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace cptforge

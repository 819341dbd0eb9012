#pragma once

// Exact integer and rational scalars shared by every hkcone module.

#include <gmpxx.h>

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hkcone {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

// Raised when an operation's mathematical precondition does not hold
// (degenerate lattice, non-primitive class, zero section, ...).
class precondition_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised for unreadable/unwritable files and malformed documents.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses "p/q" (lowest terms, q > 0) or a plain integer "p".
Rational parse_rational(std::string_view text);
// Lenient variant used for CLI input: accepts any "p/q" with q != 0.
Rational parse_rational_lenient(std::string_view text);
Integer parse_integer(std::string_view text);

// Lowest-terms "p/q" or "p" when the denominator is 1.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
// gcd of the absolute values; 0 for an all-zero input.
Integer content(std::span<const Integer> values);

Integer floor(const Rational& value);
// floor(sqrt(value)) for value >= 0.
Integer floor_sqrt(const Rational& value);
// Exact square root when value is a perfect square.
bool exact_sqrt(const Integer& value, Integer& root);

int sign(const Integer& value);
int sign(const Rational& value);

RatVector to_rational(std::span<const Integer> values);
bool is_integral(std::span<const Rational> values);

// Splits a comma separated list such as "4,0,-1" or "1/3, 0".
std::vector<std::string> split_list(std::string_view text);

}  // namespace hkcone

#include "hkcone/arith.hpp"

#include <algorithm>
#include <cctype>

namespace hkcone {
namespace {

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  return text;
}

bool looks_like_integer(std::string_view text) {
  if (text.empty()) return false;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return false;
  return std::all_of(text.begin() + static_cast<std::ptrdiff_t>(start), text.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

}  // namespace

Integer parse_integer(std::string_view text) {
  text = trim(text);
  if (!looks_like_integer(text)) {
    throw io_error("not an integer: '" + std::string(text) + "'");
  }
  if (text[0] == '+') text.remove_prefix(1);
  return Integer(std::string(text), 10);
}

Rational parse_rational_lenient(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text));
  }
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw io_error("zero denominator in '" + std::string(text) + "'");
  Rational value(num, den);
  value.canonicalize();
  return value;
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  Rational value = parse_rational_lenient(text);
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den <= 0 || num != value.get_num() || den != value.get_den() || den == 1) {
      throw io_error("rational '" + std::string(text) + "' is not in lowest terms p/q with q > 1");
    }
  }
  return value;
}

std::string to_string(const Rational& value) {
  Rational copy = value;
  copy.canonicalize();
  return copy.get_str();
}

std::string to_string(const Integer& value) { return value.get_str(); }

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Integer content(std::span<const Integer> values) {
  Integer g = 0;
  for (const auto& v : values) g = gcd(g, v);
  return g;
}

Integer floor(const Rational& value) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Integer floor_sqrt(const Rational& value) {
  if (value < 0) throw precondition_error("floor_sqrt of a negative value");
  Integer f = floor(value);
  Integer root;
  mpz_sqrt(root.get_mpz_t(), f.get_mpz_t());
  return root;
}

bool exact_sqrt(const Integer& value, Integer& root) {
  if (value < 0) return false;
  if (mpz_perfect_square_p(value.get_mpz_t()) == 0) return false;
  mpz_sqrt(root.get_mpz_t(), value.get_mpz_t());
  return true;
}

int sign(const Integer& value) { return sgn(value); }
int sign(const Rational& value) { return sgn(value); }

RatVector to_rational(std::span<const Integer> values) {
  return RatVector(values.begin(), values.end());
}

bool is_integral(std::span<const Rational> values) {
  return std::all_of(values.begin(), values.end(),
                     [](const Rational& v) { return v.get_den() == 1; });
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    auto piece = trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
    if (!piece.empty()) parts.emplace_back(piece);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

}  // namespace hkcone

#include "treebar/scalar.hpp"

#include <stdexcept>

namespace treebar {

namespace {

BigInt parse_integer(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer");
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw std::invalid_argument("bad integer '" + std::string(text) + "'");
  BigInt value = 0;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c < '0' || c > '9') throw std::invalid_argument("bad integer '" + std::string(text) + "'");
    value = value * 10 + (c - '0');
  }
  return negative ? BigInt(-value) : value;
}

std::uint64_t mod_of(const BigInt& value, std::uint64_t p) {
  BigInt r = value % p;
  if (r < 0) r += p;
  return r.convert_to<std::uint64_t>();
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  unsigned __int128 result = 1, b = base % p;
  while (exp) {
    if (exp & 1) result = result * b % p;
    b = b * b % p;
    exp >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  BigInt num = parse_integer(text.substr(0, slash));
  BigInt den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (p >= (std::uint64_t{1} << 62)) throw std::invalid_argument("prime too large");
  return Field{p};
}

std::string Field::name() const { return is_rational() ? "Q" : "F" + std::to_string(p_); }

std::uint64_t Field::reduce(const Rational& value) const {
  if (is_rational()) throw std::logic_error("reduce() on the rational field");
  std::uint64_t num = mod_of(boost::multiprecision::numerator(value), p_);
  std::uint64_t den = mod_of(boost::multiprecision::denominator(value), p_);
  if (den == 0) throw std::domain_error(to_string(value) + " has no image in " + name());
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(num) * pow_mod(den, p_ - 2, p_) % p_);
}

Field parse_field(std::string_view text) {
  if (text == "q" || text == "Q" || text == "rational" || text == "rationals") return Field::rationals();
  std::string_view digits = text;
  if (!digits.empty() && (digits[0] == 'F' || digits[0] == 'f')) digits.remove_prefix(1);
  if (digits.empty()) throw std::invalid_argument("bad field '" + std::string(text) + "'");
  std::uint64_t p = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad field '" + std::string(text) + "'");
    p = p * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return Field::prime(p);
}

}  // namespace treebar

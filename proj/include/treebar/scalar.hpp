#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace treebar {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q" or "p" (optionally signed). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

bool is_prime(std::uint64_t n);

/// The ground field used for rank computations: Q or F_p.
class Field {
 public:
  static Field rationals() { return Field{0}; }
  /// Throws std::invalid_argument when p is not prime.
  static Field prime(std::uint64_t p);

  bool is_rational() const { return p_ == 0; }
  std::uint64_t characteristic() const { return p_; }
  std::string name() const;

  /// Image of a rational in F_p. Throws std::domain_error when p divides the denominator.
  std::uint64_t reduce(const Rational& value) const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(std::uint64_t p) : p_{p} {}
  std::uint64_t p_;
};

/// Parses "q", "Q", "rational" or a prime such as "101" / "F101".
Field parse_field(std::string_view text);

}  // namespace treebar

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ffhyper {

using BigInt = boost::multiprecision::cpp_int;

// Exact value num / q^npow. Canonical: q does not divide num unless num == 0,
// and zero is stored as 0 / q^0.
class QPowerRational {
 public:
  QPowerRational(BigInt num, unsigned npow, std::uint32_t q);

  static QPowerRational integer(BigInt value, std::uint32_t q) { return {std::move(value), 0, q}; }

  const BigInt& num() const noexcept { return num_; }
  unsigned npow() const noexcept { return npow_; }
  std::uint32_t q() const noexcept { return q_; }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return npow_ == 0; }
  int sign() const noexcept { return num_.sign(); }

  // num * q^(pow - npow); pow must be >= npow (throws InvalidInput otherwise).
  BigInt scaled_to(unsigned pow) const;

  double to_double() const;
  QPowerRational abs() const { return {boost::multiprecision::abs(num_), npow_, q_}; }

  // "num/q^k" with q written out, e.g. "-2/7^1"; integers print bare.
  std::string to_string() const;
  // Inverse of to_string for the given q.
  static QPowerRational parse(std::string_view text, std::uint32_t q);

  friend QPowerRational operator+(const QPowerRational& a, const QPowerRational& b);
  friend QPowerRational operator-(const QPowerRational& a, const QPowerRational& b);
  friend QPowerRational operator*(const QPowerRational& a, const QPowerRational& b);
  QPowerRational operator-() const { return {-num_, npow_, q_}; }

  friend bool operator==(const QPowerRational& a, const QPowerRational& b) {
    return a.q_ == b.q_ && a.npow_ == b.npow_ && a.num_ == b.num_;
  }
  friend bool operator<(const QPowerRational& a, const QPowerRational& b);
  friend bool operator<=(const QPowerRational& a, const QPowerRational& b) { return !(b < a); }

 private:
  BigInt num_;
  unsigned npow_;
  std::uint32_t q_;
};

BigInt big_pow(std::uint32_t base, unsigned exp);

}  // namespace ffhyper

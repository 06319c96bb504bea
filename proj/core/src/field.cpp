#include "ffhyper/field.hpp"

#include <cassert>

#include <fmt/format.h>

#include "ffhyper/error.hpp"

namespace ffhyper {

namespace {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1U) r = r * base % m;
    base = base * base % m;
    e >>= 1U;
  }
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::int64_t n) noexcept {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Elem smallest_primitive_root(std::uint32_t q) {
  const std::uint64_t m = q - 1;
  const auto factors = prime_factors(m);
  for (std::uint64_t g = 2; g < q; ++g) {
    bool generates = true;
    for (auto p : factors) {
      if (pow_mod(g, m / p, q) == 1) {
        generates = false;
        break;
      }
    }
    if (generates) return static_cast<Elem>(g);
  }
  // q = 3 has g = 2 found above; unreachable for odd primes.
  throw NotPrime(fmt::format("{} has no primitive root", q));
}

PrimeField PrimeField::make(std::int64_t q) {
  if (q == 2) throw NotOdd("q = 2 is excluded: the field must have odd prime order");
  if (!is_prime(q)) throw NotPrime(fmt::format("{} is not prime", q));
  if (q > kMaxModulus) {
    throw InvalidInput(fmt::format("q = {} exceeds the supported maximum {}", q,
                                   kMaxModulus));
  }
  const auto uq = static_cast<std::uint32_t>(q);
  return PrimeField(uq, smallest_primitive_root(uq));
}

PrimeField::PrimeField(std::uint32_t q, Elem g)
    : q_(q), g_(g), dlog_(q, 0), exp_(q - 1, 0) {
  std::uint64_t x = 1;
  for (std::uint32_t k = 0; k + 1 < q; ++k) {
    exp_[k] = static_cast<Elem>(x);
    dlog_[x] = k;
    x = x * g % q;
  }
}

Elem PrimeField::reduce(std::int64_t v) const noexcept {
  auto r = v % static_cast<std::int64_t>(q_);
  if (r < 0) r += q_;
  return static_cast<Elem>(r);
}

Elem PrimeField::add(Elem a, Elem b) const noexcept {
  std::uint32_t s = a + b;
  return s >= q_ ? s - q_ : s;
}

Elem PrimeField::sub(Elem a, Elem b) const noexcept {
  return a >= b ? a - b : a + q_ - b;
}

Elem PrimeField::neg(Elem a) const noexcept { return a == 0 ? 0 : q_ - a; }

Elem PrimeField::mul(Elem a, Elem b) const noexcept {
  return static_cast<Elem>(std::uint64_t{a} * b % q_);
}

Elem PrimeField::pow(Elem a, std::uint64_t e) const noexcept {
  return static_cast<Elem>(pow_mod(a, e, q_));
}

Elem PrimeField::inv(Elem a) const {
  if (a % q_ == 0) throw DivisionByZero("inverse of 0 in F_q");
  return exp_[(order() - dlog_[a]) % order()];
}

std::uint32_t PrimeField::dlog(Elem x) const noexcept {
  assert(x != 0 && x < q_);
  return dlog_[x];
}

Elem PrimeField::exp(std::uint64_t k) const noexcept {
  return exp_[k % order()];
}

int PrimeField::legendre(Elem x) const noexcept {
  if (x == 0) return 0;
  return (dlog_[x] & 1U) == 0 ? 1 : -1;
}

}  // namespace ffhyper

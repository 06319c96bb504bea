#pragma once

#include <cstdint>
#include <vector>

namespace ffhyper {

// Canonical residue in [0, q-1].
using Elem = std::uint32_t;

bool is_prime(std::int64_t n) noexcept;

// The prime field F_q for an odd prime q, with its smallest primitive root
// and the discrete-log / power tables with respect to it.
//
// Immutable after construction; every member function is safe to call
// concurrently.
class PrimeField {
 public:
  // Largest modulus accepted; tables are O(q) and the library targets desk-scale
  // primes.
  static constexpr std::int64_t kMaxModulus = std::int64_t{1} << 24;

  // Throws NotOdd for q == 2, NotPrime for composite (or q < 2), InvalidInput
  // above kMaxModulus.
  static PrimeField make(std::int64_t q);

  std::uint32_t q() const noexcept { return q_; }
  // Order of the multiplicative group, q - 1.
  std::uint32_t order() const noexcept { return q_ - 1; }
  Elem generator() const noexcept { return g_; }

  Elem reduce(std::int64_t v) const noexcept;

  Elem add(Elem a, Elem b) const noexcept;
  Elem sub(Elem a, Elem b) const noexcept;
  Elem neg(Elem a) const noexcept;
  Elem mul(Elem a, Elem b) const noexcept;
  Elem pow(Elem a, std::uint64_t e) const noexcept;
  // Throws DivisionByZero on 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  // k with g^k = x, for x != 0. Undefined for x == 0 (asserted in debug).
  std::uint32_t dlog(Elem x) const noexcept;
  // g^k.
  Elem exp(std::uint64_t k) const noexcept;

  // Legendre symbol: 0 at 0, 1 on nonzero squares, -1 otherwise.
  int legendre(Elem x) const noexcept;

 private:
  PrimeField(std::uint32_t q, Elem g);

  std::uint32_t q_;
  Elem g_;
  std::vector<std::uint32_t> dlog_;  // indexed by x; dlog_[0] unused
  std::vector<Elem> exp_;            // exp_[k] = g^k, k in [0, q-2]
};

// Smallest primitive root modulo an odd prime q.
Elem smallest_primitive_root(std::uint32_t q);

}  // namespace ffhyper

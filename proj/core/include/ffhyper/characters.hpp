#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "ffhyper/field.hpp"

namespace ffhyper {

using CValue = std::complex<double>;

// A multiplicative character chi = omega^index of F_q^x, where omega sends the
// field's primitive root g to exp(2*pi*i/(q-1)). The modulus q - 1 travels
// with the index so that characters of different fields cannot be mixed:
// distinct primes have distinct q - 1.
//
// Convention: chi(0) = 0 for every character, the trivial one included.
class Character {
 public:
  Character(std::int64_t index, std::uint32_t modulus);

  std::uint32_t index() const noexcept { return index_; }
  std::uint32_t modulus() const noexcept { return modulus_; }

  bool is_trivial() const noexcept { return index_ == 0; }
  bool is_quadratic() const noexcept { return 2 * index_ == modulus_; }

  // Throws FieldMismatch when the moduli differ.
  Character operator*(Character other) const;
  Character inverse() const noexcept;
  // Complex conjugation on values coincides with the group inverse.
  Character conj() const noexcept { return inverse(); }
  Character pow(std::int64_t e) const noexcept;

  // chi(-1) = (-1)^index, exact.
  int at_minus_one() const noexcept { return (index_ & 1U) ? -1 : 1; }

  friend bool operator==(Character, Character) = default;

 private:
  std::uint32_t index_;
  std::uint32_t modulus_;
};

// The character group of one prime field together with the shared table of
// (q-1)-th roots of unity used by every evaluation.
class CharacterGroup {
 public:
  explicit CharacterGroup(std::shared_ptr<const PrimeField> field);

  static std::shared_ptr<const CharacterGroup> make(std::int64_t q);

  const PrimeField& field() const noexcept { return *field_; }
  std::shared_ptr<const PrimeField> field_ptr() const noexcept { return field_; }
  std::uint32_t q() const noexcept { return field_->q(); }
  // Number of characters, q - 1.
  std::uint32_t size() const noexcept { return field_->order(); }

  Character character(std::int64_t index) const { return {index, size()}; }
  Character trivial() const { return character(0); }
  Character quadratic() const { return character(size() / 2); }
  Character omega() const { return character(1); }

  // Throws FieldMismatch if chi does not belong to this group.
  void check(Character chi) const;

  // chi(x). The trivial and quadratic characters are evaluated through exact
  // integer paths, never through the trig table.
  CValue eval(Character chi, Elem x) const;
  // exp(2*pi*i*k/(q-1)).
  CValue root(std::uint64_t k) const noexcept { return roots_[k % size()]; }
  std::span<const CValue> roots() const noexcept { return roots_; }

 private:
  std::shared_ptr<const PrimeField> field_;
  std::vector<CValue> roots_;
};

// 1 iff x == 0.
constexpr int delta_elem(Elem x) noexcept { return x == 0 ? 1 : 0; }
// 1 iff chi is trivial.
inline int delta_char(Character chi) noexcept { return chi.is_trivial() ? 1 : 0; }

// exp(2*pi*i*k/n) with the quarter-turn points exact.
CValue unit_root(std::uint64_t k, std::uint64_t n);

}  // namespace ffhyper

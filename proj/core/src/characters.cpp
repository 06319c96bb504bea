#include "ffhyper/characters.hpp"

#include <numbers>

#include <fmt/format.h>

#include "ffhyper/error.hpp"

namespace ffhyper {

Character::Character(std::int64_t index, std::uint32_t modulus) : index_(0), modulus_(modulus) {
  if (modulus == 0) throw InvalidInput("character modulus must be positive");
  auto r = index % static_cast<std::int64_t>(modulus);
  if (r < 0) r += modulus;
  index_ = static_cast<std::uint32_t>(r);
}

Character Character::operator*(Character other) const {
  if (other.modulus_ != modulus_) {
    throw FieldMismatch(fmt::format("characters of F_{} and F_{} cannot be combined",
                                    modulus_ + 1, other.modulus_ + 1));
  }
  return {std::int64_t{index_} + other.index_, modulus_};
}

Character Character::inverse() const noexcept {
  return {-std::int64_t{index_}, modulus_};
}

Character Character::pow(std::int64_t e) const noexcept {
  const auto m = static_cast<std::int64_t>(modulus_);
  auto r = (e % m) * index_ % m;
  return {r, modulus_};
}

CValue unit_root(std::uint64_t k, std::uint64_t n) {
  k %= n;
  if (k == 0) return {1.0, 0.0};
  if (2 * k == n) return {-1.0, 0.0};
  if (4 * k == n) return {0.0, 1.0};
  if (4 * k == 3 * n) return {0.0, -1.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return std::polar(1.0, angle);
}

CharacterGroup::CharacterGroup(std::shared_ptr<const PrimeField> field)
    : field_(std::move(field)) {
  const auto m = field_->order();
  roots_.reserve(m);
  for (std::uint32_t k = 0; k < m; ++k) roots_.push_back(unit_root(k, m));
}

std::shared_ptr<const CharacterGroup> CharacterGroup::make(std::int64_t q) {
  return std::make_shared<const CharacterGroup>(
      std::make_shared<const PrimeField>(PrimeField::make(q)));
}

void CharacterGroup::check(Character chi) const {
  if (chi.modulus() != size()) {
    throw FieldMismatch(fmt::format("character of F_{} used with F_{}",
                                    chi.modulus() + 1, q()));
  }
}

CValue CharacterGroup::eval(Character chi, Elem x) const {
  check(chi);
  if (x % q() == 0) return {0.0, 0.0};
  if (chi.is_trivial()) return {1.0, 0.0};
  if (chi.is_quadratic()) return {static_cast<double>(field_->legendre(x)), 0.0};
  const std::uint64_t k = std::uint64_t{chi.index()} * field_->dlog(x);
  return roots_[k % size()];
}

}  // namespace ffhyper

#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "ffhyper/characters.hpp"

namespace ffhyper {

// Direct O(q) summations. These are the definitions; SumTables memoizes them.
CValue gauss_sum_direct(const CharacterGroup& group, Character chi);
CValue jacobi_sum_direct(const CharacterGroup& group, Character a, Character b);

// Scale-aware closeness: |a - b| <= max(1e-9 * scale, 1e-12).
bool approx_equal(CValue a, CValue b, double scale = 1.0) noexcept;

// Per-field tables of Gauss sums g(chi), Jacobi sums J(A, B) and Greene
// binomial coefficients (A over B) = B(-1) J(A, conj B) / q.
//
// The Gauss table is built once on first use (or warm-started from a cache
// file). Jacobi sums are memoized per unordered index pair; each entry is
// computed at most once under std::call_once, so concurrent readers are safe
// and cached values are bit-identical to the first computation.
class SumTables {
 public:
  explicit SumTables(std::shared_ptr<const CharacterGroup> group);

  static std::shared_ptr<const SumTables> make(std::int64_t q);

  SumTables(const SumTables&) = delete;
  SumTables& operator=(const SumTables&) = delete;

  const CharacterGroup& group() const noexcept { return *group_; }
  const PrimeField& field() const noexcept { return group_->field(); }
  std::uint32_t q() const noexcept { return group_->q(); }

  // g(eps) is exactly -1.
  CValue gauss(Character chi) const;
  std::span<const CValue> gauss_table() const;

  // Sum over x in F_q of A(x) B(1 - x); symmetric.
  CValue jacobi(Character a, Character b) const;
  CValue binomial(Character a, Character b) const;

  // Raw-index variants for inner loops (indices taken mod q - 1, no checks).
  CValue gauss_at(std::int64_t index) const;
  CValue jacobi_at(std::int64_t a, std::int64_t b) const;
  CValue binomial_at(std::int64_t a, std::int64_t b) const;

  // Cache file layout: q as little-endian uint64, then q - 1 (re, im) pairs of
  // IEEE doubles in character-index order.
  void save_gauss(const std::filesystem::path& file) const;
  // Returns false (leaving the table untouched) if the file is missing,
  // malformed, for another q, or fails the g(eps) = -1 check. Must be called
  // before the table is first used.
  bool load_gauss(const std::filesystem::path& file);

  static std::filesystem::path cache_file(const std::filesystem::path& dir, std::uint32_t q);

 private:
  void build_gauss() const;
  std::size_t pair_slot(std::uint32_t a, std::uint32_t b) const noexcept;

  std::shared_ptr<const CharacterGroup> group_;

  mutable std::once_flag gauss_once_;
  mutable std::vector<CValue> gauss_;

  mutable std::unique_ptr<std::once_flag[]> jacobi_once_;
  mutable std::vector<CValue> jacobi_;
};

}  // namespace ffhyper

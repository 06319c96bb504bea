#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace ffhyper {

// Upper bound on primitive operations a single evaluation may perform.
struct WorkBudget {
  static constexpr std::uint64_t kDefaultLimit = 1'000'000'000ULL;

  std::uint64_t limit = kDefaultLimit;

  // Throws Infeasible when cost > limit.
  void require(std::uint64_t cost, std::string_view what) const;
};

// Saturating helpers for cost estimates.
constexpr std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) noexcept {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::uint64_t>::max() / b) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

constexpr std::uint64_t sat_pow(std::uint64_t base, unsigned exp) noexcept {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

}  // namespace ffhyper

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ffhyper/identities.hpp"

namespace ffhyper {

struct StatementInfo {
  std::string_view label;
  std::string_view summary;
};

// Every runnable statement, in canonical output order.
std::span<const StatementInfo> statement_catalog();
bool is_statement(std::string_view label);

// Per-(label, q) RNG seed derived from the user seed.
std::uint64_t instance_seed(std::string_view label, std::uint32_t q, std::uint64_t seed);

// Runs one statement over its instance set for the field of `tables`: full
// parameter grids where they are small, seeded samples otherwise. Failed
// reconstructions become failing reports instead of exceptions. Throws
// InvalidInput for an unknown label and Infeasible past the budget.
std::vector<IdentityReport> run_statement(std::string_view label, const SumTables& tables,
                                          std::uint64_t seed, const WorkBudget& budget = {});

}  // namespace ffhyper

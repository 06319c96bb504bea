#include "ffhyper/budget.hpp"

#include <fmt/format.h>

#include "ffhyper/error.hpp"

namespace ffhyper {

void WorkBudget::require(std::uint64_t cost, std::string_view what) const {
  if (cost > limit) {
    throw Infeasible(fmt::format("{}: estimated cost {} exceeds work budget {}",
                                 what, cost, limit));
  }
}

}  // namespace ffhyper

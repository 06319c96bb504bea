#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ffhyper/identities.hpp"

namespace ffhyper::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInfeasible = 3;

inline constexpr const char* kCacheEnv = "FFHYPER_CACHE_DIR";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { json, csv, text };

struct RunConfig {
  std::vector<std::uint32_t> primes;
  std::vector<std::string> statements;  // canonical order, no duplicates
  std::uint64_t seed = 0;
  std::uint64_t budget = WorkBudget::kDefaultLimit;
  Format format = Format::text;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> cache_dir;
  bool strict = true;
  unsigned jobs = 1;
};

// "a..b" or "a,b,c" (a single prime is a one-element list). In strict mode
// every listed entry and both range endpoints must be odd primes; otherwise
// non-primes are skipped. An empty result is a usage error.
std::vector<std::uint32_t> parse_primes(std::string_view spec, bool strict);
// Comma-separated labels or "all"; returned in catalog order.
std::vector<std::string> parse_statements(std::string_view spec);
Format parse_format(std::string_view text);

// Tables for q, warm-started from (and saved back to) the cache directory.
std::shared_ptr<const SumTables> open_tables(std::uint32_t q,
                                             const std::optional<std::filesystem::path>& cache);

struct VerifyResult {
  std::vector<IdentityReport> reports;   // statement-major, primes ascending
  std::vector<SweepSummary> summaries;   // one per statement
  bool all_pass() const;
};

// Runs every (statement, prime) task on a pool of config.jobs workers; the
// result does not depend on the number of workers. Rethrows the first error
// in task order.
VerifyResult run_verify(const RunConfig& config);

void write_reports(std::ostream& os, std::ostream& err, Format format, const VerifyResult& result);

// Entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ffhyper::cli

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ffhyper/budget.hpp"
#include "ffhyper/hypergeo.hpp"

namespace ffhyper {

using ReportValue = std::variant<CValue, QPowerRational>;

// Absolute tolerance for identities checked in floating point.
inline constexpr double kFloatTolerance = 1e-6;

struct IdentityReport {
  std::string name;       // statement label
  std::uint32_t q = 0;
  std::string instance;   // parameters, e.g. "n=2 k=1 A=[3] B=[] x=3"
  std::optional<std::uint64_t> seed;
  ReportValue lhs;
  ReportValue rhs;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  bool exact() const noexcept { return std::holds_alternative<QPowerRational>(lhs); }
  friend bool operator==(const IdentityReport&, const IdentityReport&) = default;
};

IdentityReport float_report(std::string name, std::uint32_t q, std::string instance, CValue lhs,
                            CValue rhs, double tolerance = kFloatTolerance);
// Passes iff lhs == rhs exactly; residual is |lhs - rhs| as a double.
IdentityReport exact_report(std::string name, std::uint32_t q, std::string instance,
                            const QPowerRational& lhs, const QPowerRational& rhs);
// Passes iff value <= bound; residual is max(0, value - bound).
IdentityReport bound_report(std::string name, std::uint32_t q, std::string instance,
                            const QPowerRational& value, const QPowerRational& bound);

struct SweepSummary {
  std::string statement;
  std::vector<std::uint32_t> primes;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::optional<std::string> first_failure;
  double max_residual = 0.0;
};

SweepSummary summarize(std::string statement, std::span<const std::uint32_t> primes,
                       std::span<const IdentityReport> reports);

// The identity as stated, or with the v = 1 boundary term of the
// substitution y = v(1 - t) restored (see README, "Known defects").
enum class Form { stated, corrected };

// ---------------------------------------------------------------------------
// Identity checks. Each returns a structured report; preconditions on the
// instance raise InvalidInput.
// ---------------------------------------------------------------------------

// _{n+2}F_{n+1}(A.., psi; B.., psi | x)
//   = (-1/q) _{n+1}F_n(x) + (A_0 conj psi over conj psi) prod_i (A_i conj psi over B_i conj psi) conj psi(x).
IdentityReport verify_contiguous(const HyperParams& base, Character psi, Elem x,
                                 const SumTables& tables);

// _{n+1}F_n(A_0..A_{n-k}, phi^k; B_1..B_{n-k}, eps^k | x)
//   = (phi(-1)^k / q) sum_b phi(b) _{n+1-k}F_{n-k}(A..; B.. | b x) _kF_{k-1}(b).
IdentityReport verify_inductive_k(unsigned n, unsigned k, std::span<const Character> uppers,
                                  std::span<const Character> lowers, Elem x,
                                  const SumTables& tables);

// _2F_1(z) _{n+1}F_n(A_0..A_{n-2}, phi, phi; B_1..B_{n-2}, eps, eps | x) as the three-term
// expansion with the Appell F4(phi; phi; eps, eps; z(1-w), w(1-z))* sum over w != 1.
// uppers = A_0..A_{n-2}, lowers = B_1..B_{n-2}; x, z not in {0, 1}.
IdentityReport verify_product(std::span<const Character> uppers, std::span<const Character> lowers,
                              Elem x, Elem z, const SumTables& tables,
                              const WorkBudget& budget = {});

// Product of two _2F_1 as Appell F4 plus a delta correction, for nontrivial A, B
// different from C and z, w != 1.
IdentityReport verify_appell_product(Character a, Character b, Character c, Elem z, Elem w,
                                     const SumTables& tables);

// q^n sum_y F(y) = (-1)^{n+1}, or with weight phi(y): (-phi(-1))^{n+1}. Exact.
IdentityReport first_moment(unsigned n, bool weighted, const SumTables& tables);

// The three Legendre/Clausen trace sums, exact.
std::array<IdentityReport, 3> verify_trace_moments(const SumTables& tables);

// _{n+1}F_n(x) = (phi(-1)^k/q) sum_l phi(l) _{n+1-k}F_{n-k}(l x) _kF_{k-1}(l); when n+1 = 2k
// and x = 1 the squared form sum_l phi(l) _kF_{k-1}(l)^2 = q phi(-1)^k _{2k}F_{2k-1}(1)
// is checked exactly.
IdentityReport second_weighted_moment(unsigned n, unsigned k, Elem x, const SumTables& tables);

// Bridges to point counts:
//   q phi(-1) _2F_1(l) = -a_l(q)                                   (exact)
//   a'_{l/(1-l)}(q)^2 = q + q^2 phi(1-l) _3F_2(l)                   (exact)
IdentityReport verify_legendre_bridge(Elem lambda, const SumTables& tables);
IdentityReport verify_clausen_bridge(Elem lambda, const SumTables& tables);

// (q/(q-1)) sum_psi (A_n conj B_n psi over psi) F(.., A_n psi; .., B_n | x) psi(t)
//   = F(x/(1-t)) conj A_n(1-t)   [- (A_nB_n(-1)/q) F(A_0..A_{n-1}; B_1..B_{n-1} | x) conj A_n B_n(t)].
IdentityReport verify_generating(const HyperParams& params, Elem x, Elem t,
                                 const SumTables& tables, Form form = Form::stated);

// q sum_{psi != eps} F(A..A, psi; eps..eps | x) psi(t)
//   = (q-1) F(x/(1-t)) - (q-2) F(x) + (-1/q)^n        (stated)
//   = (q-1) F(x/(1-t)) +       F(x) + (-1/q)^n        (corrected)
IdentityReport verify_closed_form_sum(Character a, unsigned n, Elem x, Elem t,
                                      const SumTables& tables, Form form = Form::stated);

enum class RemarkLevel { f32, f43 };

// The t = 1 - l^2 specializations at the _3F_2 and _4F_3 levels, with the
// right-hand sides evaluated through Legendre / Clausen traces.
IdentityReport verify_remark_sums(Elem lambda, RemarkLevel level, const SumTables& tables,
                                  Form form = Form::stated);

// ---------------------------------------------------------------------------
// Value estimates for _4F_3(1) and _6F_5(1), evaluated exactly through traces.
// ---------------------------------------------------------------------------

enum class EstimateKind { f43, f65 };

struct EstimateRow {
  std::uint32_t q = 0;
  // _4F_3(1) or _6F_5(1), exact.
  QPowerRational value;
  // |value - 1/q^3| for f43, q^2 |value| for f65.
  QPowerRational deviation;
  // deviation * q for f43 (should stay bounded), deviation for f65.
  double trend = 0.0;
  // 4/q for f43, 12 for f65; unconditional consequences of the Hasse bound.
  QPowerRational bound;
  bool pass = false;
};

EstimateRow estimate_row(std::uint32_t q, EstimateKind which, const WorkBudget& budget = {});

struct EstimateSweep {
  SweepSummary summary;
  std::vector<EstimateRow> rows;
  std::vector<IdentityReport> reports;
};

EstimateSweep estimate_sweep(std::span<const std::uint32_t> primes, EstimateKind which,
                             const WorkBudget& budget = {});
IdentityReport estimate_report(const EstimateRow& row, EstimateKind which);

}  // namespace ffhyper

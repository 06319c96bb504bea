#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "ffhyper/identities.hpp"

namespace ffhyper {

// "re+imi" for complex values, "num/q^k" for exact ones.
std::string format_value(const ReportValue& v);

// Quotes a field when it contains a comma, quote or line break.
std::string csv_escape(std::string_view field);

inline constexpr std::string_view kCsvHeader = "statement,q,instance,lhs,rhs,residual,pass";

void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const IdentityReport& r);
void write_csv(std::ostream& os, std::span<const IdentityReport> reports);

nlohmann::json to_json(const ReportValue& v);
ReportValue value_from_json(const nlohmann::json& j);
nlohmann::json to_json(const IdentityReport& r);
IdentityReport report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SweepSummary& s);
SweepSummary summary_from_json(const nlohmann::json& j);

// An array of report objects followed by one {"kind": "summary", ...} object.
nlohmann::json reports_document(std::span<const IdentityReport> reports,
                                std::span<const SweepSummary> summaries);

void write_text_row(std::ostream& os, const IdentityReport& r);
void write_text_summary(std::ostream& os, const SweepSummary& s);

}  // namespace ffhyper

#include "ffhyper/report_io.hpp"

#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "ffhyper/error.hpp"

namespace ffhyper {

using nlohmann::json;

std::string format_value(const ReportValue& v) {
  if (const auto* c = std::get_if<CValue>(&v)) return fmt::format("{}{:+}i", c->real(), c->imag());
  return std::get<QPowerRational>(v).to_string();
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_csv_header(std::ostream& os) { os << kCsvHeader << '\n'; }

void write_csv_row(std::ostream& os, const IdentityReport& r) {
  fmt::print(os, "{},{},{},{},{},{},{}\n", csv_escape(r.name), r.q, csv_escape(r.instance),
             csv_escape(format_value(r.lhs)), csv_escape(format_value(r.rhs)), r.residual,
             r.pass ? "true" : "false");
}

void write_csv(std::ostream& os, std::span<const IdentityReport> reports) {
  write_csv_header(os);
  for (const auto& r : reports) write_csv_row(os, r);
}

json to_json(const ReportValue& v) {
  if (const auto* c = std::get_if<CValue>(&v)) {
    return {{"kind", "complex"}, {"re", c->real()}, {"im", c->imag()}};
  }
  const auto& e = std::get<QPowerRational>(v);
  return {{"kind", "exact"}, {"num", e.num().str()}, {"npow", e.npow()}, {"q", e.q()}};
}

ReportValue value_from_json(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "complex") return CValue{j.at("re").get<double>(), j.at("im").get<double>()};
  if (kind == "exact") {
    return QPowerRational(BigInt(j.at("num").get<std::string>()), j.at("npow").get<unsigned>(),
                          j.at("q").get<std::uint32_t>());
  }
  throw InvalidInput(fmt::format("unknown value kind '{}'", kind));
}

json to_json(const IdentityReport& r) {
  json j = {{"statement", r.name},      {"q", r.q},
            {"instance", r.instance},   {"seed", nullptr},
            {"lhs", to_json(r.lhs)},    {"rhs", to_json(r.rhs)},
            {"residual", r.residual},   {"tolerance", r.tolerance},
            {"pass", r.pass}};
  if (r.seed) j["seed"] = *r.seed;
  return j;
}

IdentityReport report_from_json(const json& j) {
  IdentityReport r;
  r.name = j.at("statement").get<std::string>();
  r.q = j.at("q").get<std::uint32_t>();
  r.instance = j.at("instance").get<std::string>();
  if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
  r.lhs = value_from_json(j.at("lhs"));
  r.rhs = value_from_json(j.at("rhs"));
  r.residual = j.at("residual").get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  r.pass = j.at("pass").get<bool>();
  return r;
}

json to_json(const SweepSummary& s) {
  json j = {{"statement", s.statement}, {"primes", s.primes},
            {"instances", s.instances}, {"failures", s.failures},
            {"first_failure", nullptr}, {"max_residual", s.max_residual}};
  if (s.first_failure) j["first_failure"] = *s.first_failure;
  return j;
}

SweepSummary summary_from_json(const json& j) {
  SweepSummary s;
  s.statement = j.at("statement").get<std::string>();
  s.primes = j.at("primes").get<std::vector<std::uint32_t>>();
  s.instances = j.at("instances").get<std::size_t>();
  s.failures = j.at("failures").get<std::size_t>();
  if (!j.at("first_failure").is_null()) s.first_failure = j.at("first_failure").get<std::string>();
  s.max_residual = j.at("max_residual").get<double>();
  return s;
}

json reports_document(std::span<const IdentityReport> reports,
                      std::span<const SweepSummary> summaries) {
  json doc = json::array();
  for (const auto& r : reports) doc.push_back(to_json(r));
  json sums = json::array();
  for (const auto& s : summaries) sums.push_back(to_json(s));
  doc.push_back({{"kind", "summary"}, {"statements", std::move(sums)}});
  return doc;
}

void write_text_row(std::ostream& os, const IdentityReport& r) {
  fmt::print(os, "{:<4} {:<22} q={:<4} {}  lhs={} rhs={} residual={:.3e}\n", r.pass ? "ok" : "FAIL",
             r.name, r.q, r.instance, format_value(r.lhs), format_value(r.rhs), r.residual);
}

void write_text_summary(std::ostream& os, const SweepSummary& s) {
  fmt::print(os, "{}: {} instances over {} primes, {} failures, max residual {:.3e}\n", s.statement,
             s.instances, s.primes.size(), s.failures, s.max_residual);
  if (s.first_failure) fmt::print(os, "  first failure: {}\n", *s.first_failure);
}

}  // namespace ffhyper

#include "ffhyper_cli/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <regex>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include "ffhyper/curves.hpp"
#include "ffhyper/error.hpp"
#include "ffhyper/report_io.hpp"
#include "ffhyper/statements.hpp"

namespace ffhyper::cli {

namespace {

std::int64_t parse_int(std::string_view text) {
  std::int64_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw UsageError(fmt::format("'{}' is not an integer", text));
  return v;
}

bool odd_prime(std::int64_t v) { return v > 2 && v <= PrimeField::kMaxModulus && is_prime(v); }

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

// Runs body(i) for i in [0, count) on `jobs` threads. Exceptions are kept per
// index and the lowest-index one is rethrown after all workers finish.
template <typename Body>
void parallel_for(std::size_t count, unsigned jobs, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<std::shared_ptr<const SumTables>> open_all(const RunConfig& config) {
  std::vector<std::shared_ptr<const SumTables>> tables;
  for (auto q : config.primes) tables.push_back(open_tables(q, config.cache_dir));
  return tables;
}

void save_all(const RunConfig& config, const std::vector<std::shared_ptr<const SumTables>>& tables) {
  if (!config.cache_dir) return;
  std::error_code ec;
  std::filesystem::create_directories(*config.cache_dir, ec);
  for (const auto& t : tables) {
    const auto file = SumTables::cache_file(*config.cache_dir, t->q());
    if (!std::filesystem::exists(file)) t->save_gauss(file);
  }
}

class Output {
 public:
  Output(const std::optional<std::filesystem::path>& path, std::ostream& fallback) {
    if (!path) {
      os_ = &fallback;
      return;
    }
    file_.open(*path, std::ios::binary);
    if (!file_) throw UsageError(fmt::format("cannot open '{}' for writing", path->string()));
    os_ = &file_;
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_ = nullptr;
};

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  std::int64_t q = 0;
  std::string fn;
  std::optional<std::int64_t> x, y, lambda, chi, a, b, c, cp;
  std::vector<std::int64_t> upper, lower;
  Format format = Format::text;
  std::uint64_t budget = WorkBudget::kDefaultLimit;
};

struct EvalValue {
  std::string label;
  std::optional<CValue> value;
  std::optional<QPowerRational> exact;
  std::vector<std::pair<std::string, std::string>> extra;
};

Elem need(const std::optional<std::int64_t>& v, const char* flag, const PrimeField& field) {
  if (!v) throw UsageError(fmt::format("--{} is required for this function", flag));
  return field.reduce(*v);
}

Character need_char(const std::optional<std::int64_t>& v, const char* flag,
                    const CharacterGroup& group) {
  if (!v) throw UsageError(fmt::format("--{} is required for this function", flag));
  return group.character(*v);
}

EvalValue evaluate(const EvalArgs& args) {
  const auto tables = SumTables::make(args.q);
  const auto& group = tables->group();
  const auto& field = group.field();
  const WorkBudget budget{args.budget};
  EvalValue r;

  static const std::regex kHyper(R"((\d+)F(\d+))");
  std::smatch m;
  if (std::regex_match(args.fn, m, kHyper)) {
    const auto top = std::stoul(m[1]);
    const auto n = std::stoul(m[2]);
    if (top != n + 1) throw UsageError(fmt::format("'{}' must have the form (n+1)Fn", args.fn));
    HyperParams p = HyperParams::phi_eps(group, n);
    if (!args.upper.empty() || !args.lower.empty()) {
      p.uppers.clear();
      p.lowers.clear();
      for (auto i : args.upper) p.uppers.push_back(group.character(i));
      for (auto i : args.lower) p.lowers.push_back(group.character(i));
      if (p.uppers.size() != n + 1 || p.lowers.size() != n) {
        throw UsageError(fmt::format("{} needs {} --upper and {} --lower characters", args.fn, n + 1, n));
      }
    }
    const Elem x = need(args.x, "x", field);
    budget.require(sat_mul(group.size(), n + 1), "hypergeometric evaluation");
    r.label = fmt::format("{}{}(x={})", args.fn, p.describe(), x);
    r.value = hyper_char(p, x, *tables);
    if (p.is_phi_eps() && n >= 1) {
      try {
        r.exact = hyper_exact_phi(static_cast<unsigned>(n), x, field, budget);
      } catch (const Infeasible&) {
        r.exact = reconstruct(*r.value, static_cast<unsigned>(n), field.q());
      }
    } else if (p.is_phi_eps()) {
      r.exact = reconstruct(*r.value, 0, field.q());
    }
    return r;
  }
  if (args.fn == "gauss") {
    const auto c = need_char(args.chi, "chi", group);
    r.label = fmt::format("g(chi={})", c.index());
    r.value = tables->gauss(c);
  } else if (args.fn == "jacobi") {
    const auto a = need_char(args.a, "a", group);
    const auto b = need_char(args.b, "b", group);
    r.label = fmt::format("J({},{})", a.index(), b.index());
    r.value = tables->jacobi(a, b);
  } else if (args.fn == "binomial") {
    const auto a = need_char(args.a, "a", group);
    const auto b = need_char(args.b, "b", group);
    r.label = fmt::format("({} over {})", a.index(), b.index());
    r.value = tables->binomial(a, b);
  } else if (args.fn == "appell") {
    const auto a = need_char(args.a, "a", group);
    const auto b = need_char(args.b, "b", group);
    const auto c = need_char(args.c, "c", group);
    const auto cp = need_char(args.cp, "cp", group);
    const Elem x = need(args.x, "x", field);
    const Elem y = need(args.y, "y", field);
    budget.require(sat_mul(group.size(), group.size()), "Appell F4 double sum");
    r.label = fmt::format("F4({};{};{},{};{},{})*", a.index(), b.index(), c.index(), cp.index(), x, y);
    r.value = appell_f4(a, b, c, cp, x, y, *tables);
  } else if (args.fn == "trace-legendre" || args.fn == "trace-clausen") {
    const Elem l = need(args.lambda, "lambda", field);
    const bool leg = args.fn == "trace-legendre";
    const auto t = leg ? legendre_trace(field, l) : clausen_trace(field, l);
    r.label = fmt::format("{}(lambda={})", leg ? "a" : "a'", l);
    r.exact = QPowerRational::integer(t.trace, field.q());
    r.extra = {{"points", std::to_string(t.count)}, {"hasse", std::to_string(hasse_bound(field.q()))}};
  } else {
    throw UsageError(fmt::format("unknown function '{}'", args.fn));
  }
  return r;
}

int cmd_eval(const EvalArgs& args, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const auto r = evaluate(args);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (args.format == Format::json) {
    nlohmann::json j = {{"q", args.q}, {"function", r.label}, {"elapsed_ms", ms}};
    j["value"] = r.value ? to_json(ReportValue{*r.value}) : nlohmann::json();
    j["exact"] = r.exact ? to_json(ReportValue{*r.exact}) : nlohmann::json();
    for (const auto& [k, v] : r.extra) j[k] = v;
    out << j.dump(2) << '\n';
    return kExitPass;
  }
  fmt::print(out, "{} over F_{}\n", r.label, args.q);
  if (r.value) fmt::print(out, "value: {}\n", format_value(*r.value));
  if (r.exact) fmt::print(out, "exact: {}\n", r.exact->to_string());
  for (const auto& [k, v] : r.extra) fmt::print(out, "{}: {}\n", k, v);
  fmt::print(out, "elapsed: {:.3f} ms\n", ms);
  return kExitPass;
}

// ---------------------------------------------------------------------------
// sweep

void write_estimate_rows(std::ostream& os, std::ostream& err, Format format, EstimateKind which,
                         const EstimateSweep& sweep) {
  const char* dev_name = which == EstimateKind::f43 ? "abs_value_minus_inv_q3" : "q2_abs_value";
  switch (format) {
    case Format::csv:
      fmt::print(os, "q,value,value_approx,{0},{0}_approx,trend,bound,pass\n", dev_name);
      for (const auto& r : sweep.rows) {
        fmt::print(os, "{},{},{},{},{},{},{},{}\n", r.q, r.value.to_string(), r.value.to_double(),
                   r.deviation.to_string(), r.deviation.to_double(), r.trend, r.bound.to_string(),
                   r.pass ? "true" : "false");
      }
      write_text_summary(err, sweep.summary);
      break;
    case Format::json: {
      nlohmann::json doc = nlohmann::json::array();
      for (const auto& r : sweep.rows) {
        doc.push_back({{"q", r.q},
                       {"value", to_json(ReportValue{r.value})},
                       {"value_approx", r.value.to_double()},
                       {dev_name, to_json(ReportValue{r.deviation})},
                       {"trend", r.trend},
                       {"bound", to_json(ReportValue{r.bound})},
                       {"pass", r.pass}});
      }
      doc.push_back({{"kind", "summary"}, {"statements", {to_json(sweep.summary)}}});
      os << doc.dump(2) << '\n';
      break;
    }
    case Format::text:
      fmt::print(os, "{:>5}  {:>14}  {:>14}  {:>10}  {}\n", "q", "value", dev_name, "trend", "pass");
      for (const auto& r : sweep.rows) {
        fmt::print(os, "{:>5}  {:>14.6e}  {:>14.6e}  {:>10.6f}  {}\n", r.q, r.value.to_double(),
                   r.deviation.to_double(), r.trend, r.pass ? "ok" : "FAIL");
      }
      write_text_summary(os, sweep.summary);
      break;
  }
}

int cmd_sweep(const RunConfig& config, std::string_view which, std::ostream& out, std::ostream& err) {
  Output sink(config.out, out);
  if (which == "moments") {
    RunConfig c = config;
    c.statements = {"first-moment"};
    const auto result = run_verify(c);
    write_reports(sink.stream(), err, config.format, result);
    return result.all_pass() ? kExitPass : kExitFailure;
  }
  EstimateKind kind{};
  if (which == "F43") {
    kind = EstimateKind::f43;
  } else if (which == "F65") {
    kind = EstimateKind::f65;
  } else {
    throw UsageError(fmt::format("--which must be F43, F65 or moments, got '{}'", which));
  }
  EstimateSweep sweep;
  std::vector<std::optional<EstimateRow>> rows(config.primes.size());
  const WorkBudget budget{config.budget};
  parallel_for(rows.size(), config.jobs,
               [&](std::size_t i) { rows[i] = estimate_row(config.primes[i], kind, budget); });
  for (auto& r : rows) {
    sweep.reports.push_back(estimate_report(*r, kind));
    sweep.rows.push_back(std::move(*r));
  }
  sweep.summary = summarize(kind == EstimateKind::f43 ? "estimate-f43" : "estimate-f65",
                            config.primes, sweep.reports);
  write_estimate_rows(sink.stream(), err, config.format, kind, sweep);
  return sweep.summary.failures == 0 ? kExitPass : kExitFailure;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<std::uint32_t> parse_primes(std::string_view spec, bool strict) {
  std::vector<std::uint32_t> out;
  auto take = [&](std::int64_t v, bool endpoint) {
    if (odd_prime(v)) {
      out.push_back(static_cast<std::uint32_t>(v));
    } else if (strict) {
      throw UsageError(fmt::format("{} {} is not an odd prime (use --no-strict to skip)",
                                   endpoint ? "range endpoint" : "entry", v));
    }
  };
  const auto dots = spec.find("..");
  if (dots != std::string_view::npos) {
    const auto lo = parse_int(trim(spec.substr(0, dots)));
    const auto hi = parse_int(trim(spec.substr(dots + 2)));
    if (lo > hi) throw UsageError(fmt::format("empty prime range {}", spec));
    if (hi > PrimeField::kMaxModulus) throw UsageError(fmt::format("range end {} is too large", hi));
    if (strict) {
      take(lo, true);
      out.clear();
      take(hi, true);
      out.clear();
    }
    for (std::int64_t v = std::max<std::int64_t>(lo, 3); v <= hi; ++v) {
      if (odd_prime(v)) out.push_back(static_cast<std::uint32_t>(v));
    }
  } else {
    std::size_t pos = 0;
    while (pos <= spec.size()) {
      const auto comma = spec.find(',', pos);
      const auto item = trim(spec.substr(pos, comma == std::string_view::npos ? spec.npos : comma - pos));
      if (!item.empty()) take(parse_int(item), false);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  if (out.empty()) throw UsageError(fmt::format("no odd primes selected by '{}'", spec));
  return out;
}

std::vector<std::string> parse_statements(std::string_view spec) {
  std::vector<std::string> wanted;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const auto comma = spec.find(',', pos);
    auto item = trim(spec.substr(pos, comma == std::string_view::npos ? spec.npos : comma - pos));
    if (!item.empty()) wanted.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (wanted.empty()) throw UsageError("no statements selected");
  const bool all = std::find(wanted.begin(), wanted.end(), "all") != wanted.end();
  for (const auto& w : wanted) {
    if (w != "all" && !is_statement(w)) throw UsageError(fmt::format("unknown statement '{}'", w));
  }
  std::vector<std::string> out;
  for (const auto& s : statement_catalog()) {
    if (all || std::find(wanted.begin(), wanted.end(), s.label) != wanted.end()) {
      out.emplace_back(s.label);
    }
  }
  return out;
}

Format parse_format(std::string_view text) {
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  if (text == "text") return Format::text;
  throw UsageError(fmt::format("unknown format '{}'", text));
}

std::shared_ptr<const SumTables> open_tables(std::uint32_t q,
                                             const std::optional<std::filesystem::path>& cache) {
  auto tables = std::make_shared<SumTables>(CharacterGroup::make(q));
  if (cache) tables->load_gauss(SumTables::cache_file(*cache, q));
  return tables;
}

bool VerifyResult::all_pass() const {
  return std::all_of(summaries.begin(), summaries.end(),
                     [](const SweepSummary& s) { return s.failures == 0; });
}

VerifyResult run_verify(const RunConfig& config) {
  const auto tables = open_all(config);
  const std::size_t np = config.primes.size();
  const std::size_t tasks = config.statements.size() * np;
  std::vector<std::vector<IdentityReport>> slots(tasks);
  const WorkBudget budget{config.budget};
  parallel_for(tasks, config.jobs, [&](std::size_t i) {
    slots[i] = run_statement(config.statements[i / np], *tables[i % np], config.seed, budget);
  });
  save_all(config, tables);

  VerifyResult result;
  for (std::size_t s = 0; s < config.statements.size(); ++s) {
    const auto first = result.reports.size();
    for (std::size_t p = 0; p < np; ++p) {
      auto& slot = slots[s * np + p];
      std::move(slot.begin(), slot.end(), std::back_inserter(result.reports));
    }
    result.summaries.push_back(
        summarize(config.statements[s], config.primes,
                  std::span(result.reports).subspan(first, result.reports.size() - first)));
  }
  return result;
}

void write_reports(std::ostream& os, std::ostream& err, Format format, const VerifyResult& result) {
  switch (format) {
    case Format::csv:
      write_csv(os, result.reports);
      for (const auto& s : result.summaries) write_text_summary(err, s);
      break;
    case Format::json:
      os << reports_document(result.reports, result.summaries).dump(2) << '\n';
      break;
    case Format::text:
      for (const auto& r : result.reports) write_text_row(os, r);
      for (const auto& s : result.summaries) write_text_summary(os, s);
      break;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian hypergeometric functions over prime fields: evaluate and verify identities"};
  app.require_subcommand(1);

  EvalArgs eval;
  std::string eval_format = "text";
  auto* ev = app.add_subcommand("eval", "evaluate one function at one point");
  ev->add_option("--q", eval.q, "odd prime")->required();
  ev->add_option("--fn", eval.fn, "nFm (e.g. 2F1), gauss, jacobi, binomial, appell, trace-legendre, trace-clausen")
      ->required();
  ev->add_option("--x", eval.x, "argument");
  ev->add_option("--y", eval.y, "second Appell argument");
  ev->add_option("--lambda", eval.lambda, "curve parameter");
  ev->add_option("--upper", eval.upper, "upper character indices A_0..A_n")->delimiter(',');
  ev->add_option("--lower", eval.lower, "lower character indices B_1..B_n")->delimiter(',');
  ev->add_option("--chi", eval.chi, "character index for gauss");
  ev->add_option("--a", eval.a, "character index A");
  ev->add_option("--b", eval.b, "character index B");
  ev->add_option("--c", eval.c, "character index C");
  ev->add_option("--cp", eval.cp, "character index C'");
  ev->add_option("--format", eval_format, "json or text");
  ev->add_option("--budget", eval.budget, "work budget");

  RunConfig config;
  std::string primes = "5..31";
  std::string statements = "all";
  std::string format = "text";
  std::string cache;
  std::string which;
  unsigned jobs = std::max(1U, std::thread::hardware_concurrency());
  auto add_run_options = [&](CLI::App* sub) {
    sub->add_option("--primes", primes, "a..b or a,b,c");
    sub->add_option("--seed", config.seed, "seed for sampled instances");
    sub->add_option("--format", format, "json, csv or text");
    sub->add_option("--out", config.out, "write output to this file");
    sub->add_option("--budget", config.budget, "work budget per evaluation");
    sub->add_option("--cache", cache, "Gauss-sum cache directory");
    sub->add_flag("--strict,!--no-strict", config.strict, "reject non-prime entries (default)");
    sub->add_option("--jobs", jobs, "worker threads");
  };
  auto* ver = app.add_subcommand("verify", "verify identities over a set of primes");
  add_run_options(ver);
  ver->add_option("--statements", statements, "comma-separated labels or all");
  auto* sw = app.add_subcommand("sweep", "estimate and moment trend tables");
  add_run_options(sw);
  sw->add_option("--which", which, "F43, F65 or moments")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (ev->parsed()) {
      eval.format = parse_format(eval_format);
      if (eval.format == Format::csv) throw UsageError("eval supports json or text");
      return cmd_eval(eval, out);
    }
    config.primes = parse_primes(primes, config.strict);
    config.format = parse_format(format);
    config.jobs = jobs;
    if (!cache.empty()) {
      config.cache_dir = cache;
    } else if (const char* env = std::getenv(kCacheEnv); env && *env) {
      config.cache_dir = env;
    }
    if (sw->parsed()) return cmd_sweep(config, which, out, err);
    config.statements = parse_statements(statements);
    Output sink(config.out, out);
    const auto result = run_verify(config);
    write_reports(sink.stream(), err, config.format, result);
    return result.all_pass() ? kExitPass : kExitFailure;
  } catch (const Infeasible& e) {
    fmt::print(err, "infeasible: {}\n", e.what());
    return kExitInfeasible;
  } catch (const UsageError& e) {
    fmt::print(err, "usage: {}\n", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  }
}

}  // namespace ffhyper::cli

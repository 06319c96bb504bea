// Acceptance gate: one PASS/FAIL line per criterion. Exits nonzero if any
// criterion fails. Usage: acceptance <path-to-ffhyper-cli> [trend-dir]

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <sys/wait.h>

#include "ffhyper/curves.hpp"
#include "ffhyper/identities.hpp"
#include "ffhyper/statements.hpp"
#include "oracles.hpp"

using namespace ffhyper;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> notes;
};

struct Tally {
  std::size_t checked = 0;
  std::size_t failed = 0;
  double max_residual = 0.0;
  std::string first;

  void add(const IdentityReport& r) {
    ++checked;
    max_residual = std::max(max_residual, r.residual);
    if (!r.pass && failed++ == 0) first = fmt::format("q={} {} {}", r.q, r.name, r.instance);
  }
  std::string text() const {
    std::string s = fmt::format("{} checks, {} failed, max residual {:.2e}", checked, failed, max_residual);
    if (failed) s += fmt::format("; first: {}", first);
    return s;
  }
};

std::shared_ptr<const SumTables> tables(std::uint32_t q) { return SumTables::make(q); }

Outcome first_moments() {
  Tally t;
  for (auto q : oracle::odd_primes(3, 97)) {
    const auto tb = tables(q);
    for (unsigned n = 1; n <= 3; ++n) {
      for (bool w : {false, true}) {
        try {
          t.add(first_moment(n, w, *tb));
        } catch (const std::exception& e) {
          ++t.checked;
          ++t.failed;
          t.first = e.what();
        }
      }
    }
  }
  return {t.failed == 0, t.text()};
}

Outcome trace_corollary() {
  Tally t;
  for (auto q : oracle::odd_primes(3, 97)) {
    for (const auto& r : verify_trace_moments(*tables(q))) t.add(r);
  }
  return {t.failed == 0, t.text()};
}

Outcome second_moments() {
  Tally t;
  for (auto q : oracle::odd_primes(3, 61)) {
    const auto tb = tables(q);
    for (unsigned k : {2U, 3U}) {
      const auto r = second_weighted_moment(2 * k - 1, k, 1, *tb);
      if (!r.exact()) {
        ++t.failed;
        t.first = "not evaluated exactly";
      }
      t.add(r);
    }
  }
  return {t.failed == 0, t.text()};
}

Outcome trace_bridges() {
  Tally leg, cl;
  for (auto q : oracle::odd_primes(3, 199)) {
    const auto tb = tables(q);
    for (Elem l = 2; l < q; ++l) {
      leg.add(verify_legendre_bridge(l, *tb));
      if (q <= 61) cl.add(verify_clausen_bridge(l, *tb));
    }
  }
  return {leg.failed == 0 && cl.failed == 0,
          fmt::format("legendre q<=199: {}; clausen q<=61: {}", leg.text(), cl.text())};
}

Outcome inductive() {
  Tally t;
  for (std::uint32_t q : {7U, 11U, 13U, 17U}) {
    for (const auto& r : run_statement("inductive", *tables(q), 2024)) t.add(r);
  }
  const bool enough = t.checked >= 100;
  return {enough && t.failed == 0 && t.max_residual < 1e-6, t.text()};
}

Outcome product() {
  Tally grid, sampled;
  {
    const auto tb = tables(7);
    const auto& g = tb->group();
    for (std::int64_t a0 = 0; a0 < g.size(); ++a0) {
      const std::array up{g.character(a0)};
      for (Elem x = 2; x < 7; ++x) {
        for (Elem z = 2; z < 7; ++z) grid.add(verify_product(up, {}, x, z, *tb));
      }
    }
  }
  for (std::uint32_t q : {11U, 13U}) {
    const auto tb = tables(q);
    const auto& g = tb->group();
    std::mt19937_64 rng(instance_seed("product", q, 2024));
    for (int i = 0; i < 12; ++i) {
      const std::array up{g.character(rng() % g.size()), g.character(rng() % g.size())};
      const std::array lo{g.character(rng() % g.size())};
      const Elem x = 2 + rng() % (q - 2);
      const Elem z = 2 + rng() % (q - 2);
      sampled.add(verify_product(up, lo, x, z, *tb));
    }
  }
  return {grid.failed == 0 && sampled.failed == 0 && sampled.checked >= 20,
          fmt::format("q=7 n=2 grid: {}; q in {{11,13}} n=3: {}", grid.text(), sampled.text())};
}

// Runs the generating-function family in the given form over the instance
// sets the criterion names.
std::array<Tally, 3> generating_family(Form form) {
  std::array<Tally, 3> t;
  for (std::uint32_t q : {7U, 11U}) {
    const auto tb = tables(q);
    const auto& g = tb->group();
    std::mt19937_64 rng(instance_seed("generating", q, 2024));
    for (std::size_t n : {1U, 2U}) {
      for (int set = 0; set < 2; ++set) {
        HyperParams p;
        for (std::size_t i = 0; i <= n; ++i) p.uppers.push_back(g.character(rng() % g.size()));
        for (std::size_t i = 0; i < n; ++i) p.lowers.push_back(g.character(rng() % g.size()));
        for (Elem x = 1; x < q; ++x) {
          for (Elem tt = 2; tt < q; ++tt) t[0].add(verify_generating(p, x, tt, *tb, form));
        }
      }
      for (Character a : {g.quadratic(), g.omega()}) {
        for (Elem x = 1; x < q; ++x) {
          for (Elem tt = 2; tt < q; ++tt) t[1].add(verify_closed_form_sum(a, n, x, tt, *tb, form));
        }
      }
    }
  }
  for (std::uint32_t q : {7U, 11U, 13U}) {
    const auto tb = tables(q);
    for (auto level : {RemarkLevel::f32, RemarkLevel::f43}) {
      for (Elem l = 2; l + 1 < q; ++l) t[2].add(verify_remark_sums(l, level, *tb, form));
    }
  }
  return t;
}

Outcome generating() {
  const auto stated = generating_family(Form::stated);
  const auto fixed = generating_family(Form::corrected);
  Outcome o;
  o.pass = stated[0].failed == 0 && stated[1].failed == 0 && stated[2].failed == 0;
  o.detail = fmt::format("theorem: {}; corollary: {}; remark: {}", stated[0].text(), stated[1].text(),
                         stated[2].text());
  o.notes.push_back(fmt::format(
      "with the v = 1 boundary term restored: theorem {}/{} fail, corollary {}/{} fail, remark {}/{} fail",
      fixed[0].failed, fixed[0].checked, fixed[1].failed, fixed[1].checked, fixed[2].failed,
      fixed[2].checked));
  return o;
}

Outcome estimates(const std::filesystem::path& trend_dir) {
  const auto primes = oracle::odd_primes(5, 293);
  const auto f43 = estimate_sweep(primes, EstimateKind::f43);
  const auto f65 = estimate_sweep(primes, EstimateKind::f65);
  Outcome o;
  o.pass = f43.summary.failures == 0 && f65.summary.failures == 0;

  double max43 = 0.0, max65_lo = 0.0, max65_hi = 0.0;
  std::ofstream csv(trend_dir / "acceptance_trends.csv");
  csv << "q,f43_value,f43_dev_times_q,f65_value,f65_q2_abs\n";
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const auto& a = f43.rows[i];
    const auto& b = f65.rows[i];
    csv << fmt::format("{},{},{},{},{}\n", a.q, a.value.to_double(), a.trend, b.value.to_double(), b.trend);
    max43 = std::max(max43, a.trend);
    double& half = i < primes.size() / 2 ? max65_lo : max65_hi;
    half = std::max(half, b.trend);
  }
  o.detail = fmt::format("{} primes; F43 bound failures {}, F65 bound failures {}", primes.size(),
                         f43.summary.failures, f65.summary.failures);
  o.notes.push_back(fmt::format("trend: max q|4F3(1)-1/q^3| = {:.3f} (bounded by 4)", max43));
  o.notes.push_back(fmt::format("trend: max q^2|6F5(1)| lower half {:.3f}, upper half {:.3f}", max65_lo, max65_hi));
  o.notes.push_back(fmt::format("trend table written to {}", (trend_dir / "acceptance_trends.csv").string()));
  return o;
}

Outcome backends() {
  std::size_t checked = 0, bad = 0;
  double worst = 0.0;
  for (std::uint32_t q : {3U, 5U, 7U, 11U, 13U}) {
    const auto tb = tables(q);
    for (unsigned n = 1; n <= 3; ++n) {
      const auto p = HyperParams::phi_eps(tb->group(), n);
      for (Elem x = 0; x < q; ++x) {
        const double d = std::abs(hyper_char(p, x, *tb) - hyper_exact_phi(n, x, tb->field()).to_double());
        worst = std::max(worst, d);
        ++checked;
        if (!(d < 1e-8)) ++bad;
      }
    }
  }
  std::size_t counts = 0, mismatched = 0;
  for (auto q : oracle::odd_primes(3, 31)) {
    const auto f = PrimeField::make(q);
    for (Elem l = 2; l < q; ++l) {
      ++counts;
      if (legendre_trace(f, l).count != oracle::legendre_count(q, l)) ++mismatched;
    }
    for (Elem l = 1; l + 1 < q; ++l) {
      ++counts;
      if (clausen_trace(f, l).count != oracle::clausen_count(q, l)) ++mismatched;
    }
  }
  return {bad == 0 && mismatched == 0,
          fmt::format("{} hypergeometric values, max gap {:.2e}; {} point counts, {} mismatched", checked,
                      worst, counts, mismatched)};
}

struct Captured {
  int code = -1;
  std::string out;
};

Captured capture(const std::string& command) {
  Captured c;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return c;
  std::array<char, 65536> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), n);
  const int status = pclose(pipe);
  c.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return c;
}

Outcome determinism(const std::string& cli) {
  const std::string cmd =
      fmt::format("'{}' verify --statements all --primes 5..31 --seed 42 --format csv 2>/dev/null", cli);
  const auto a = capture(cmd);
  const auto b = capture(cmd);
  const bool same = !a.out.empty() && a.out == b.out;
  Outcome o;
  o.pass = same && a.code == 0 && b.code == 0;
  o.detail = fmt::format("{} bytes, byte-identical: {}, exit codes {} and {}", a.out.size(),
                         same ? "yes" : "no", a.code, b.code);
  if (a.code == 1) {
    o.notes.push_back("exit 1 comes from the stated generating/closed-form/remark statements (criterion 7)");
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    fmt::print(stderr, "usage: {} <ffhyper-cli> [trend-dir]\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  const std::filesystem::path trend_dir = argc > 2 ? argv[2] : ".";

  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0: no runtime limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "first moments, q<=97, n<=3, exact", 120, first_moments},
      {2, "trace-sum identities, q<=97, exact", 60, trace_corollary},
      {3, "second weighted moments, k in {2,3}, q<=61, exact", 0, second_moments},
      {4, "trace bridges, Legendre q<=199, Clausen q<=61, exact", 0, trace_bridges},
      {5, "inductive representation, >=100 seeded instances", 0, inductive},
      {6, "product formula, q=7 grid and seeded q in {11,13}", 0, product},
      {7, "generating function, closed-form sum, remark sums", 0, generating},
      {8, "estimates 5<=q<=293 within Hasse-derived bounds", 300, [&] { return estimates(trend_dir); }},
      {9, "backend equivalence and point counts", 0, backends},
      {10, "verify all 5..31 seed 42: identical csv and exit 0", 0, [&] { return determinism(cli); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = fmt::format("exception: {}", e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs > c.limit_s) {
      o.pass = false;
      o.detail += fmt::format(" (over the {:.0f}s limit)", c.limit_s);
    }
    fmt::print("{} criterion {:>2}: {} [{:.2f}s] {}\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail);
    for (const auto& n : o.notes) fmt::print("     {}\n", n);
    if (!o.pass) ++failed;
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

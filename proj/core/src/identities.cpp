#include "ffhyper/identities.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ffhyper/curves.hpp"
#include "ffhyper/error.hpp"

namespace ffhyper {

namespace {

std::string chars(std::span<const Character> cs) {
  std::string out = "[";
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(cs[i].index());
  }
  return out + ']';
}

QPowerRational integer(std::int64_t v, std::uint32_t q) { return QPowerRational::integer(v, q); }

QPowerRational big_integer(const BigInt& v, std::uint32_t q) { return QPowerRational::integer(v, q); }

// q^2 _3F_2(phi,phi,phi; eps,eps | l) for l != 0, from Clausen traces:
// phi(1 - l)(a'_{l/(1-l)}^2 - q) when l != 1, and the trace-sum identity at l = 1.
std::vector<std::int64_t> scaled_f32_from_traces(const PrimeField& field,
                                                 const std::vector<std::int64_t>& clausen) {
  const std::uint32_t q = field.q();
  std::vector<std::int64_t> out(q, 0);
  for (Elem l = 2; l < q; ++l) {
    const Elem mu = field.div(l, field.sub(1, l));
    const std::int64_t a = clausen[mu];
    out[l] = field.legendre(field.sub(1, l)) * (a * a - std::int64_t{q});
  }
  std::int64_t s = 0;
  for (Elem l = 1; l + 1 < q; ++l) s += field.legendre(field.add(1, l)) * clausen[l] * clausen[l];
  out[1] = -1 - std::int64_t{q} - s;
  return out;
}

void require_nonzero(Elem x, const char* name) {
  if (x == 0) throw InvalidInput(fmt::format("{} must be nonzero", name));
}

}  // namespace

IdentityReport float_report(std::string name, std::uint32_t q, std::string instance, CValue lhs,
                            CValue rhs, double tolerance) {
  IdentityReport r;
  r.name = std::move(name);
  r.q = q;
  r.instance = std::move(instance);
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = std::abs(lhs - rhs);
  r.tolerance = tolerance;
  r.pass = r.residual <= tolerance;
  return r;
}

IdentityReport exact_report(std::string name, std::uint32_t q, std::string instance,
                            const QPowerRational& lhs, const QPowerRational& rhs) {
  IdentityReport r;
  r.name = std::move(name);
  r.q = q;
  r.instance = std::move(instance);
  r.lhs = lhs;
  r.rhs = rhs;
  r.pass = lhs == rhs;
  r.residual = r.pass ? 0.0 : (lhs - rhs).abs().to_double();
  r.tolerance = 0.0;
  return r;
}

IdentityReport bound_report(std::string name, std::uint32_t q, std::string instance,
                            const QPowerRational& value, const QPowerRational& bound) {
  IdentityReport r;
  r.name = std::move(name);
  r.q = q;
  r.instance = std::move(instance);
  r.lhs = value;
  r.rhs = bound;
  r.pass = value <= bound;
  r.residual = r.pass ? 0.0 : (value - bound).to_double();
  r.tolerance = 0.0;
  return r;
}

SweepSummary summarize(std::string statement, std::span<const std::uint32_t> primes,
                       std::span<const IdentityReport> reports) {
  SweepSummary s;
  s.statement = std::move(statement);
  s.primes.assign(primes.begin(), primes.end());
  s.instances = reports.size();
  for (const auto& r : reports) {
    s.max_residual = std::max(s.max_residual, r.residual);
    if (r.pass) continue;
    if (s.failures++ == 0) {
      s.first_failure = fmt::format("q={} {} residual={:.3e}", r.q, r.instance, r.residual);
    }
  }
  return s;
}

IdentityReport verify_contiguous(const HyperParams& base, Character psi, Elem x,
                                 const SumTables& tables) {
  const auto& group = tables.group();
  base.validate(group);
  group.check(psi);
  x %= group.q();
  require_nonzero(x, "x");

  HyperParams ext = base;
  ext.uppers.push_back(psi);
  ext.lowers.push_back(psi);
  const CValue lhs = hyper_char(ext, x, tables);

  const Character bar = psi.inverse();
  CValue prod = tables.binomial(base.uppers[0] * bar, bar);
  for (std::size_t i = 1; i < base.uppers.size(); ++i) {
    prod *= tables.binomial(base.uppers[i] * bar, base.lowers[i - 1] * bar);
  }
  const CValue rhs = -hyper_char(base, x, tables) / static_cast<double>(group.q()) +
                     prod * group.eval(bar, x);
  return float_report("contiguous", group.q(),
                      fmt::format("n={} params={} psi={} x={}", base.n(), base.describe(),
                                  psi.index(), x),
                      lhs, rhs);
}

IdentityReport verify_inductive_k(unsigned n, unsigned k, std::span<const Character> uppers,
                                  std::span<const Character> lowers, Elem x,
                                  const SumTables& tables) {
  if (!(n > k && k >= 1)) {
    throw InvalidInput(fmt::format("inductive representation needs n > k >= 1, got n={} k={}", n, k));
  }
  if (uppers.size() != n - k + 1 || lowers.size() != n - k) {
    throw InvalidInput(fmt::format("expected {} free uppers and {} free lowers", n - k + 1, n - k));
  }
  const auto& group = tables.group();
  const auto& field = group.field();
  x %= group.q();
  require_nonzero(x, "x");

  HyperParams free{{uppers.begin(), uppers.end()}, {lowers.begin(), lowers.end()}};
  HyperParams full = free;
  full.uppers.insert(full.uppers.end(), k, group.quadratic());
  full.lowers.insert(full.lowers.end(), k, group.trivial());
  const CValue lhs = hyper_char(full, x, tables);

  const auto fl = hyper_all_x(free, tables);
  const auto fk = hyper_all_x(HyperParams::phi_eps(group, k - 1), tables);
  CValue sum{0.0, 0.0};
  for (Elem b = 1; b < group.q(); ++b) {
    sum += static_cast<double>(field.legendre(b)) * fl[field.mul(b, x)] * fk[b];
  }
  const int sign = (k % 2 == 1) ? field.legendre(group.q() - 1) : 1;
  const CValue rhs = sum * (static_cast<double>(sign) / group.q());
  return float_report("inductive", group.q(),
                      fmt::format("n={} k={} A={} B={} x={}", n, k, chars(uppers), chars(lowers), x),
                      lhs, rhs);
}

IdentityReport verify_product(std::span<const Character> uppers, std::span<const Character> lowers,
                              Elem x, Elem z, const SumTables& tables, const WorkBudget& budget) {
  const auto& group = tables.group();
  const auto& field = group.field();
  const std::uint32_t q = group.q();
  if (uppers.empty() || lowers.size() + 1 != uppers.size()) {
    throw InvalidInput("product formula needs A_0..A_{n-2} and B_1..B_{n-2} with n >= 2");
  }
  x %= q;
  z %= q;
  if (x == 0 || x == 1 || z == 0 || z == 1) {
    throw InvalidInput(fmt::format("product formula needs x, z outside {{0, 1}}, got x={} z={}", x, z));
  }
  const std::uint64_t m = group.size();
  budget.require(sat_mul(q, sat_mul(m, m)), fmt::format("product formula w-sum over F_{}", q));

  const Character phi = group.quadratic();
  const Character eps = group.trivial();
  HyperParams free{{uppers.begin(), uppers.end()}, {lowers.begin(), lowers.end()}};
  HyperParams full = free;
  full.uppers.insert(full.uppers.end(), {phi, phi});
  full.lowers.insert(full.lowers.end(), {eps, eps});
  const auto f21 = hyper_all_x(HyperParams::phi_eps(group, 1), tables);
  const CValue lhs = f21[z] * hyper_char(full, x, tables);

  const auto ff = hyper_all_x(free, tables);
  const double dq = q;
  const Elem one_minus_z = field.sub(1, z);
  CValue rhs = static_cast<double>(field.legendre(q - 1) * field.legendre(one_minus_z)) /
               (dq * dq) * ff[field.mul(one_minus_z, x)];
  rhs += ff[x] * f21[1] * f21[z] / dq;
  CValue wsum{0.0, 0.0};
  for (Elem w = 0; w < q; ++w) {
    if (w == 1) continue;
    const int pw = field.legendre(w);
    if (pw == 0) continue;
    const Elem u = field.mul(z, field.sub(1, w));
    const Elem v = field.mul(w, one_minus_z);
    wsum += static_cast<double>(pw) * ff[field.mul(w, x)] * appell_f4(phi, phi, eps, eps, u, v, tables);
  }
  rhs += wsum / (dq * dq * dq);
  return float_report("product", q,
                      fmt::format("n={} A={} B={} x={} z={}", uppers.size() + 1, chars(uppers),
                                  chars(lowers), x, z),
                      lhs, rhs);
}

IdentityReport verify_appell_product(Character a, Character b, Character c, Elem z, Elem w,
                                     const SumTables& tables) {
  const auto& group = tables.group();
  const auto& field = group.field();
  for (auto ch : {a, b, c}) group.check(ch);
  if (a.is_trivial() || b.is_trivial() || a == c || b == c) {
    throw InvalidInput("A and B must be nontrivial and different from C");
  }
  z %= group.q();
  w %= group.q();
  if (z == 1 || w == 1) throw InvalidInput("z and w must differ from 1");

  const Character cp = a * b * c.inverse();
  const CValue lhs = hyper_char({{a, b}, {c}}, z, tables) * hyper_char({{a, b}, {cp}}, w, tables);

  auto g = [&](Character ch) { return tables.gauss(ch); };
  const double dq = group.q();
  const CValue coef = static_cast<double>(a.at_minus_one()) * g(b) * g(c.inverse()) *
                      g((a * b).inverse() * c) /
                      (dq * g(b.inverse()) * g(b * c.inverse()) * g(a.inverse() * c));
  const Elem u = field.mul(z, field.sub(1, w));
  const Elem v = field.mul(w, field.sub(1, z));
  CValue rhs = coef * appell_f4(a, b, c, cp, u, v, tables);
  // delta((1 - w - z) / ((1 - z)(1 - w))) with z, w != 1.
  if (field.sub(field.sub(1, w), z) == 0) {
    rhs += dq * static_cast<double>(b.at_minus_one()) * group.eval(a.inverse(), field.sub(1, z)) *
           group.eval(b.inverse() * c, w) * group.eval(c.inverse(), field.sub(1, w)) /
           (g(a) * g(b.inverse()) * g(b * c.inverse()) * g(a.inverse() * c));
  }
  return float_report("appell-product", group.q(),
                      fmt::format("A={} B={} C={} z={} w={}", a.index(), b.index(), c.index(), z, w),
                      lhs, rhs);
}

IdentityReport first_moment(unsigned n, bool weighted, const SumTables& tables) {
  if (n < 1) throw InvalidInput("first moment needs n >= 1");
  const auto& group = tables.group();
  const auto& field = group.field();
  const std::uint32_t q = group.q();
  const auto f = hyper_all_x(HyperParams::phi_eps(group, n), tables);
  QPowerRational sum = integer(0, q);
  for (Elem y = 1; y < q; ++y) {
    const int w = weighted ? field.legendre(y) : 1;
    sum = sum + integer(w, q) * reconstruct(f[y], n, q);
  }
  const QPowerRational lhs = big_integer(big_pow(q, n), q) * sum;
  const int base = weighted ? -field.legendre(q - 1) : -1;
  const int rhs = ((n + 1) % 2 == 0) ? 1 : base;
  return exact_report("first-moment", q,
                      fmt::format("n={} {}", n, weighted ? "weighted" : "unweighted"), lhs,
                      integer(rhs, q));
}

std::array<IdentityReport, 3> verify_trace_moments(const SumTables& tables) {
  const auto& group = tables.group();
  const auto& field = group.field();
  const std::uint32_t q = group.q();
  const std::int64_t pm1 = field.legendre(q - 1);
  const auto a = legendre_traces(field);
  const auto ap = clausen_traces(field);
  const QPowerRational f32 =
      big_integer(big_pow(q, 2), q) *
      reconstruct(hyper_char(HyperParams::phi_eps(group, 2), 1, tables), 2, q);

  std::int64_t s1 = 0;
  for (Elem l = 2; l < q; ++l) s1 += a[l];
  std::int64_t s2 = 0;
  std::int64_t s3 = 0;
  for (Elem l = 1; l + 1 < q; ++l) {
    const std::int64_t sq = ap[l] * ap[l];
    s2 += field.legendre(field.add(1, l)) * sq;
    s3 += field.legendre(l) * sq;
  }
  return {
      exact_report("trace-moments", q, "identity=1", integer(s1 + pm1, q), integer(-1, q)),
      exact_report("trace-moments", q, "identity=2", integer(s2 + q, q) + f32, integer(-1, q)),
      exact_report("trace-moments", q, "identity=3", integer(s3 + std::int64_t{q} * pm1, q) + f32,
                   integer(-pm1, q)),
  };
}

IdentityReport second_weighted_moment(unsigned n, unsigned k, Elem x, const SumTables& tables) {
  if (!(n > k && k >= 1)) {
    throw InvalidInput(fmt::format("second moment needs n > k >= 1, got n={} k={}", n, k));
  }
  const auto& group = tables.group();
  const auto& field = group.field();
  const std::uint32_t q = group.q();
  x %= q;
  require_nonzero(x, "x");
  const int sign = (k % 2 == 1) ? field.legendre(q - 1) : 1;
  const auto fk = hyper_all_x(HyperParams::phi_eps(group, k - 1), tables);
  const std::string instance = fmt::format("n={} k={} x={}", n, k, x);

  if (n + 1 == 2 * k && x == 1) {
    QPowerRational lhs = integer(0, q);
    for (Elem l = 1; l < q; ++l) {
      const QPowerRational v = reconstruct(fk[l], k - 1, q);
      lhs = lhs + integer(field.legendre(l), q) * v * v;
    }
    const QPowerRational top = reconstruct(hyper_char(HyperParams::phi_eps(group, n), 1, tables), n, q);
    const QPowerRational rhs = integer(std::int64_t{q} * sign, q) * top;
    return exact_report("second-moment", q, instance, lhs, rhs);
  }

  const CValue lhs = hyper_char(HyperParams::phi_eps(group, n), x, tables);
  const auto fl = hyper_all_x(HyperParams::phi_eps(group, n - k), tables);
  CValue sum{0.0, 0.0};
  for (Elem l = 1; l < q; ++l) {
    sum += static_cast<double>(field.legendre(l)) * fl[field.mul(l, x)] * fk[l];
  }
  return float_report("second-moment", q, instance, lhs, sum * (static_cast<double>(sign) / q));
}

IdentityReport verify_legendre_bridge(Elem lambda, const SumTables& tables) {
  const auto& group = tables.group();
  const auto& field = group.field();
  const std::uint32_t q = group.q();
  lambda %= q;
  if (lambda == 0 || lambda == 1) throw InvalidInput("Legendre bridge needs lambda outside {0, 1}");
  const auto value = reconstruct(hyper_char(HyperParams::phi_eps(group, 1), lambda, tables), 1, q);
  const QPowerRational lhs = integer(std::int64_t{q} * field.legendre(q - 1), q) * value;
  const std::int64_t a = legendre_trace(field, lambda).trace;
  return exact_report("trace-bridge", q, fmt::format("family=legendre lambda={}", lambda), lhs,
                      integer(-a, q));
}

IdentityReport verify_clausen_bridge(Elem lambda, const SumTables& tables) {
  const auto& group = tables.group();
  const auto& field = group.field();
  const std::uint32_t q = group.q();
  lambda %= q;
  if (lambda == 0 || lambda == 1) throw InvalidInput("Clausen bridge needs lambda outside {0, 1}");
  const Elem mu = field.div(lambda, field.sub(1, lambda));
  const std::int64_t a = clausen_trace(field, mu).trace;
  const auto value = reconstruct(hyper_char(HyperParams::phi_eps(group, 2), lambda, tables), 2, q);
  const QPowerRational rhs =
      integer(q, q) +
      integer(std::int64_t{q} * q * field.legendre(field.sub(1, lambda)), q) * value;
  return exact_report("trace-bridge", q, fmt::format("family=clausen lambda={}", lambda),
                      integer(a * a, q), rhs);
}

IdentityReport verify_generating(const HyperParams& params, Elem x, Elem t, const SumTables& tables,
                                 Form form) {
  const auto& group = tables.group();
  const auto& field = group.field();
  params.validate(group);
  if (params.n() < 1) throw InvalidInput("generating function needs n >= 1");
  x %= group.q();
  t %= group.q();
  require_nonzero(x, "x");
  if (t == 0 || t == 1) throw InvalidInput(fmt::format("t must lie outside {{0, 1}}, got {}", t));

  const Character an = params.uppers.back();
  const Character bn = params.lowers.back();
  const Character shift = an * bn.inverse();
  HyperParams moved = params;
  CValue sum{0.0, 0.0};
  for (std::uint32_t j = 0; j < group.size(); ++j) {
    const Character psi = group.character(j);
    moved.uppers.back() = an * psi;
    sum += tables.binomial(shift * psi, psi) * hyper_char(moved, x, tables) * group.eval(psi, t);
  }
  const double q = group.q();
  const CValue lhs = sum * (q / (q - 1.0));

  const Elem one_minus_t = field.sub(1, t);
  CValue rhs = hyper_char(params, field.div(x, one_minus_t), tables) *
               group.eval(an.inverse(), one_minus_t);
  if (form == Form::corrected) {
    rhs -= static_cast<double>((an * bn).at_minus_one()) / q *
           hyper_char(params.drop_last(), x, tables) * group.eval(an.inverse() * bn, t);
  }
  return float_report(form == Form::stated ? "generating" : "generating-corrected", group.q(),
                      fmt::format("n={} params={} x={} t={}", params.n(), params.describe(), x, t),
                      lhs, rhs);
}

IdentityReport verify_closed_form_sum(Character a, unsigned n, Elem x, Elem t,
                                      const SumTables& tables, Form form) {
  const auto& group = tables.group();
  const auto& field = group.field();
  group.check(a);
  if (a.is_trivial()) throw InvalidInput("closed-form sum needs A != eps");
  if (n < 1) throw InvalidInput("closed-form sum needs n >= 1");
  x %= group.q();
  t %= group.q();
  require_nonzero(x, "x");
  if (t == 0 || t == 1) throw InvalidInput(fmt::format("t must lie outside {{0, 1}}, got {}", t));

  HyperParams base{std::vector<Character>(n + 1, a), std::vector<Character>(n, group.trivial())};
  HyperParams ext = base;
  ext.uppers.push_back(a);
  ext.lowers.push_back(group.trivial());
  CValue sum{0.0, 0.0};
  for (std::uint32_t j = 1; j < group.size(); ++j) {
    const Character psi = group.character(j);
    ext.uppers.back() = psi;
    sum += hyper_char(ext, x, tables) * group.eval(psi, t);
  }
  const double q = group.q();
  const CValue lhs = sum * q;

  const CValue shifted = hyper_char(base, field.div(x, field.sub(1, t)), tables);
  const CValue plain = hyper_char(base, x, tables);
  const double tail = std::pow(-1.0 / q, static_cast<double>(n));
  const CValue rhs = form == Form::stated ? (q - 1.0) * shifted - (q - 2.0) * plain + tail
                                          : (q - 1.0) * shifted + plain + tail;
  return float_report(form == Form::stated ? "closed-form" : "closed-form-corrected", group.q(),
                      fmt::format("n={} A={} x={} t={}", n, a.index(), x, t), lhs, rhs);
}

IdentityReport verify_remark_sums(Elem lambda, RemarkLevel level, const SumTables& tables,
                                  Form form) {
  const auto& group = tables.group();
  const auto& field = group.field();
  const std::uint32_t q = group.q();
  lambda %= q;
  if (lambda == 0 || lambda == 1 || lambda == q - 1) {
    throw InvalidInput(fmt::format("remark sums need lambda outside {{0, 1, -1}}, got {}", lambda));
  }
  const Elem t = field.sub(1, field.mul(lambda, lambda));
  const bool top = level == RemarkLevel::f43;
  const unsigned n = top ? 2 : 1;

  HyperParams ext = HyperParams::phi_eps(group, n + 1);
  CValue sum{0.0, 0.0};
  for (std::uint32_t j = 1; j < group.size(); ++j) {
    const Character psi = group.character(j);
    ext.uppers.back() = psi;
    sum += hyper_char(ext, lambda, tables) * group.eval(psi, t);
  }

  const double dq = q;
  // The lower-level value through point counts, then cross-checked against
  // the character sum.
  double lower = 0.0;
  if (top) {
    const Elem mu = field.div(lambda, field.sub(1, lambda));
    const std::int64_t a = clausen_trace(field, mu).trace;
    lower = field.legendre(field.sub(1, lambda)) * static_cast<double>(a * a - std::int64_t{q}) /
            (dq * dq);
  } else {
    lower = -field.legendre(q - 1) * static_cast<double>(legendre_trace(field, lambda).trace) / dq;
  }
  const CValue direct = hyper_char(HyperParams::phi_eps(group, n), lambda, tables);
  const double cross = std::abs(direct - lower);

  const double chi = top ? field.legendre(field.neg(lambda)) : field.legendre(lambda);
  const double coef = form == Form::stated ? (dq - 1.0) / dq * chi - (dq - 2.0) / dq
                                           : (dq - 1.0) / dq * chi + 1.0 / dq;
  const double tail = top ? 1.0 / (dq * dq * dq) : -1.0 / (dq * dq);
  const CValue rhs{coef * lower + tail, 0.0};

  std::string name = form == Form::stated ? "remark" : "remark-corrected";
  auto r = float_report(std::move(name), q,
                        fmt::format("level={} lambda={}", top ? "4F3" : "3F2", lambda), sum, rhs);
  if (cross > r.residual) {
    r.residual = cross;
    r.pass = r.residual <= r.tolerance;
  }
  return r;
}

EstimateRow estimate_row(std::uint32_t q, EstimateKind which, const WorkBudget& budget) {
  budget.require(sat_mul(q, q), fmt::format("trace table over F_{}", q));
  const auto field = PrimeField::make(q);
  if (which == EstimateKind::f43) {
    // q^3 _4F_3(1) = sum_l phi(l) a_l^2 + 1.
    const auto a = legendre_traces(field);
    BigInt s = 1;
    for (Elem l = 2; l < q; ++l) s += field.legendre(l) * a[l] * a[l];
    QPowerRational dev(boost::multiprecision::abs(s - 1), 3, q);
    QPowerRational bound(4, 1, q);
    const double trend = dev.to_double() * q;
    const bool pass = dev <= bound;
    return {q, QPowerRational(s, 3, q), std::move(dev), trend, std::move(bound), pass};
  }
  // q^5 _6F_5(1) = phi(-1) sum_l phi(l) (q^2 _3F_2(l))^2.
  const auto t = scaled_f32_from_traces(field, clausen_traces(field));
  BigInt s = 0;
  for (Elem l = 1; l < q; ++l) s += BigInt(field.legendre(l)) * t[l] * t[l];
  QPowerRational dev(boost::multiprecision::abs(s), 3, q);
  auto bound = QPowerRational::integer(12, q);
  const double trend = dev.to_double();
  const bool pass = dev <= bound;
  return {q, QPowerRational(s * field.legendre(q - 1), 5, q), std::move(dev), trend,
          std::move(bound), pass};
}

IdentityReport estimate_report(const EstimateRow& row, EstimateKind which) {
  const bool f43 = which == EstimateKind::f43;
  return bound_report(f43 ? "estimate-f43" : "estimate-f65", row.q,
                      f43 ? "|4F3(1)-1/q^3| <= 4/q" : "q^2|6F5(1)| <= 12", row.deviation,
                      row.bound);
}

EstimateSweep estimate_sweep(std::span<const std::uint32_t> primes, EstimateKind which,
                             const WorkBudget& budget) {
  EstimateSweep out;
  for (auto q : primes) {
    out.rows.push_back(estimate_row(q, which, budget));
    out.reports.push_back(estimate_report(out.rows.back(), which));
  }
  out.summary = summarize(which == EstimateKind::f43 ? "estimate-f43" : "estimate-f65", primes,
                          out.reports);
  return out;
}

}  // namespace ffhyper

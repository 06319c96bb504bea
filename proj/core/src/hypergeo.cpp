#include "ffhyper/hypergeo.hpp"

#include <cmath>

#include <fmt/format.h>

#include "ffhyper/error.hpp"

namespace ffhyper {

void HyperParams::validate(const CharacterGroup& group) const {
  if (uppers.size() != lowers.size() + 1) {
    throw InvalidInput(fmt::format("hypergeometric parameters need n+1 uppers and n lowers, got {} and {}",
                                   uppers.size(), lowers.size()));
  }
  for (auto c : uppers) group.check(c);
  for (auto c : lowers) group.check(c);
}

HyperParams HyperParams::phi_eps(const CharacterGroup& group, std::size_t n) {
  return {std::vector<Character>(n + 1, group.quadratic()),
          std::vector<Character>(n, group.trivial())};
}

bool HyperParams::is_phi_eps() const noexcept {
  for (auto c : uppers) {
    if (!c.is_quadratic()) return false;
  }
  for (auto c : lowers) {
    if (!c.is_trivial()) return false;
  }
  return true;
}

HyperParams HyperParams::drop_last() const {
  if (lowers.empty()) throw InvalidInput("cannot descend below _1F_0");
  return {{uppers.begin(), uppers.end() - 1}, {lowers.begin(), lowers.end() - 1}};
}

std::string HyperParams::describe() const {
  std::string out = "[";
  for (std::size_t i = 0; i < uppers.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(uppers[i].index());
  }
  out += ';';
  for (std::size_t i = 0; i < lowers.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(lowers[i].index());
  }
  out += ']';
  return out;
}

namespace {

CValue one_f_zero(Character a0, Elem x, const CharacterGroup& group) {
  if (x == 0) return {0.0, 0.0};
  return group.eval(a0.inverse(), group.field().sub(1, x));
}

}  // namespace

std::vector<CValue> hyper_coefficients(const HyperParams& params, const SumTables& tables) {
  const auto& group = tables.group();
  params.validate(group);
  const std::uint32_t m = group.size();
  std::vector<CValue> coeff(m);
  for (std::uint32_t j = 0; j < m; ++j) {
    CValue c = tables.binomial_at(std::int64_t{params.uppers[0].index()} + j, j);
    for (std::size_t i = 1; i < params.uppers.size(); ++i) {
      c *= tables.binomial_at(std::int64_t{params.uppers[i].index()} + j,
                              std::int64_t{params.lowers[i - 1].index()} + j);
    }
    coeff[j] = c;
  }
  return coeff;
}

CValue hyper_char(const HyperParams& params, Elem x, const SumTables& tables) {
  const auto& group = tables.group();
  params.validate(group);
  x %= group.q();
  if (params.n() == 0) return one_f_zero(params.uppers[0], x, group);
  if (x == 0) return {0.0, 0.0};

  const auto coeff = hyper_coefficients(params, tables);
  const std::uint32_t m = group.size();
  const std::uint64_t d = group.field().dlog(x);
  CValue sum{0.0, 0.0};
  std::uint64_t k = 0;
  for (std::uint32_t j = 0; j < m; ++j) {
    sum += coeff[j] * group.root(k);
    k = (k + d) % m;
  }
  const double q = group.q();
  return sum * (q / (q - 1.0));
}

std::vector<CValue> hyper_all_x(const HyperParams& params, const SumTables& tables) {
  const auto& group = tables.group();
  params.validate(group);
  const std::uint32_t q = group.q();
  std::vector<CValue> out(q, CValue{0.0, 0.0});
  if (params.n() == 0) {
    for (Elem x = 1; x < q; ++x) out[x] = one_f_zero(params.uppers[0], x, group);
    return out;
  }

  const auto coeff = hyper_coefficients(params, tables);
  const std::uint32_t m = group.size();
  const auto roots = group.roots();
  const double scale = static_cast<double>(q) / (q - 1.0);
  for (Elem x = 1; x < q; ++x) {
    const std::uint32_t d = group.field().dlog(x);
    CValue sum{0.0, 0.0};
    std::uint32_t k = 0;
    for (std::uint32_t j = 0; j < m; ++j) {
      sum += coeff[j] * roots[k];
      k += d;
      if (k >= m) k -= m;
    }
    out[x] = sum * scale;
  }
  return out;
}

QPowerRational hyper_exact_phi(unsigned n, Elem x, const PrimeField& field, const WorkBudget& budget) {
  if (n < 1) throw InvalidInput("hyper_exact_phi needs n >= 1");
  const std::uint32_t q = field.q();
  budget.require(sat_pow(q, n), fmt::format("exact _{}F_{} over F_{}", n + 1, n, q));
  x %= q;
  if (x == 0) return QPowerRational::integer(0, q);

  // weight[y] = phi(y) phi(1 - y); zero at y = 0, 1.
  std::vector<int> weight(q, 0);
  std::vector<Elem> active;
  for (Elem y = 2; y < q; ++y) {
    weight[y] = field.legendre(y) * field.legendre(field.sub(1, y));
    if (weight[y] != 0) active.push_back(y);
  }

  // Depth-first over (y_1, .., y_n) carrying the running weight and product.
  auto innermost = [&](Elem prod) {
    std::int64_t s = 0;
    for (Elem y : active) {
      const Elem p = field.mul(prod, y);
      s += weight[y] * field.legendre(field.sub(1, p));
    }
    return s;
  };
  auto descend = [&](auto&& self, unsigned depth, Elem prod) -> std::int64_t {
    if (depth == 1) return innermost(prod);
    std::int64_t s = 0;
    for (Elem y : active) s += weight[y] * self(self, depth - 1, field.mul(prod, y));
    return s;
  };

  BigInt total = 0;
  if (n == 1) {
    total = innermost(x);
  } else {
    // Accumulate per outermost variable so each partial fits in 64 bits.
    for (Elem y : active) total += BigInt(weight[y] * descend(descend, n - 1, field.mul(x, y)));
  }
  if (n % 2 == 1 && field.legendre(q - 1) == -1) total = -total;
  return {total, n, q};
}

CValue hyper_inductive_step(const HyperParams& params, Elem x, const SumTables& tables) {
  const auto& group = tables.group();
  params.validate(group);
  if (params.n() < 1) throw InvalidInput("inductive step needs n >= 1");
  const auto& field = group.field();
  x %= group.q();
  if (x == 0) return {0.0, 0.0};

  const auto lower = hyper_all_x(params.drop_last(), tables);
  const Character an = params.uppers.back();
  const Character bn = params.lowers.back();
  const Character tail = an.inverse() * bn;
  CValue sum{0.0, 0.0};
  for (Elem y = 2; y < group.q(); ++y) {
    sum += lower[field.mul(x, y)] * group.eval(an, y) * group.eval(tail, field.sub(1, y));
  }
  return sum * (static_cast<double>((an * bn).at_minus_one()) / group.q());
}

CValue appell_f4(Character a, Character b, Character c, Character cp, Elem x, Elem y,
                 const SumTables& tables) {
  const auto& group = tables.group();
  for (auto ch : {a, b, c, cp}) group.check(ch);
  const auto& field = group.field();
  x %= group.q();
  y %= group.q();
  if (x == 0 || y == 0) return {0.0, 0.0};

  const auto g = tables.gauss_table();
  const auto m = static_cast<std::int64_t>(group.size());
  auto at = [&](std::int64_t k) {
    k %= m;
    if (k < 0) k += m;
    return g[static_cast<std::size_t>(k)];
  };
  const CValue den = at(a.index()) * at(b.index()) * at(-std::int64_t{c.index()}) *
                     at(-std::int64_t{cp.index()});
  const std::int64_t dx = field.dlog(x);
  const std::int64_t dy = field.dlog(y);

  CValue sum{0.0, 0.0};
  for (std::int64_t chi = 0; chi < m; ++chi) {
    const CValue chi_part = at(-std::int64_t{c.index()} - chi) * at(-chi);
    for (std::int64_t lam = 0; lam < m; ++lam) {
      const CValue term = at(a.index() + chi + lam) * at(b.index() + chi + lam) *
                          at(-std::int64_t{cp.index()} - lam) * at(-lam);
      sum += chi_part * term * group.root(static_cast<std::uint64_t>((chi * dx + lam * dy) % m));
    }
  }
  const double norm = static_cast<double>(m) * static_cast<double>(m);
  return sum / den / norm;
}

QPowerRational reconstruct(CValue v, unsigned npow, std::uint32_t q) {
  const double scale = std::pow(static_cast<double>(q), static_cast<double>(npow));
  const CValue s = v * scale;
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag()) || std::abs(s.real()) > 9.0e15) {
    throw NotRational(fmt::format("value scaled by {}^{} is out of exact double range", q, npow),
                      std::abs(s.real()));
  }
  if (std::abs(s.imag()) >= kReconstructThreshold) {
    throw NotRational(fmt::format("imaginary part {} after scaling by {}^{}", s.imag(), q, npow),
                      std::abs(s.imag()));
  }
  const double nearest = std::round(s.real());
  const double residual = std::abs(s.real() - nearest);
  if (residual >= kReconstructThreshold) {
    throw NotRational(fmt::format("{} is {} away from an integer after scaling by {}^{}", s.real(),
                                  residual, q, npow),
                      residual);
  }
  return {BigInt(static_cast<long long>(nearest)), npow, q};
}

}  // namespace ffhyper

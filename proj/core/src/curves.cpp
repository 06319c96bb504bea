#include "ffhyper/curves.hpp"

#include <fmt/format.h>

#include "ffhyper/error.hpp"

namespace ffhyper {

namespace {

template <typename Cubic>
TraceRecord count_points(const PrimeField& field, Elem lambda, Cubic&& cubic) {
  std::int64_t s = 0;
  for (Elem x = 0; x < field.q(); ++x) s += field.legendre(cubic(x));
  const std::int64_t trace = -s;
  return {lambda, trace, std::int64_t{field.q()} + 1 - trace};
}

}  // namespace

std::int64_t hasse_bound(std::uint32_t q) noexcept {
  // Largest b with b^2 <= 4q.
  std::int64_t b = 0;
  while ((b + 1) * (b + 1) <= 4 * std::int64_t{q}) ++b;
  return b;
}

TraceRecord legendre_trace(const PrimeField& field, Elem lambda) {
  lambda %= field.q();
  if (lambda == 0 || lambda == 1) {
    throw SingularParameter(fmt::format("Legendre curve is singular at lambda = {}", lambda));
  }
  return count_points(field, lambda, [&](Elem x) {
    return field.mul(field.mul(x, field.sub(x, 1)), field.sub(x, lambda));
  });
}

TraceRecord clausen_trace(const PrimeField& field, Elem lambda) {
  lambda %= field.q();
  if (lambda == 0 || lambda == field.q() - 1) {
    throw SingularParameter(fmt::format("Clausen curve is singular at lambda = {}", lambda));
  }
  return count_points(field, lambda, [&](Elem x) {
    return field.mul(field.sub(x, 1), field.add(field.mul(x, x), lambda));
  });
}

std::vector<std::int64_t> legendre_traces(const PrimeField& field) {
  std::vector<std::int64_t> out(field.q(), 0);
  for (Elem l = 2; l < field.q(); ++l) out[l] = legendre_trace(field, l).trace;
  return out;
}

std::vector<std::int64_t> clausen_traces(const PrimeField& field) {
  std::vector<std::int64_t> out(field.q(), 0);
  for (Elem l = 1; l + 1 < field.q(); ++l) out[l] = clausen_trace(field, l).trace;
  return out;
}

}  // namespace ffhyper

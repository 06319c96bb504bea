#pragma once

#include <cstdint>
#include <vector>

#include "ffhyper/field.hpp"

namespace ffhyper {

// Frobenius trace of one member of a curve family over F_q.
struct TraceRecord {
  Elem lambda = 0;
  std::int64_t trace = 0;
  // #E(F_q), point at infinity included; always q + 1 - trace.
  std::int64_t count = 0;
};

// E_lambda: y^2 = x(x - 1)(x - lambda). Throws SingularParameter for lambda in {0, 1}.
TraceRecord legendre_trace(const PrimeField& field, Elem lambda);

// E'_lambda: y^2 = (x - 1)(x^2 + lambda). Throws SingularParameter for lambda in {0, -1}.
TraceRecord clausen_trace(const PrimeField& field, Elem lambda);

// Traces indexed by lambda in [0, q-1]; singular parameters hold 0.
std::vector<std::int64_t> legendre_traces(const PrimeField& field);
std::vector<std::int64_t> clausen_traces(const PrimeField& field);

// floor(2 sqrt(q)).
std::int64_t hasse_bound(std::uint32_t q) noexcept;

}  // namespace ffhyper

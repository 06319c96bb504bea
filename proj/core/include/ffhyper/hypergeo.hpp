#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ffhyper/budget.hpp"
#include "ffhyper/charsums.hpp"
#include "ffhyper/qrational.hpp"

namespace ffhyper {

// Parameters of _{n+1}F_n(A_0, ..., A_n; B_1, ..., B_n | x).
struct HyperParams {
  std::vector<Character> uppers;  // A_0 .. A_n
  std::vector<Character> lowers;  // B_1 .. B_n

  // The n in _{n+1}F_n.
  std::size_t n() const noexcept { return lowers.size(); }

  // Throws InvalidInput on a length mismatch, FieldMismatch on foreign characters.
  void validate(const CharacterGroup& group) const;

  // All uppers phi, all lowers eps.
  static HyperParams phi_eps(const CharacterGroup& group, std::size_t n);
  bool is_phi_eps() const noexcept;

  // (A_0 .. A_{n-1}; B_1 .. B_{n-1}); requires n >= 1.
  HyperParams drop_last() const;

  // e.g. "[3,3;0]" (character indices).
  std::string describe() const;
};

// Greene's character-sum definition
//   (q/(q-1)) sum_chi (A_0 chi over chi) prod_i (A_i chi over B_i chi) chi(x),
// and the closed form eps(x) conj(A_0)(1 - x) when n = 0.
CValue hyper_char(const HyperParams& params, Elem x, const SumTables& tables);

// c(chi) = (A_0 chi over chi) prod_i (A_i chi over B_i chi), indexed by chi.
std::vector<CValue> hyper_coefficients(const HyperParams& params, const SumTables& tables);

// hyper_char at every x in F_q (entry 0 is 0), from one coefficient vector.
std::vector<CValue> hyper_all_x(const HyperParams& params, const SumTables& tables);

// Exact _{n+1}F_n(phi..phi; eps..eps | x) by the fully unrolled nested sum
//   (phi(-1)^n / q^n) sum_{y_1..y_n} prod_i phi(y_i) phi(1 - y_i)
//                          * eps(x y_1..y_n) phi(1 - x y_1..y_n),
// integer Legendre arithmetic only. Cost ~ q^n; throws Infeasible beyond budget.
QPowerRational hyper_exact_phi(unsigned n, Elem x, const PrimeField& field,
                               const WorkBudget& budget = {});

// One descent step of the inductive representation:
//   (A_n B_n(-1)/q) sum_y F(A_0..A_{n-1}; B_1..B_{n-1} | x y) A_n(y) conj(A_n) B_n(1 - y).
// Requires n >= 1.
CValue hyper_inductive_step(const HyperParams& params, Elem x, const SumTables& tables);

// Finite-field Appell series F4(A; B; C, C'; x, y)*: the double character sum
// of Gauss-sum ratios, normalized by 1/(q-1)^2.
CValue appell_f4(Character a, Character b, Character c, Character cp, Elem x, Elem y,
                 const SumTables& tables);

// Distance beyond which reconstruction rejects a scaled value.
inline constexpr double kReconstructThreshold = 0.01;

// Scales v by q^npow, checks that the imaginary part and the distance to the
// nearest integer are both below kReconstructThreshold, and returns that
// integer over q^npow. Throws NotRational with the residual otherwise.
QPowerRational reconstruct(CValue v, unsigned npow, std::uint32_t q);

}  // namespace ffhyper

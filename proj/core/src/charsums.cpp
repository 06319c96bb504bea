#include "ffhyper/charsums.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>

#include <fmt/format.h>

#include "ffhyper/error.hpp"

namespace ffhyper {

namespace {

void put_u64_le(std::ostream& os, std::uint64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(buf), 8);
}

bool get_u64_le(std::istream& is, std::uint64_t& v) {
  unsigned char buf[8];
  if (!is.read(reinterpret_cast<char*>(buf), 8)) return false;
  v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{buf[i]} << (8 * i);
  return true;
}

void put_f64_le(std::ostream& os, double d) { put_u64_le(os, std::bit_cast<std::uint64_t>(d)); }

bool get_f64_le(std::istream& is, double& d) {
  std::uint64_t bits = 0;
  if (!get_u64_le(is, bits)) return false;
  d = std::bit_cast<double>(bits);
  return true;
}

}  // namespace

CValue gauss_sum_direct(const CharacterGroup& group, Character chi) {
  group.check(chi);
  if (chi.is_trivial()) return {-1.0, 0.0};
  const auto& field = group.field();
  const std::uint32_t q = field.q();
  CValue sum{0.0, 0.0};
  for (Elem x = 1; x < q; ++x) sum += group.eval(chi, x) * unit_root(x, q);
  return sum;
}

CValue jacobi_sum_direct(const CharacterGroup& group, Character a, Character b) {
  group.check(a);
  group.check(b);
  const auto& field = group.field();
  CValue sum{0.0, 0.0};
  // x = 0 and x = 1 vanish under chi(0) = 0.
  for (Elem x = 2; x < field.q(); ++x) {
    sum += group.eval(a, x) * group.eval(b, field.sub(1, x));
  }
  return sum;
}

bool approx_equal(CValue a, CValue b, double scale) noexcept {
  return std::abs(a - b) <= std::max(1e-9 * scale, 1e-12);
}

SumTables::SumTables(std::shared_ptr<const CharacterGroup> group) : group_(std::move(group)) {
  const std::size_t m = group_->size();
  const std::size_t pairs = m * (m + 1) / 2;
  jacobi_once_ = std::make_unique<std::once_flag[]>(pairs);
  jacobi_.assign(pairs, CValue{});
}

std::shared_ptr<const SumTables> SumTables::make(std::int64_t q) {
  return std::make_shared<const SumTables>(CharacterGroup::make(q));
}

void SumTables::build_gauss() const {
  std::call_once(gauss_once_, [this] {
    const auto m = group_->size();
    std::vector<CValue> table(m);
    for (std::uint32_t j = 0; j < m; ++j) table[j] = gauss_sum_direct(*group_, group_->character(j));
    gauss_ = std::move(table);
  });
}

CValue SumTables::gauss(Character chi) const {
  group_->check(chi);
  return gauss_at(chi.index());
}

CValue SumTables::gauss_at(std::int64_t index) const {
  build_gauss();
  const auto m = static_cast<std::int64_t>(group_->size());
  auto r = index % m;
  if (r < 0) r += m;
  return gauss_[static_cast<std::size_t>(r)];
}

std::span<const CValue> SumTables::gauss_table() const {
  build_gauss();
  return gauss_;
}

std::size_t SumTables::pair_slot(std::uint32_t a, std::uint32_t b) const noexcept {
  if (a > b) std::swap(a, b);
  // Row a of the upper triangle starts after rows 0..a-1 of lengths m, m-1, ...
  const std::size_t m = group_->size();
  return std::size_t{a} * m - std::size_t{a} * (a - 1) / 2 + (b - a);
}

CValue SumTables::jacobi(Character a, Character b) const {
  group_->check(a);
  group_->check(b);
  return jacobi_at(a.index(), b.index());
}

CValue SumTables::jacobi_at(std::int64_t a, std::int64_t b) const {
  const auto m = static_cast<std::int64_t>(group_->size());
  auto ra = static_cast<std::uint32_t>(((a % m) + m) % m);
  auto rb = static_cast<std::uint32_t>(((b % m) + m) % m);
  if (ra > rb) std::swap(ra, rb);
  const auto slot = pair_slot(ra, rb);
  std::call_once(jacobi_once_[slot], [&] {
    jacobi_[slot] = jacobi_sum_direct(*group_, group_->character(ra), group_->character(rb));
  });
  return jacobi_[slot];
}

CValue SumTables::binomial(Character a, Character b) const {
  group_->check(a);
  group_->check(b);
  return binomial_at(a.index(), b.index());
}

CValue SumTables::binomial_at(std::int64_t a, std::int64_t b) const {
  const double sign = (b % 2 == 0) ? 1.0 : -1.0;  // B(-1) = (-1)^index
  return sign * jacobi_at(a, -b) / static_cast<double>(q());
}

std::filesystem::path SumTables::cache_file(const std::filesystem::path& dir, std::uint32_t q) {
  return dir / fmt::format("gauss_{}.bin", q);
}

void SumTables::save_gauss(const std::filesystem::path& file) const {
  const auto table = gauss_table();
  std::ofstream os(file, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(fmt::format("cannot write cache file {}", file.string()));
  put_u64_le(os, q());
  for (const auto& v : table) {
    put_f64_le(os, v.real());
    put_f64_le(os, v.imag());
  }
  if (!os) throw Error(fmt::format("short write to cache file {}", file.string()));
}

bool SumTables::load_gauss(const std::filesystem::path& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) return false;
  std::uint64_t stored_q = 0;
  if (!get_u64_le(is, stored_q) || stored_q != q()) return false;
  std::vector<CValue> table(group_->size());
  for (auto& v : table) {
    double re = 0.0;
    double im = 0.0;
    if (!get_f64_le(is, re) || !get_f64_le(is, im)) return false;
    v = {re, im};
  }
  if (is.peek() != std::char_traits<char>::eof()) return false;
  if (table.empty() || table[0] != CValue{-1.0, 0.0}) return false;
  bool loaded = false;
  std::call_once(gauss_once_, [&] {
    gauss_ = std::move(table);
    loaded = true;
  });
  return loaded;
}

}  // namespace ffhyper

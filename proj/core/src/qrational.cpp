#include "ffhyper/qrational.hpp"

#include <algorithm>
#include <charconv>

#include <fmt/format.h>

#include "ffhyper/error.hpp"

namespace ffhyper {

namespace {

void require_same_q(const QPowerRational& a, const QPowerRational& b) {
  if (a.q() != b.q()) {
    throw FieldMismatch(fmt::format("q-power rationals over {} and {} cannot be combined",
                                    a.q(), b.q()));
  }
}

}  // namespace

BigInt big_pow(std::uint32_t base, unsigned exp) {
  BigInt r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

QPowerRational::QPowerRational(BigInt num, unsigned npow, std::uint32_t q)
    : num_(std::move(num)), npow_(npow), q_(q) {
  if (q < 2) throw InvalidInput("q-power rational needs q >= 2");
  if (num_ == 0) {
    npow_ = 0;
    return;
  }
  while (npow_ > 0 && num_ % q_ == 0) {
    num_ /= q_;
    --npow_;
  }
}

BigInt QPowerRational::scaled_to(unsigned pow) const {
  if (pow < npow_) {
    throw InvalidInput(fmt::format("{} is not integral after scaling by {}^{}", to_string(), q_, pow));
  }
  return num_ * big_pow(q_, pow - npow_);
}

double QPowerRational::to_double() const {
  return num_.convert_to<double>() / big_pow(q_, npow_).convert_to<double>();
}

std::string QPowerRational::to_string() const {
  if (npow_ == 0) return num_.str();
  return fmt::format("{}/{}^{}", num_.str(), q_, npow_);
}

QPowerRational QPowerRational::parse(std::string_view text, std::uint32_t q) {
  const auto slash = text.find('/');
  const auto num_text = text.substr(0, slash);
  if (num_text.empty()) throw InvalidInput(fmt::format("malformed exact value '{}'", text));
  BigInt num;
  try {
    num = BigInt(std::string(num_text));
  } catch (const std::exception&) {
    throw InvalidInput(fmt::format("malformed exact value '{}'", text));
  }
  if (slash == std::string_view::npos) return integer(num, q);
  const auto den = text.substr(slash + 1);
  const auto caret = den.find('^');
  if (caret == std::string_view::npos) throw InvalidInput(fmt::format("malformed exact value '{}'", text));
  std::uint32_t base = 0;
  unsigned pow = 0;
  auto r1 = std::from_chars(den.data(), den.data() + caret, base);
  auto r2 = std::from_chars(den.data() + caret + 1, den.data() + den.size(), pow);
  if (r1.ec != std::errc{} || r1.ptr != den.data() + caret || r2.ec != std::errc{} ||
      r2.ptr != den.data() + den.size() || base != q) {
    throw InvalidInput(fmt::format("malformed exact value '{}' for q = {}", text, q));
  }
  return {num, pow, q};
}

QPowerRational operator+(const QPowerRational& a, const QPowerRational& b) {
  require_same_q(a, b);
  const unsigned p = std::max(a.npow_, b.npow_);
  return {a.scaled_to(p) + b.scaled_to(p), p, a.q_};
}

QPowerRational operator-(const QPowerRational& a, const QPowerRational& b) { return a + (-b); }

QPowerRational operator*(const QPowerRational& a, const QPowerRational& b) {
  require_same_q(a, b);
  return {a.num_ * b.num_, a.npow_ + b.npow_, a.q_};
}

bool operator<(const QPowerRational& a, const QPowerRational& b) {
  require_same_q(a, b);
  const unsigned p = std::max(a.npow_, b.npow_);
  return a.scaled_to(p) < b.scaled_to(p);
}

}  // namespace ffhyper

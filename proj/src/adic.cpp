#include "lpca/adic.hpp"

#include <string>

#include "lpca/error.hpp"

namespace lpca {

AdicInteger::AdicInteger(DigitVector digits, DigitVector moduli)
    : digits_(std::move(digits)), moduli_(std::move(moduli)) {
  if (digits_.size() != moduli_.size()) {
    throw Error(ErrorCode::bad_dimensions, "digit and modulus counts differ");
  }
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (moduli_[i] < 2) throw Error(ErrorCode::bad_dimensions, "modulus below 2");
    if (digits_[i] >= moduli_[i]) {
      throw Error(ErrorCode::symbol_out_of_range, "digit " + std::to_string(i) + " out of range");
    }
  }
}

std::uint64_t AdicInteger::value() const {
  std::uint64_t v = 0;
  std::uint64_t weight = 1;
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    v += digits_[i] * weight;
    if (i + 1 < digits_.size()) weight *= moduli_[i];
  }
  return v;
}

std::uint64_t modulus_product(std::span<const std::uint64_t> moduli) {
  std::uint64_t p = 1;
  for (std::uint64_t m : moduli) {
    if (__builtin_mul_overflow(p, m, &p)) throw Error(ErrorCode::overflow, "modulus product exceeds 64 bits");
  }
  return p;
}

// Both builders below produce in-range digits by construction and skip the
// constructor's validation.

AdicInteger expansion(std::uint64_t n, std::span<const std::uint64_t> moduli) {
  AdicInteger z;
  z.moduli_.assign(moduli.begin(), moduli.end());
  z.digits_.resize(moduli.size());
  for (std::uint64_t m : moduli) {
    if (m < 2) throw Error(ErrorCode::bad_dimensions, "modulus below 2");
  }
  // n fits exactly when nothing is left after the last digit. 32-bit
  // division is several times cheaper and covers every exhaustive run.
  std::uint64_t rest = n;
  std::size_t i = 0;
  for (; i < moduli.size() && rest > UINT32_MAX; ++i) {
    z.digits_[i] = rest % moduli[i];
    rest /= moduli[i];
  }
  auto rest32 = static_cast<std::uint32_t>(rest);
  for (; i < moduli.size() && rest32 != 0; ++i) {
    if (moduli[i] > UINT32_MAX) {
      z.digits_[i] = rest32;
      rest32 = 0;
      break;
    }
    const auto m32 = static_cast<std::uint32_t>(moduli[i]);
    z.digits_[i] = rest32 % m32;
    rest32 /= m32;
  }
  if (rest > UINT32_MAX || rest32 != 0) {
    throw Error(ErrorCode::overflow, std::to_string(n) + " does not fit the given depth");
  }
  return z;
}

Increment odometer_add_one(const AdicInteger& z) {
  Increment out{z, true};
  auto& digits = out.value.digits_;
  const auto& moduli = out.value.moduli_;
  for (std::size_t i = 0; i < digits.size() && out.carry_out; ++i) {
    out.carry_out = ++digits[i] == moduli[i];
    if (out.carry_out) digits[i] = 0;
  }
  return out;
}

}  // namespace lpca

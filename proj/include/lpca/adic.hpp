#pragma once

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace lpca {

/// Digit and modulus storage; signatures rarely go deeper than 16 stages, so
/// the common case never touches the heap.
using DigitVector = boost::container::small_vector<std::uint64_t, 16>;

/// Element of Z(S) = prod Z/s_n truncated to the first D factors. Digit i
/// carries weight s_1 ... s_{i-1}.
class AdicInteger {
 public:
  AdicInteger(DigitVector digits, DigitVector moduli);

  std::span<const std::uint64_t> digits() const noexcept { return {digits_.data(), digits_.size()}; }
  std::span<const std::uint64_t> moduli() const noexcept { return {moduli_.data(), moduli_.size()}; }
  std::size_t depth() const noexcept { return digits_.size(); }

  /// sum d_i * P_{i-1}, a bijection onto [0, P_D).
  std::uint64_t value() const;

  bool operator==(const AdicInteger&) const = default;

 private:
  AdicInteger() = default;
  friend AdicInteger expansion(std::uint64_t, std::span<const std::uint64_t>);
  friend struct Increment odometer_add_one(const AdicInteger&);

  DigitVector digits_;
  DigitVector moduli_;
};

/// Product of the moduli; throws overflow past 64 bits.
std::uint64_t modulus_product(std::span<const std::uint64_t> moduli);

/// Base-S expansion of n; throws overflow when n >= prod S.
AdicInteger expansion(std::uint64_t n, std::span<const std::uint64_t> moduli);

struct Increment {
  AdicInteger value;
  bool carry_out = false;
};

/// z + (1, 0, 0, ...) with carrying; wraps to zero at the truncation depth.
Increment odometer_add_one(const AdicInteger& z);

}  // namespace lpca

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lpca/tail.hpp"

namespace lpca {

using Position = std::int64_t;

/// Counter-based 64-bit hash keyed by (seed, stream, counter). Successive
/// counters behave as an independent uniform stream; evaluation order never
/// matters.
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

/// Uniform symbol in [0, s) from a counter_hash value.
Symbol hash_to_symbol(std::uint64_t h, int s);

// Left providers supply x_{-1}, x_{-2}, ... on demand. Every variant is
// deterministic: the same description always yields the same symbols.

struct ConstantLeft {
  Symbol value = 0;
};

/// word.at(n) is x_{-n}: the word is read outward from the anchor.
struct PeriodicLeft {
  EventuallyPeriodicWord word;
};

/// x_{-n} = hash_to_symbol(counter_hash(seed, stream, n), alphabet).
struct RandomLeft {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  int alphabet = 2;
};

/// symbols[n-1] is x_{-n}; zero beyond the word.
struct WordLeft {
  std::vector<Symbol> symbols;
};

using LeftProvider = std::variant<ConstantLeft, PeriodicLeft, RandomLeft, WordLeft>;

/// Provider mini-language: "zero", "ep:TRANSIENT:(PERIOD)", "rand:SEED",
/// "word:SYMBOLS". Sequences are listed outward from the anchor, so the first
/// symbol is x_{-1}.
LeftProvider parse_left(std::string_view text, int alphabet);
std::string format_left(const LeftProvider& left);

/// Two-sided point x: left provider, anchor x_0, and right tail (x_1, ...).
/// Single-site overrides sit on top of the provider.
class Configuration {
 public:
  Configuration() = default;
  Configuration(LeftProvider left, Symbol anchor, EventuallyPeriodicWord tail)
      : left_(std::move(left)), anchor_(anchor), tail_(std::move(tail)) {}

  static Configuration zero() { return {ConstantLeft{0}, 0, EventuallyPeriodicWord::constant(0)}; }

  Symbol symbol(Position i) const;

  const LeftProvider& left() const noexcept { return left_; }
  Symbol anchor() const noexcept { return anchor_; }
  const EventuallyPeriodicWord& tail() const noexcept { return tail_; }
  const std::map<Position, Symbol>& overrides() const noexcept { return overrides_; }

  /// Copy with x_position replaced by value.
  Configuration with_symbol(Position position, Symbol value) const;

  /// The left half x_{-1}, x_{-2}, ... as an eventually periodic word, when the
  /// provider admits one.
  std::optional<EventuallyPeriodicWord> left_word() const;

 private:
  LeftProvider left_ = ConstantLeft{};
  Symbol anchor_ = 0;
  EventuallyPeriodicWord tail_;
  std::map<Position, Symbol> overrides_;
};

}  // namespace lpca

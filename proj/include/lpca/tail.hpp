#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpca/rule.hpp"

namespace lpca {

/// One-sided sequence transient . period^infinity, positions numbered from 1.
///
/// Always held in canonical form: the period block is primitive and the
/// transient is as short as possible, so == decides equality of sequences.
class EventuallyPeriodicWord {
 public:
  EventuallyPeriodicWord() : period_{0} {}
  EventuallyPeriodicWord(std::vector<Symbol> transient, std::vector<Symbol> period);

  static EventuallyPeriodicWord constant(Symbol c) { return {{}, {c}}; }

  const std::vector<Symbol>& transient() const noexcept { return transient_; }
  const std::vector<Symbol>& period() const noexcept { return period_; }

  /// Symbol at position i >= 1.
  Symbol at(std::size_t i) const {
    const std::size_t k = i - 1;
    if (k < transient_.size()) return transient_[k];
    return period_[(k - transient_.size()) % period_.size()];
  }

  Symbol max_symbol() const;

  auto operator<=>(const EventuallyPeriodicWord&) const = default;
  bool operator==(const EventuallyPeriodicWord&) const = default;

 private:
  std::vector<Symbol> transient_;
  std::vector<Symbol> period_;
};

/// Literal syntax TRANSIENT:(PERIOD), one character per symbol (0-9 then
/// a-z), e.g. "1:(0)" or ":(21)".
EventuallyPeriodicWord parse_tail(std::string_view text);
std::string format_tail(const EventuallyPeriodicWord& word);

char symbol_char(Symbol v);
std::optional<Symbol> char_symbol(char c);

/// Throws symbol-out-of-range if any symbol is >= s.
void check_alphabet(const EventuallyPeriodicWord& word, int s);

/// Phi_R applied once: y_i = phi(x_i, ..., x_{i+r}).
EventuallyPeriodicWord apply_one_sided(const LocalRule& rule, const EventuallyPeriodicWord& tail);

bool is_tail_fixed(const EventuallyPeriodicWord& tail, const LocalRule& rule, int period);

std::optional<int> least_tail_period(const EventuallyPeriodicWord& tail, const LocalRule& rule,
                                     int q_max);

/// All canonical Phi_R^P-fixed words with transient <= max_transient and
/// primitive period <= max_period, sorted.
std::vector<EventuallyPeriodicWord> enumerate_fixed_tails(const LocalRule& rule, int power_p,
                                                          int max_transient, int max_period,
                                                          std::size_t budget = kDefaultTableBudget);

}  // namespace lpca

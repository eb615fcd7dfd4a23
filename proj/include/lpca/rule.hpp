#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace lpca {

using Symbol = std::uint8_t;

/// Largest alphabet a Symbol can carry.
inline constexpr int kMaxAlphabet = 256;

/// Default cap on the number of entries in a materialized rule table.
inline constexpr std::size_t kDefaultTableBudget = std::size_t{1} << 26;

/// Local rule phi(t_0, ..., t_r) of a cellular automaton with no memory.
///
/// The table is dense and indexed by the base-s encoding of the window with
/// t_0 most significant and t_r varying fastest. Values are immutable once
/// constructed, so a rule may be shared freely between threads.
class LocalRule {
 public:
  int alphabet_size() const noexcept { return alphabet_; }
  int anticipation() const noexcept { return anticipation_; }
  std::span<const Symbol> table() const noexcept { return table_; }
  std::size_t window_count() const noexcept { return table_.size(); }

  Symbol at(std::size_t window_index) const { return table_[window_index]; }

  /// Evaluates phi on a window of exactly anticipation()+1 symbols.
  Symbol operator()(std::span<const Symbol> window) const;

  bool operator==(const LocalRule&) const = default;

 private:
  friend LocalRule make_rule(int, int, std::vector<Symbol>);
  LocalRule(int s, int r, std::vector<Symbol> table)
      : alphabet_(s), anticipation_(r), table_(std::move(table)) {}

  int alphabet_ = 2;
  int anticipation_ = 0;
  std::vector<Symbol> table_;
};

/// Coefficient form a*t_0 + theta(t_1..t_r) (mod s). theta is indexed like a
/// rule table over r coordinates.
struct AdditiveForm {
  Symbol coefficient = 1;
  std::vector<Symbol> theta;
};

/// s^exponent, or nullopt when it exceeds `limit`.
std::optional<std::size_t> checked_power(int s, int exponent,
                                         std::size_t limit = SIZE_MAX);

LocalRule make_rule(int s, int r, std::vector<Symbol> table);
LocalRule make_additive_rule(int s, int r, Symbol a, std::span<const Symbol> theta);

/// The rule phi(t_0) = t_0, anticipation 0.
LocalRule identity_rule(int s);

/// Recovers a*t_0 + theta when the table has that shape.
std::optional<AdditiveForm> additive_form(const LocalRule& rule);

bool is_left_permutive(const LocalRule& rule);

/// Local rule of outer o inner (apply inner first), anticipation
/// r_outer + r_inner.
LocalRule compose(const LocalRule& outer, const LocalRule& inner,
                  std::size_t budget = kDefaultTableBudget);

/// Local rule of Phi^n with nominal anticipation n*r.
LocalRule power(const LocalRule& rule, int n, std::size_t budget = kDefaultTableBudget);

/// Largest j such that the table depends on t_j (0 for a pure symbol map).
int effective_anticipation(const LocalRule& rule);

/// Drops trailing coordinates the table does not depend on.
LocalRule trimmed(const LocalRule& rule);

/// Re-expresses the rule with a larger nominal anticipation.
LocalRule padded(const LocalRule& rule, int anticipation);

/// Least m <= bound with Phi^m the identity.
std::optional<int> identity_order(const LocalRule& rule, int bound,
                                  std::size_t budget = kDefaultTableBudget);

/// Whether the global map on bi-infinite sequences is one-to-one.
bool injectivity_check(const LocalRule& rule);

/// counts[w] = number of words of length len + r whose sliding image is the
/// length-len word with base-s index w.
std::vector<std::uint64_t> preimage_counts(const LocalRule& rule, int len,
                                           std::size_t budget = kDefaultTableBudget);

/// Order of a permutation given as an image table.
std::uint64_t permutation_order(std::span<const Symbol> perm);

}  // namespace lpca

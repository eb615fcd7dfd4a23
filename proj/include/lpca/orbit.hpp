#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpca/configuration.hpp"
#include "lpca/rule.hpp"

namespace lpca {

/// Series v_t = [Phi^t(x)]_j for t = 0..T.
struct ColumnSeries {
  Position column_index = 0;
  std::vector<Symbol> values;
};

/// Row-major (T+1) x width matrix of symbols.
struct SymbolMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Symbol> data;

  Symbol at(std::size_t row, std::size_t col) const { return data[row * cols + col]; }
};

/// Memoized exact evaluation of Phi^t(x) for one configuration and rule.
///
/// Coordinates >= 1 follow the orbit of the right tail under Phi_R, which is
/// eventually periodic and computed once. Coordinates <= 0 are kept as
/// column series, filled right to left: with no memory, column j at time t+1
/// only needs columns j..j+r at time t. A workspace is single-threaded.
class OrbitWorkspace {
 public:
  OrbitWorkspace(Configuration config, LocalRule rule);

  const Configuration& config() const noexcept { return config_; }
  const LocalRule& rule() const noexcept { return rule_; }

  /// [Phi^t(x)]_j.
  Symbol value(Position j, std::int64_t t);

  /// Column series for j <= 0, valid for times 0..T.
  std::span<const Symbol> column(Position j, std::int64_t T);

  /// Phi_R^t applied to the tail (x_1, x_2, ...).
  const EventuallyPeriodicWord& tail_at(std::int64_t t) const;
  /// Index into the tail orbit; equal indices mean equal tails.
  std::size_t tail_state(std::int64_t t) const;
  std::int64_t tail_preperiod() const noexcept { return tail_preperiod_; }
  std::int64_t tail_period() const noexcept { return tail_period_; }

  /// Whether (x_{-k}, x_{-k+1}, ...) is Phi_R^m-fixed.
  bool suffix_fixed(Position k, std::int64_t m);

  /// Symbols currently held in column memos.
  std::size_t cells() const noexcept { return cells_; }

 private:
  void extend(Position leftmost, std::int64_t T);
  Symbol initial(Position j) const;

  Configuration config_;
  LocalRule rule_;
  std::vector<EventuallyPeriodicWord> tail_orbit_;
  std::int64_t tail_preperiod_ = 0;
  std::int64_t tail_period_ = 1;
  std::vector<std::vector<Symbol>> columns_;  // columns_[n] holds column -n
  std::size_t cells_ = 0;
};

ColumnSeries column_evolution(const Configuration& config, const LocalRule& rule, Position j,
                              std::int64_t T);

/// Checks [Phi_R^m(y)]_i = y_i for y = (x_{-k}, ...) and i = -k..0. Throws
/// precondition-violated unless the tail is Phi_R^m-fixed.
bool suffix_fixed(const Configuration& config, const LocalRule& rule, Position k, std::int64_t m);

/// Rows t = 0..T of Phi^t(x) over places -k_left..k_right.
SymbolMatrix spacetime_window(const Configuration& config, const LocalRule& rule,
                              Position k_left, Position k_right, std::int64_t T);

/// Plain PGM (P2) with symbol v drawn as floor(255 v / (s-1)), row 0 on top.
std::string to_pgm(const SymbolMatrix& window, int alphabet);

/// Point whose both halves are eventually periodic: left.at(n) = x_{-n}.
struct FiniteConfiguration {
  EventuallyPeriodicWord left;
  Symbol anchor = 0;
  EventuallyPeriodicWord tail;

  auto operator<=>(const FiniteConfiguration&) const = default;
  bool operator==(const FiniteConfiguration&) const = default;
};

std::optional<FiniteConfiguration> finite_form(const Configuration& config);

/// Phi applied to a finitely described point.
FiniteConfiguration apply_two_sided(const LocalRule& rule, const FiniteConfiguration& x);

enum class ProbeKind { infinite_so_far, cycle_found, inconclusive };

std::string_view to_string(ProbeKind kind);

struct ProbeVerdict {
  ProbeKind kind = ProbeKind::inconclusive;
  std::vector<Position> k_sequence;   // infinite_so_far evidence
  std::vector<std::uint64_t> moduli;  // s_i (leading tail period first when present)
  std::int64_t preperiod = 0;         // cycle_found
  std::int64_t period = 0;            // cycle_found
};

struct ProbeBounds {
  int depth = 6;
  Position window = 256;
  std::int64_t max_steps = 4096;  // orbit hashing budget
  int max_tail_period = 64;
};

/// Bounded evidence about whether {Phi^n(x)} is infinite. A completed
/// signature of the requested depth forces at least s_1...s_depth distinct
/// orbit points; a repeated finite form certifies a cycle.
ProbeVerdict finite_orbit_probe(const Configuration& config, const LocalRule& rule,
                                const ProbeBounds& bounds);

}  // namespace lpca

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "lpca/configuration.hpp"
#include "lpca/orbit.hpp"
#include "lpca/rule.hpp"

namespace lpca {

struct TrialRecord {
  std::uint64_t trial = 0;
  Symbol anchor = 0;
  ProbeVerdict verdict;
};

struct PrevalenceStats {
  std::uint64_t seed = 0;
  int depth = 0;
  Position window = 0;
  std::uint64_t trials = 0;
  std::uint64_t infinite = 0;
  std::uint64_t cycles = 0;
  std::uint64_t inconclusive = 0;
  /// Observed modulus sequences of the INFINITE_SO_FAR trials.
  std::map<std::vector<std::uint64_t>, std::uint64_t> histogram;
  std::vector<TrialRecord> records;

  double fraction_infinite() const {
    return trials == 0 ? 0.0 : static_cast<double>(infinite) / static_cast<double>(trials);
  }
};

/// Trial t uses left provider rand(seed, stream t) and anchor drawn from the
/// same stream at counter 0, with the given Phi_R-fixed tail. Results do not
/// depend on the worker count.
PrevalenceStats sample_prevalence(const LocalRule& rule, const EventuallyPeriodicWord& tail,
                                  std::uint64_t trials, int depth, Position window,
                                  std::uint64_t seed, unsigned workers = 1);

struct EscapeWitness {
  Configuration modified;
  /// (place, new symbol), all at or left of -position_bound.
  std::vector<std::pair<Position, Symbol>> changes;
  Position moved_coordinate = 0;
  Symbol before = 0;  // x'_c
  Symbol after = 0;   // [Phi^j x']_c
};

/// Changes config at or left of -position_bound so that the result is no
/// longer fixed by Phi^j. A single changed place is tried first; when no
/// single change escapes (Phi^j may depend on a coordinate only in some
/// contexts), a block of e+1 places is written instead, e being the
/// effective anticipation of Phi^j. Throws precondition-violated if Phi^j
/// does not fix config on the inspected places, no-witness-found if Phi^j
/// has zero anticipation.
EscapeWitness perturbation_escape(const LocalRule& rule, const Configuration& config, int j,
                                  Position position_bound, Position search_span = 0);

struct PeriodicPoint {
  std::vector<Symbol> block;  // one spatial period, starting at place 0
  std::int64_t phi_period = 0;
};

/// Spatially periodic point starting with `word` whose Phi-period is at most
/// period_bound, searching spatial periods up to max_spatial_period.
std::optional<PeriodicPoint> periodic_point_search(const LocalRule& rule, std::span<const Symbol> word,
                                                   std::int64_t period_bound,
                                                   int max_spatial_period = 12);

/// Phi on the torus of N-periodic points.
std::vector<Symbol> apply_torus(const LocalRule& rule, std::span<const Symbol> block);

}  // namespace lpca

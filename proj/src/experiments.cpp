#include "lpca/experiments.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "lpca/error.hpp"

namespace lpca {

PrevalenceStats sample_prevalence(const LocalRule& rule, const EventuallyPeriodicWord& tail,
                                  std::uint64_t trials, int depth, Position window,
                                  std::uint64_t seed, unsigned workers) {
  check_alphabet(tail, rule.alphabet_size());
  if (!is_tail_fixed(tail, rule, 1)) {
    throw Error(ErrorCode::tail_not_fixed, format_tail(tail) + " is not Phi_R-fixed");
  }
  PrevalenceStats stats;
  stats.seed = seed;
  stats.depth = depth;
  stats.window = window;
  stats.trials = trials;
  stats.records.resize(trials);

  const int s = rule.alphabet_size();
  ProbeBounds bounds;
  bounds.depth = depth;
  bounds.window = window;

  auto run_trial = [&](std::uint64_t t) {
    const Symbol anchor = hash_to_symbol(counter_hash(seed, t, 0), s);
    Configuration config(RandomLeft{seed, t, s}, anchor, tail);
    stats.records[t] = {t, anchor, finite_orbit_probe(config, rule, bounds)};
  };

  workers = std::max(1u, workers);
  if (workers == 1 || trials < 2) {
    for (std::uint64_t t = 0; t < trials; ++t) run_trial(t);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t t = w; t < trials; t += workers) run_trial(t);
      });
    }
    for (auto& th : pool) th.join();
  }

  for (const auto& rec : stats.records) {
    switch (rec.verdict.kind) {
      case ProbeKind::infinite_so_far:
        ++stats.infinite;
        ++stats.histogram[rec.verdict.moduli];
        break;
      case ProbeKind::cycle_found: ++stats.cycles; break;
      case ProbeKind::inconclusive: ++stats.inconclusive; break;
    }
  }
  return stats;
}

EscapeWitness perturbation_escape(const LocalRule& rule, const Configuration& config, int j,
                                  Position position_bound, Position search_span) {
  if (j < 1 || position_bound < 1) throw Error(ErrorCode::bad_dimensions, "need j >= 1 and bound >= 1");
  const Position reach = static_cast<Position>(j) * rule.anticipation();
  if (search_span <= 0) search_span = reach + 1;
  const Position deepest = position_bound + search_span - 1 + reach;

  OrbitWorkspace ws(config, rule);
  if (ws.tail_state(j) != ws.tail_state(0)) {
    throw Error(ErrorCode::precondition_violated, "tail is not fixed by Phi^" + std::to_string(j));
  }
  for (Position c = 0; c >= -deepest; --c) {
    if (ws.value(c, j) != ws.value(c, 0)) {
      throw Error(ErrorCode::precondition_violated,
                  "Phi^" + std::to_string(j) + " moves place " + std::to_string(c));
    }
  }

  // Places right of the change keep their values and their fixedness, so a
  // difference can only show up within reach to the left of it.
  for (Position p = -position_bound; p > -position_bound - search_span; --p) {
    const Symbol original = config.symbol(p);
    for (int v = 0; v < rule.alphabet_size(); ++v) {
      if (v == original) continue;
      Configuration modified = config.with_symbol(p, static_cast<Symbol>(v));
      OrbitWorkspace mw(modified, rule);
      for (Position c = p; c >= p - reach; --c) {
        const Symbol before = mw.value(c, 0);
        const Symbol after = mw.value(c, j);
        if (before != after) {
          return {std::move(modified), {{p, static_cast<Symbol>(v)}}, c, before, after};
        }
      }
    }
  }

  // Unless g is the projection to t_0, some window w has g(w) != w_0.
  // Writing w at places c..c+e then moves place c.
  const LocalRule g = trimmed(power(rule, j));
  const int e = g.anticipation();
  if (e == 0) {
    throw Error(ErrorCode::no_witness_found,
                "Phi^" + std::to_string(j) + " has zero anticipation: every point is in Fix");
  }
  const auto s = static_cast<std::size_t>(rule.alphabet_size());
  const std::size_t lead = g.window_count() / s;
  for (std::size_t index = 0; index < g.window_count(); ++index) {
    if (g.at(index) == index / lead) continue;
    const Position c = -position_bound - e;
    Configuration modified = config;
    std::vector<std::pair<Position, Symbol>> changes;
    std::size_t rest = index;
    for (int d = e; d >= 0; --d) {
      const auto v = static_cast<Symbol>(rest % s);
      rest /= s;
      if (config.symbol(c + d) != v) {
        modified = modified.with_symbol(c + d, v);
        changes.emplace(changes.begin(), c + d, v);
      }
    }
    OrbitWorkspace mw(modified, rule);
    const Symbol before = mw.value(c, 0);
    const Symbol after = mw.value(c, j);
    if (before == after) throw std::logic_error("block witness failed to move its left end");
    return {std::move(modified), std::move(changes), c, before, after};
  }
  throw std::logic_error("g differs from the projection but no window moves its first place");
}

std::vector<Symbol> apply_torus(const LocalRule& rule, std::span<const Symbol> block) {
  const std::size_t n = block.size();
  const auto r = static_cast<std::size_t>(rule.anticipation());
  const auto s = static_cast<std::size_t>(rule.alphabet_size());
  std::vector<Symbol> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t index = 0;
    for (std::size_t d = 0; d <= r; ++d) index = index * s + block[(i + d) % n];
    out[i] = rule.at(index);
  }
  return out;
}

std::optional<PeriodicPoint> periodic_point_search(const LocalRule& rule, std::span<const Symbol> word,
                                                   std::int64_t period_bound, int max_spatial_period) {
  const int s = rule.alphabet_size();
  for (Symbol v : word) {
    if (v >= s) throw Error(ErrorCode::symbol_out_of_range, "query word symbol " + std::to_string(v));
  }
  const auto len = static_cast<int>(word.size());
  constexpr std::size_t kMaxCandidates = std::size_t{1} << 22;
  for (int n = std::max(1, len); n <= max_spatial_period; ++n) {
    auto candidates = checked_power(s, n - len, kMaxCandidates);
    if (!candidates) break;
    std::vector<Symbol> block(static_cast<std::size_t>(n));
    std::copy(word.begin(), word.end(), block.begin());
    // Free places are filled from the candidate index, least significant
    // digit at the first free place.
    for (std::size_t idx = 0; idx < *candidates; ++idx) {
      std::size_t rest = idx;
      for (int i = len; i < n; ++i) {
        block[static_cast<std::size_t>(i)] = static_cast<Symbol>(rest % static_cast<std::size_t>(s));
        rest /= static_cast<std::size_t>(s);
      }
      std::vector<Symbol> current = block;
      for (std::int64_t t = 1; t <= period_bound; ++t) {
        current = apply_torus(rule, current);
        if (current == block) return PeriodicPoint{block, t};
      }
    }
  }
  return std::nullopt;
}

}  // namespace lpca

#include "lpca/signature.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "lpca/error.hpp"
#include "lpca/orbit.hpp"

namespace lpca {

std::string_view to_string(SignatureStatus status) {
  switch (status) {
    case SignatureStatus::complete: return "COMPLETE";
    case SignatureStatus::orbit_appears_finite: return "ORBIT_APPEARS_FINITE";
    case SignatureStatus::window_exhausted: return "WINDOW_EXHAUSTED";
  }
  return "COMPLETE";
}

std::vector<std::uint64_t> OdometerSignature::moduli() const {
  std::vector<std::uint64_t> out;
  if (tail_period) out.push_back(*tail_period);
  for (const auto& stage : stages) out.push_back(stage.s);
  return out;
}

std::vector<std::uint64_t> OdometerSignature::accumulated() const {
  std::vector<std::uint64_t> out;
  std::uint64_t p = 1;
  for (std::uint64_t m : moduli()) {
    p *= m;
    out.push_back(p);
  }
  return out;
}

namespace {

bool fits(Position k, std::uint64_t horizon, std::size_t max_cells) {
  const auto columns = static_cast<std::uint64_t>(k) + 1;
  return horizon < max_cells && columns <= max_cells / (horizon + 1);
}

// Stage extraction for the dynamics Phi^base, base being a multiple of the
// tail's period. Invariant entering each stage: places -prev..0 are fixed by
// Phi^P, so the next k only needs its own column checked.
void extract_stages(OrbitWorkspace& ws, std::uint64_t base, const SignatureBounds& bounds,
                    OdometerSignature& sig) {
  const auto alphabet = static_cast<std::uint64_t>(ws.rule().alphabet_size());
  std::uint64_t period = base;
  Position prev = -1;
  for (int stage = 0; stage < bounds.depth; ++stage) {
    std::optional<Position> found;
    for (Position k = prev + 1; k <= bounds.window; ++k) {
      if (!fits(k, period, bounds.max_cells)) {
        sig.status = SignatureStatus::window_exhausted;
        return;
      }
      auto col = ws.column(-k, static_cast<std::int64_t>(period));
      if (col[period] != col[0]) {
        found = k;
        break;
      }
    }
    if (!found) {
      sig.status = SignatureStatus::orbit_appears_finite;
      return;
    }

    std::optional<std::uint64_t> multiplier;
    for (std::uint64_t s = 2; s <= alphabet; ++s) {
      if (!fits(*found, period * s, bounds.max_cells)) {
        sig.status = SignatureStatus::window_exhausted;
        return;
      }
      if (ws.suffix_fixed(*found, static_cast<std::int64_t>(period * s))) {
        multiplier = s;
        break;
      }
    }
    // Left permutivity makes the leftmost moving place cycle with length at
    // most the alphabet size.
    if (!multiplier) {
      throw std::logic_error("no multiplier <= alphabet size fixes place -" +
                             std::to_string(*found));
    }
    sig.stages.push_back({*found, *multiplier});
    period *= *multiplier;
    prev = *found;
  }
  sig.status = SignatureStatus::complete;
}

void check_rule(const LocalRule& rule) {
  if (!is_left_permutive(rule)) {
    throw Error(ErrorCode::not_permutive, "signature extraction needs a left-permutive rule");
  }
}

}  // namespace

OdometerSignature signature(const Configuration& config, const LocalRule& rule,
                            const SignatureBounds& bounds) {
  check_rule(rule);
  if (!is_tail_fixed(config.tail(), rule, 1)) {
    throw Error(ErrorCode::tail_not_fixed, format_tail(config.tail()) + " is not Phi_R-fixed");
  }
  OrbitWorkspace ws(config, rule);
  OdometerSignature sig;
  extract_stages(ws, 1, bounds, sig);
  return sig;
}

OdometerSignature signature_periodic(const Configuration& config, const LocalRule& rule,
                                     const SignatureBounds& bounds, int q_max) {
  check_rule(rule);
  const auto q = least_tail_period(config.tail(), rule, q_max);
  if (!q || *q == 1) {
    throw Error(ErrorCode::tail_not_periodic,
                format_tail(config.tail()) + (q ? " is Phi_R-fixed" : " has no period <= " + std::to_string(q_max)));
  }
  OrbitWorkspace ws(config, rule);
  OdometerSignature sig;
  sig.tail_period = static_cast<std::uint64_t>(*q);
  extract_stages(ws, static_cast<std::uint64_t>(*q), bounds, sig);
  return sig;
}

ConjugacyReport verify_conjugacy(const Configuration& config, const LocalRule& rule,
                                 const OdometerSignature& sig, std::uint64_t iterations,
                                 std::size_t max_listed) {
  ConjugacyReport report;
  report.iterations = iterations;
  const auto moduli = sig.moduli();
  report.depth = moduli.size();
  if (moduli.empty()) return report;
  const std::uint64_t product = modulus_product(moduli);
  const std::size_t tail_levels = sig.tail_period ? 1 : 0;

  OrbitWorkspace ws(config, rule);
  Position kmax = 0;
  for (const auto& stage : sig.stages) kmax = std::max(kmax, stage.k);
  const auto horizon = static_cast<std::int64_t>(iterations);
  std::vector<std::span<const Symbol>> columns;
  for (Position c = 0; c >= -kmax; --c) columns.push_back(ws.column(c, horizon));

  std::vector<std::vector<std::uint64_t>> digits;
  digits.reserve(iterations + 1);
  for (std::uint64_t n = 0; n <= iterations; ++n) {
    const auto d = expansion(n % product, moduli).digits();
    digits.emplace_back(d.begin(), d.end());
  }

  auto record = [&](const ConjugacyViolation& v) {
    ++report.violation_count;
    if (report.violations.size() < max_listed) report.violations.push_back(v);
  };

  for (std::uint64_t m = 0; m <= iterations; ++m) {
    for (std::uint64_t n = m + 1; n <= iterations; ++n) {
      ++report.pairs_checked;
      const auto& dm = digits[m];
      const auto& dn = digits[n];
      std::size_t common = 0;
      while (common < dm.size() && dm[common] == dn[common]) ++common;
      const bool tails_agree = ws.tail_state(static_cast<std::int64_t>(m)) ==
                               ws.tail_state(static_cast<std::int64_t>(n));
      // Number of places 0, -1, ... on which the two points agree.
      Position agree = 0;
      while (agree <= kmax && columns[static_cast<std::size_t>(agree)][m] ==
                                  columns[static_cast<std::size_t>(agree)][n]) {
        ++agree;
      }
      for (std::size_t level = 1; level <= moduli.size(); ++level) {
        bool windows = tails_agree;
        if (level > tail_levels) windows = windows && agree > sig.stages[level - tail_levels - 1].k;
        const bool digits_agree = common >= level;
        if (windows != digits_agree) {
          record({ConjugacyViolation::Kind::window_mismatch, m, n, level, digits_agree, windows});
        }
      }
    }
  }

  for (std::uint64_t n = 0; n < iterations; ++n) {
    const auto next = odometer_add_one(expansion(n % product, moduli)).value;
    if (!std::ranges::equal(next.digits(), digits[n + 1])) {
      record({ConjugacyViolation::Kind::tau_mismatch, n, n + 1, 0, false, false});
    }
  }
  return report;
}

}  // namespace lpca

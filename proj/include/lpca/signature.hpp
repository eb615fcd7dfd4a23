#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "lpca/adic.hpp"
#include "lpca/configuration.hpp"
#include "lpca/rule.hpp"

namespace lpca {

/// One step of the odometer construction: k is the leftmost place whose
/// suffix stops being fixed by the accumulated power, s the least multiplier
/// that fixes it again.
struct SignatureStage {
  Position k = 0;
  std::uint64_t s = 0;

  bool operator==(const SignatureStage&) const = default;
};

enum class SignatureStatus {
  complete,              // requested depth reached
  orbit_appears_finite,  // no place within the window breaks fixedness
  window_exhausted,      // column memo would exceed the cell budget
};

std::string_view to_string(SignatureStatus status);

struct OdometerSignature {
  /// Least period q > 1 of a periodic right tail; the leading modulus.
  std::optional<std::uint64_t> tail_period;
  std::vector<SignatureStage> stages;
  SignatureStatus status = SignatureStatus::complete;

  /// (q,) s_1, s_2, ...
  std::vector<std::uint64_t> moduli() const;
  /// P_i = product of the first i moduli.
  std::vector<std::uint64_t> accumulated() const;
};

struct SignatureBounds {
  int depth = 6;
  Position window = 256;
  std::size_t max_cells = std::size_t{1} << 27;
};

/// Extracts (k_i, s_i) for a point whose right tail is Phi_R-fixed. Throws
/// tail-not-fixed otherwise.
OdometerSignature signature(const Configuration& config, const LocalRule& rule,
                            const SignatureBounds& bounds);

/// Periodic-tail variant: leading modulus q (the tail's least period), then
/// the stages of Phi^q. Throws tail-not-periodic-within-bound unless
/// 1 < q <= q_max.
OdometerSignature signature_periodic(const Configuration& config, const LocalRule& rule,
                                     const SignatureBounds& bounds, int q_max = 64);

struct ConjugacyViolation {
  enum class Kind { window_mismatch, tau_mismatch };
  Kind kind = Kind::window_mismatch;
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  std::size_t level = 0;
  bool digits_agree = false;
  bool windows_agree = false;
};

struct ConjugacyReport {
  std::uint64_t iterations = 0;
  std::size_t depth = 0;
  std::uint64_t pairs_checked = 0;
  std::uint64_t violation_count = 0;
  /// Window violations in (m, n, level) order, then tau violations; capped.
  std::vector<ConjugacyViolation> violations;

  bool passed() const noexcept { return violation_count == 0; }
};

/// Checks on {Phi^n(x) : n <= N} that base-S digits 1..i of m and n agree
/// exactly when Phi^m(x), Phi^n(x) agree at places -k_i..0 (and on the
/// tail, when the signature leads with a tail period), plus the law
/// expansion(n+1) = odometer_add_one(expansion(n)). Expansions are taken
/// modulo prod S.
ConjugacyReport verify_conjugacy(const Configuration& config, const LocalRule& rule,
                                 const OdometerSignature& sig, std::uint64_t iterations,
                                 std::size_t max_listed = 64);

}  // namespace lpca

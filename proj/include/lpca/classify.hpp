#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "lpca/rule.hpp"
#include "lpca/signature.hpp"
#include "lpca/tail.hpp"

namespace lpca {

/// prime -> multiplicity.
using PrimeProfile = std::map<std::uint64_t, int>;

PrimeProfile factorize(std::uint64_t n);

/// Multiplicity of each prime in the product of the moduli. Conjugate
/// odometers share this profile, e.g. (4, 2) and (2, 4) both give {2: 3}.
PrimeProfile supernatural_profile(std::span<const std::uint64_t> moduli);
PrimeProfile supernatural_profile(const OdometerSignature& sig);

std::string format_profile(const PrimeProfile& profile);

/// (p, m) with s = p^m, if s is a prime power.
std::optional<std::pair<std::uint64_t, int>> prime_power(std::uint64_t s);

/// Least q >= 1 with a^q = 1 (mod n); requires gcd(a, n) = 1.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n);

enum class ProfileKind {
  all_p,            // every s_i = p
  powers_of_p,      // every s_i a positive power of p
  q_then_p,         // coefficient order q, then p's
  periodic_prefix,  // tail period first, then an inner profile
  not_covered,
};

struct ExpectedProfile {
  ProfileKind kind = ProfileKind::not_covered;
  std::uint64_t p = 0;
  std::uint64_t q = 0;            // q_then_p: order of the coefficient mod p
  std::uint64_t tail_period = 0;  // periodic_prefix
  ProfileKind inner = ProfileKind::not_covered;
  std::string note;
};

std::string describe(const ExpectedProfile& profile);

/// Odometer predicted for rules a*t_0 + theta over Z/p or Z/p^m. Throws
/// not-additive-form for other tables.
ExpectedProfile classify_expected(const LocalRule& rule, const EventuallyPeriodicWord& tail,
                                  int q_max = 64);

enum class Verdict { pass, fail, unknown };

std::string_view to_string(Verdict verdict);

struct ProfileCheck {
  Verdict verdict = Verdict::unknown;
  std::string detail;
};

/// Compares an extracted signature with the predicted profile. q_then_p is
/// judged on the supernatural profile only; raw stages are not asserted.
ProfileCheck check_profile(const ExpectedProfile& expected, const OdometerSignature& sig);

enum class PrevalenceCase {
  dense,    // odometer points form a dense G-delta in every fixed-tail slice
  empty,    // some power is the identity, so every orbit is finite
  unknown,  // neither criterion settled within the bound
};

std::string_view to_string(PrevalenceCase c);

struct PrevalenceAssessment {
  PrevalenceCase which = PrevalenceCase::unknown;
  std::string reason;
};

/// Which alternative of the dense-or-empty dichotomy the rule falls in, as far
/// as a two-letter alphabet, non-injectivity or an identity power within
/// `bound` decide it.
PrevalenceAssessment prevalence_case(const LocalRule& rule, int bound,
                                     std::size_t budget = kDefaultTableBudget);

}  // namespace lpca

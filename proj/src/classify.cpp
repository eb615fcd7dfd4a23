#include "lpca/classify.hpp"

#include <numeric>

#include "lpca/error.hpp"

namespace lpca {

PrimeProfile factorize(std::uint64_t n) {
  PrimeProfile out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    while (n % d == 0) {
      ++out[d];
      n /= d;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

PrimeProfile supernatural_profile(std::span<const std::uint64_t> moduli) {
  PrimeProfile out;
  for (std::uint64_t m : moduli) {
    for (const auto& [prime, count] : factorize(m)) out[prime] += count;
  }
  return out;
}

PrimeProfile supernatural_profile(const OdometerSignature& sig) {
  const auto moduli = sig.moduli();
  return supernatural_profile(moduli);
}

std::string format_profile(const PrimeProfile& profile) {
  std::string out = "{";
  bool first = true;
  for (const auto& [prime, count] : profile) {
    if (!first) out += ", ";
    first = false;
    out += std::to_string(prime) + ":" + std::to_string(count);
  }
  return out + "}";
}

std::optional<std::pair<std::uint64_t, int>> prime_power(std::uint64_t s) {
  const auto f = factorize(s);
  if (f.size() != 1) return std::nullopt;
  return std::pair{f.begin()->first, f.begin()->second};
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n) {
  if (n < 2 || std::gcd(a, n) != 1) throw Error(ErrorCode::precondition_violated, "order of a non-unit");
  std::uint64_t x = a % n;
  std::uint64_t q = 1;
  while (x != 1 % n) {
    x = x * a % n;
    ++q;
  }
  return q;
}

namespace {

std::string kind_name(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::all_p: return "ALL_P";
    case ProfileKind::powers_of_p: return "POWERS_OF_P";
    case ProfileKind::q_then_p: return "Q_THEN_P";
    case ProfileKind::periodic_prefix: return "PERIODIC_PREFIX";
    case ProfileKind::not_covered: return "NOT_COVERED";
  }
  return "NOT_COVERED";
}

bool is_power_of(std::uint64_t value, std::uint64_t p) {
  if (value < p) return false;
  while (value % p == 0) value /= p;
  return value == 1;
}

ExpectedProfile not_covered(std::string note) {
  ExpectedProfile out;
  out.note = std::move(note);
  return out;
}

ProfileCheck check_stages(ProfileKind kind, std::uint64_t p, const OdometerSignature& sig) {
  for (std::size_t i = 0; i < sig.stages.size(); ++i) {
    const std::uint64_t s = sig.stages[i].s;
    const bool ok = kind == ProfileKind::all_p ? s == p : is_power_of(s, p);
    if (!ok) {
      return {Verdict::fail, "s_" + std::to_string(i + 1) + " = " + std::to_string(s) +
                                 " breaks " + kind_name(kind) + "(" + std::to_string(p) + ")"};
    }
  }
  return {Verdict::pass, ""};
}

}  // namespace

std::string describe(const ExpectedProfile& profile) {
  const std::string p = std::to_string(profile.p);
  switch (profile.kind) {
    case ProfileKind::all_p:
    case ProfileKind::powers_of_p: return kind_name(profile.kind) + "(" + p + ")";
    case ProfileKind::q_then_p: return "Q_THEN_P(" + std::to_string(profile.q) + ", " + p + ")";
    case ProfileKind::periodic_prefix:
      return "PERIODIC_PREFIX(" + std::to_string(profile.tail_period) + ", " + kind_name(profile.inner) +
             "(" + p + "))";
    case ProfileKind::not_covered: return "NOT_COVERED";
  }
  return "NOT_COVERED";
}

ExpectedProfile classify_expected(const LocalRule& rule, const EventuallyPeriodicWord& tail, int q_max) {
  const auto form = additive_form(rule);
  if (!form) throw Error(ErrorCode::not_additive_form, "rule is not a*t_0 + theta");
  if (effective_anticipation(rule) == 0) return not_covered("zero anticipation: every orbit is finite");
  const auto s = static_cast<std::uint64_t>(rule.alphabet_size());
  const auto pp = prime_power(s);
  if (!pp) return not_covered("alphabet size " + std::to_string(s) + " is not a prime power");
  const auto [p, m] = *pp;
  const auto q_tail = least_tail_period(tail, rule, q_max);
  if (!q_tail) return not_covered("tail has no period <= " + std::to_string(q_max));

  ExpectedProfile out;
  out.p = p;
  if (form->coefficient == 1) {
    const ProfileKind base = m == 1 ? ProfileKind::all_p : ProfileKind::powers_of_p;
    if (*q_tail == 1) {
      out.kind = base;
    } else {
      out.kind = ProfileKind::periodic_prefix;
      out.inner = base;
      out.tail_period = static_cast<std::uint64_t>(*q_tail);
    }
    return out;
  }
  if (m != 1) return not_covered("coefficient != 1 over a non-prime alphabet");
  if (*q_tail != 1) return not_covered("coefficient != 1 with a periodic tail: reported empirically only");
  out.kind = ProfileKind::q_then_p;
  out.q = multiplicative_order(form->coefficient, p);
  return out;
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

ProfileCheck check_profile(const ExpectedProfile& expected, const OdometerSignature& sig) {
  if (expected.kind == ProfileKind::not_covered) return {Verdict::unknown, expected.note};
  if (sig.status != SignatureStatus::complete || sig.stages.empty()) {
    return {Verdict::unknown, "signature incomplete: " + std::string(to_string(sig.status))};
  }
  switch (expected.kind) {
    case ProfileKind::all_p:
    case ProfileKind::powers_of_p:
      if (sig.tail_period) return {Verdict::fail, "unexpected tail period"};
      return check_stages(expected.kind, expected.p, sig);
    case ProfileKind::periodic_prefix:
      if (sig.tail_period != expected.tail_period) {
        return {Verdict::fail, "leading modulus " + std::to_string(sig.tail_period.value_or(1)) +
                                   " != tail period " + std::to_string(expected.tail_period)};
      }
      return check_stages(expected.inner, expected.p, sig);
    case ProfileKind::q_then_p: {
      if (sig.tail_period) return {Verdict::fail, "unexpected tail period"};
      PrimeProfile want = factorize(expected.q);
      want[expected.p] += static_cast<int>(sig.stages.size()) - 1;
      const PrimeProfile got = supernatural_profile(sig);
      if (got != want) {
        return {Verdict::fail, "profile " + format_profile(got) + " != " + format_profile(want)};
      }
      return {Verdict::pass, ""};
    }
    case ProfileKind::not_covered: break;
  }
  return {Verdict::unknown, ""};
}

std::string_view to_string(PrevalenceCase c) {
  switch (c) {
    case PrevalenceCase::dense: return "DENSE";
    case PrevalenceCase::empty: return "EMPTY";
    case PrevalenceCase::unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

PrevalenceAssessment prevalence_case(const LocalRule& rule, int bound, std::size_t budget) {
  if (!is_left_permutive(rule)) throw Error(ErrorCode::not_permutive, "prevalence needs a left-permutive rule");
  if (effective_anticipation(rule) == 0) {
    return {PrevalenceCase::empty, "zero anticipation: Phi permutes symbols, every orbit is finite"};
  }
  if (rule.alphabet_size() == 2) {
    return {PrevalenceCase::dense, "two-letter alphabet: every power keeps positive anticipation"};
  }
  if (!injectivity_check(rule)) {
    return {PrevalenceCase::dense, "not one-to-one: no power is the identity"};
  }
  try {
    if (auto m = identity_order(rule, bound, budget)) {
      return {PrevalenceCase::empty, "Phi^" + std::to_string(*m) + " is the identity"};
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::budget_exceeded) throw;
    return {PrevalenceCase::unknown, std::string("identity search stopped: ") + e.what()};
  }
  return {PrevalenceCase::unknown, "injective, no identity power up to " + std::to_string(bound)};
}

}  // namespace lpca

// Acceptance run: one [PASS]/[FAIL] line per criterion, exit status 1 if any
// criterion fails. Every check compares library output against values
// computed independently here or in tests/support.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lpca/adic.hpp"
#include "lpca/classify.hpp"
#include "lpca/orbit.hpp"
#include "lpca/rule.hpp"
#include "lpca/signature.hpp"
#include "lpca/tail.hpp"
#include "oracle.hpp"

namespace {

using namespace lpca;
using testing::Gen;

struct Outcome {
  bool pass = true;
  std::string detail;
  int failures = 0;
  std::string first_failure;

  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
    pass = false;
  }
};

std::string join(const std::vector<std::uint64_t>& v) {
  std::string out;
  for (auto x : v) out += (out.empty() ? "" : ",") + std::to_string(x);
  return "(" + out + ")";
}

// Trial-division factorization, kept separate from the library's.
std::map<std::uint64_t, int> factor(std::uint64_t n) {
  std::map<std::uint64_t, int> out;
  for (std::uint64_t d = 2; n > 1; ++d) {
    while (n % d == 0) {
      ++out[d];
      n /= d;
    }
  }
  return out;
}

bool is_power_of(std::uint64_t v, std::uint64_t p) {
  if (v < p) return false;
  while (v % p == 0) v /= p;
  return v == 1;
}

constexpr int kDepth = 6;
constexpr int kThetas = 20;
constexpr int kLefts = 10;

SignatureBounds depth_bounds() {
  SignatureBounds b;
  b.depth = kDepth;
  return b;
}

std::uint64_t conjugacy_horizon(const OdometerSignature& sig) {
  return std::min<std::uint64_t>(modulus_product(sig.moduli()) - 1, 200);
}

// Protocol shared by criteria 2-4: for each anticipation r in {1, 2},
// kThetas random theta with theta(0..0) = 0 (so the zero tail is fixed) and
// kLefts random left halves with random anchors, signature at depth 6.
struct SweepStats {
  int runs = 0;
  int complete = 0;
};

void sweep(int s, Symbol a, std::uint64_t seed, SweepStats& stats,
           const std::function<void(const LocalRule&, const Configuration&, const OdometerSignature&)>& check) {
  Gen gen(seed);
  for (int r = 1; r <= 2; ++r) {
    for (int t = 0; t < kThetas; ++t) {
      const LocalRule f = make_additive_rule(s, r, a, gen.theta(s, r));
      for (int l = 0; l < kLefts; ++l) {
        const Configuration x(RandomLeft{gen.bits(), static_cast<std::uint64_t>(l), s}, gen.symbol(s),
                              EventuallyPeriodicWord::constant(0));
        const auto sig = signature(x, f, depth_bounds());
        ++stats.runs;
        if (sig.status != SignatureStatus::complete) continue;
        ++stats.complete;
        check(f, x, sig);
      }
    }
  }
}

Outcome criterion1() {
  Outcome o;
  const LocalRule f = make_rule(3, 1, {0, 2, 0, 1, 1, 1, 2, 0, 2});
  const auto order = identity_order(f, 10);
  const int eff = effective_anticipation(power(f, 2));
  const bool injective = injectivity_check(f);
  if (order != 2) o.fail("identity_order != 2");
  if (eff != 0) o.fail("effective_anticipation(power(f,2)) != 0");
  if (!injective) o.fail("not injective");
  // Independent confirmation that Phi^2 is the identity: slide twice over
  // every word of length 5.
  for (int w = 0; w < 243; ++w) {
    std::vector<Symbol> word(5);
    int rest = w;
    for (auto& v : word) {
      v = static_cast<Symbol>(rest % 3);
      rest /= 3;
    }
    const auto twice = testing::slide(f, testing::slide(f, word));
    if (!std::equal(twice.begin(), twice.end(), word.begin())) o.fail("Phi^2 moves a word");
  }
  o.detail = "identity_order=" + (order ? std::to_string(*order) : std::string("none")) +
             " eff_anticipation(Phi^2)=" + std::to_string(eff) + " injective=" + (injective ? "true" : "false");
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::string summary;
  for (int p : {2, 3, 5}) {
    SweepStats stats;
    sweep(p, 1, 200 + static_cast<std::uint64_t>(p), stats, [&](const LocalRule& f, const Configuration& x, const OdometerSignature& sig) {
      for (const auto& st : sig.stages) {
        if (st.s != static_cast<std::uint64_t>(p)) o.fail("p=" + std::to_string(p) + " s_i=" + std::to_string(st.s));
      }
      const auto report = verify_conjugacy(x, f, sig, conjugacy_horizon(sig));
      if (!report.passed()) o.fail("p=" + std::to_string(p) + " conjugacy violations=" + std::to_string(report.violation_count));
    });
    if (stats.complete == 0) o.fail("p=" + std::to_string(p) + " no completed signature");
    summary += " p=" + std::to_string(p) + ":" + std::to_string(stats.complete) + "/" + std::to_string(stats.runs);
  }
  o.detail = "completed depth-6 signatures" + summary + ", all s_i = p, 0 conjugacy violations";
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::string summary;
  for (int s : {4, 8, 9}) {
    const std::uint64_t p = s == 9 ? 3 : 2;
    SweepStats stats;
    std::set<std::uint64_t> seen;
    sweep(s, 1, 300 + static_cast<std::uint64_t>(s), stats, [&](const LocalRule& f, const Configuration& x, const OdometerSignature& sig) {
      for (const auto& st : sig.stages) {
        seen.insert(st.s);
        if (!is_power_of(st.s, p)) o.fail("s=" + std::to_string(s) + " s_i=" + std::to_string(st.s));
      }
      const auto profile = supernatural_profile(sig);
      if (profile.size() != 1 || profile.begin()->first != p) o.fail("s=" + std::to_string(s) + " profile " + format_profile(profile));
      const auto report = verify_conjugacy(x, f, sig, conjugacy_horizon(sig));
      if (!report.passed()) o.fail("s=" + std::to_string(s) + " conjugacy violations");
    });
    if (stats.complete == 0) o.fail("s=" + std::to_string(s) + " no completed signature");
    summary += " Z/" + std::to_string(s) + ":" + std::to_string(stats.complete) + "/" + std::to_string(stats.runs) +
               " moduli seen " + join({seen.begin(), seen.end()});
  }
  o.detail = "every s_i a power of p, profile supported on p;" + summary;
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::string summary;
  const std::vector<std::pair<int, int>> cases{{5, 2}, {5, 3}, {5, 4}, {7, 3}};
  for (auto [p, a] : cases) {
    std::uint64_t q = 1;
    for (int x = a % p; x != 1; x = x * a % p) ++q;
    SweepStats stats;
    std::map<std::vector<std::uint64_t>, int> shapes;
    sweep(p, static_cast<Symbol>(a), 400 + static_cast<std::uint64_t>(10 * p + a), stats,
          [&](const LocalRule& f, const Configuration& x, const OdometerSignature& sig) {
            auto want = factor(q);
            want[static_cast<std::uint64_t>(p)] += kDepth - 1;
            std::map<std::uint64_t, int> got;
            for (auto m : sig.moduli()) {
              for (auto [prime, e] : factor(m)) got[prime] += e;
            }
            const auto lib = supernatural_profile(sig);
            if (got != want) o.fail("p=" + std::to_string(p) + " a=" + std::to_string(a) + " moduli " + join(sig.moduli()));
            if (PrimeProfile(got.begin(), got.end()) != lib) o.fail("library profile disagrees with factorization");
            const auto expected = classify_expected(f, x.tail());
            if (describe(expected) != "Q_THEN_P(" + std::to_string(q) + ", " + std::to_string(p) + ")") {
              o.fail("classify_expected gave " + describe(expected));
            }
            if (check_profile(expected, sig).verdict != Verdict::pass) o.fail("check_profile did not pass");
            ++shapes[sig.moduli()];
          });
    if (stats.complete == 0) o.fail("p=" + std::to_string(p) + " a=" + std::to_string(a) + " no completed signature");
    summary += " Z/" + std::to_string(p) + " a=" + std::to_string(a) + " q=" + std::to_string(q) + ":" +
               std::to_string(stats.complete) + "/" + std::to_string(stats.runs);
    for (const auto& [moduli, count] : shapes) summary += " " + join(moduli) + "x" + std::to_string(count);
  }
  o.detail = "profile = factors(q) + {p:5} at depth 6; raw stages:" + summary;
  return o;
}

Outcome criterion5() {
  Outcome o;
  const LocalRule f = make_rule(2, 1, {0, 1, 1, 0});
  const auto tail = parse_tail("11:(0)");
  // Period 2 from the naive simulator: tail places 1..40 under Phi and Phi^2.
  const Configuration probe(ConstantLeft{0}, 0, tail);
  const auto start = testing::naive_row(probe, f, 1, 40, 0);
  if (testing::naive_row(probe, f, 1, 40, 1) == start) o.fail("tail fixed by Phi");
  if (testing::naive_row(probe, f, 1, 40, 2) != start) o.fail("tail not fixed by Phi^2");

  Gen gen(500);
  int complete = 0, runs = 0;
  std::vector<Configuration> points{Configuration(ConstantLeft{0}, 0, tail), Configuration(ConstantLeft{0}, 1, tail)};
  for (int l = 0; l < kLefts; ++l) points.emplace_back(RandomLeft{gen.bits(), 0, 2}, gen.symbol(2), tail);
  for (const auto& x : points) {
    ++runs;
    const auto sig = signature_periodic(x, f, depth_bounds());
    if (sig.tail_period != 2u) o.fail("leading modulus " + std::to_string(sig.tail_period.value_or(0)));
    if (sig.status != SignatureStatus::complete) continue;
    ++complete;
    for (const auto& st : sig.stages) {
      if (st.s != 2) o.fail("s_i=" + std::to_string(st.s));
    }
    if (!verify_conjugacy(x, f, sig, conjugacy_horizon(sig)).passed()) o.fail("conjugacy violation");
  }
  if (complete == 0) o.fail("no completed signature");
  o.detail = "leading modulus 2, then s_i = 2 on " + std::to_string(complete) + "/" + std::to_string(runs) +
             " points (depth 6), conjugacy clean";
  return o;
}

Outcome criterion6() {
  Outcome o;
  Gen gen(600);
  int cases = 0;
  for (; cases < 1000; ++cases) {
    const int s = gen.uniform(2, 4);
    const int r = gen.uniform(0, 3);
    const LocalRule f = cases % 2 == 0 ? gen.left_permutive(s, r) : gen.any_rule(s, r);
    const Configuration x = gen.config(s);
    const std::int64_t T = gen.uniform(0, 64);
    const Position j = -gen.uniform(0, 32);
    if (column_evolution(x, f, j, T).values != testing::naive_column(x, f, j, T)) {
      o.fail("case " + std::to_string(cases) + " (s=" + std::to_string(s) + ", r=" + std::to_string(r) + ")");
    }
  }
  o.detail = std::to_string(cases) + " cases, " + std::to_string(o.failures) + " mismatches";
  return o;
}

Outcome criterion7() {
  Outcome o;
  constexpr std::uint64_t kLimit = 5040;
  std::vector<std::uint64_t> moduli;
  std::uint64_t lists = 0, values = 0;
  std::vector<std::uint64_t> oracle;
  std::function<void(std::uint64_t)> visit = [&](std::uint64_t product) {
    if (!moduli.empty()) {
      ++lists;
      oracle.assign(moduli.size(), 0);
      for (std::uint64_t n = 0; n < product; ++n, ++values) {
        const AdicInteger z = expansion(n, moduli);
        if (!std::ranges::equal(z.digits(), oracle) || z.value() != n) o.fail("round trip " + join(moduli) + " n=" + std::to_string(n));
        const auto next = odometer_add_one(z);
        bool carry = true;
        for (std::size_t i = 0; i < oracle.size() && carry; ++i) {
          carry = ++oracle[i] == moduli[i];
          if (carry) oracle[i] = 0;
        }
        if (!std::ranges::equal(next.value.digits(), oracle) || next.carry_out != carry) {
          o.fail("tau law " + join(moduli) + " n=" + std::to_string(n));
        }
      }
    }
    for (std::uint64_t m = 2; product * m <= kLimit; ++m) {
      moduli.push_back(m);
      visit(product * m);
      moduli.pop_back();
    }
  };
  visit(1);
  o.detail = std::to_string(lists) + " moduli lists with product <= 5040, " + std::to_string(values) +
             " values: round trip and tau law exact";
  return o;
}

// Every left-permutive table for (s, r): one permutation of t_0 per suffix.
void for_each_left_permutive(int s, int r, const std::function<void(const LocalRule&)>& fn) {
  std::vector<std::vector<Symbol>> perms;
  std::vector<Symbol> p(static_cast<std::size_t>(s));
  std::iota(p.begin(), p.end(), Symbol{0});
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::size_t suffixes = 1;
  for (int i = 0; i < r; ++i) suffixes *= static_cast<std::size_t>(s);
  std::vector<std::size_t> choice(suffixes, 0);
  while (true) {
    std::vector<Symbol> table(suffixes * static_cast<std::size_t>(s));
    for (std::size_t u = 0; u < suffixes; ++u) {
      for (int t0 = 0; t0 < s; ++t0) table[static_cast<std::size_t>(t0) * suffixes + u] = perms[choice[u]][static_cast<std::size_t>(t0)];
    }
    fn(make_rule(s, r, std::move(table)));
    std::size_t i = 0;
    while (i < suffixes && ++choice[i] == perms.size()) choice[i++] = 0;
    if (i == suffixes) break;
  }
}

Outcome criterion8() {
  Outcome o;
  constexpr std::uint64_t kCap = 100000;
  std::uint64_t rules = 0, words = 0;
  auto check = [&](const LocalRule& f, bool cross_check) {
    ++rules;
    if (!is_left_permutive(f)) o.fail("generator produced a non-permutive rule");
    const auto s = static_cast<std::uint64_t>(f.alphabet_size());
    std::uint64_t expected = 1;
    for (int i = 0; i < f.anticipation(); ++i) expected *= s;
    std::uint64_t sources = expected * s;
    for (int len = 1; sources <= kCap; ++len, sources *= s) {
      const auto counts = preimage_counts(f, len);
      words += counts.size();
      for (auto c : counts) {
        if (c != expected) {
          o.fail("s=" + std::to_string(s) + " r=" + std::to_string(f.anticipation()) + " len=" + std::to_string(len));
          break;
        }
      }
      if (cross_check && sources <= 10000 && counts != testing::brute_preimages(f, len)) o.fail("library counts differ from brute force");
    }
  };
  // Every rule where the full family is small.
  const std::vector<std::pair<int, int>> exhaustive{{2, 1}, {2, 2}, {2, 3}, {3, 1}};
  for (auto [s, r] : exhaustive) for_each_left_permutive(s, r, [&](const LocalRule& f) { check(f, true); });
  const std::uint64_t exhaustive_rules = rules;
  // Seeded samples for every other (s, r) with s^(1+r) <= 10^5.
  Gen gen(800);
  int pairs = 0;
  for (int r = 0; r <= 16; ++r) {
    for (int s = 2; s <= kMaxAlphabet; ++s) {
      std::uint64_t window = 1;
      for (int i = 0; i <= r; ++i) window *= static_cast<std::uint64_t>(s);
      if (window > kCap) break;
      if (std::find(exhaustive.begin(), exhaustive.end(), std::pair{s, r}) != exhaustive.end()) continue;
      ++pairs;
      for (int k = 0; k < 3; ++k) check(gen.left_permutive(s, r), false);
    }
  }
  o.detail = std::to_string(exhaustive_rules) + " rules exhaustively for (s,r) in {(2,1),(2,2),(2,3),(3,1)}, " +
             std::to_string(rules - exhaustive_rules) + " sampled over " + std::to_string(pairs) +
             " other (s,r); " + std::to_string(words) + " words, each with exactly s^r preimages";
  return o;
}

// Whether the output depends on some t_d with d >= 1, by flipping bits.
bool depends_beyond_first(const LocalRule& g) {
  const std::size_t n = g.window_count();
  for (std::size_t w = 0; w < n; ++w) {
    for (int d = 0; d < g.anticipation(); ++d) {
      if (g.at(w) != g.at(w ^ (std::size_t{1} << d))) return true;
    }
  }
  return false;
}

Outcome criterion9() {
  Outcome o;
  int qualifying = 0;
  for (int bits = 0; bits < 16; ++bits) {
    std::vector<Symbol> table(4);
    for (int i = 0; i < 4; ++i) table[static_cast<std::size_t>(i)] = static_cast<Symbol>((bits >> i) & 1);
    const LocalRule f = make_rule(2, 1, table);
    if (!is_left_permutive(f) || !depends_beyond_first(f)) continue;
    ++qualifying;
    for (int n = 1; n <= 16; ++n) {
      const LocalRule g = power(f, n);
      if (effective_anticipation(g) <= 0 || !depends_beyond_first(g)) {
        o.fail("table " + std::to_string(bits) + " n=" + std::to_string(n));
      }
    }
  }
  if (qualifying != 2) o.fail("expected the two tables t0+t1 and 1+t0+t1, found " + std::to_string(qualifying));
  o.detail = "of the 16 tables over Z/2 with r=1, " + std::to_string(qualifying) +
             " are left permutive with positive anticipation; every power n <= 16 keeps it";
  return o;
}

Outcome criterion10() {
  Outcome o;
  const Configuration unit(ConstantLeft{0}, 1, EventuallyPeriodicWord::constant(0));
  const LocalRule xr = make_rule(2, 1, {0, 1, 1, 0});
  SignatureBounds b;
  b.depth = 4;
  auto sig = signature(unit, xr, b);
  sig.stages[0].s = 3;
  const auto xor_report = verify_conjugacy(unit, xr, sig, 15);
  if (xor_report.violation_count < 1) o.fail("XOR with s_1 = 3 passed");

  // Corrupt completed random signatures: change s_1, then separately move k_1.
  Gen gen(1000);
  int corrupted = 0;
  while (corrupted < 40) {
    const int p = gen.uniform(2, 5);
    const int r = gen.uniform(1, 2);
    const LocalRule f = make_additive_rule(p, r, 1, gen.theta(p, r));
    const Configuration x(RandomLeft{gen.bits(), 0, p}, gen.symbol(p), EventuallyPeriodicWord::constant(0));
    b.depth = 3;
    const auto good = signature(x, f, b);
    if (good.status != SignatureStatus::complete) continue;
    auto bad_s = good;
    bad_s.stages[0].s = good.stages[0].s + 1;
    if (verify_conjugacy(x, f, bad_s, conjugacy_horizon(bad_s)).violation_count < 1) o.fail("s_1 corruption unnoticed");
    auto bad_k = good;
    bad_k.stages[0].k = good.stages[1].k;
    if (verify_conjugacy(x, f, bad_k, conjugacy_horizon(bad_k)).violation_count < 1) o.fail("k_1 corruption unnoticed");
    ++corrupted;
  }
  o.detail = "XOR with s_1 = 3: " + std::to_string(xor_report.violation_count) + " violations; " +
             std::to_string(2 * corrupted) + " corrupted random signatures all flagged";
  return o;
}

}  // namespace

// Optional arguments pick criteria by number; the default runs all of them.
int main(int argc, char** argv) {
  std::set<std::size_t> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoul(argv[i]));
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Z/3 example: identity order 2, Phi^2 anticipation 0, injective", criterion1},
      {"additive rules over Z/p: s_i = p and conjugacy", criterion2},
      {"additive rules over Z/p^m: s_i powers of p", criterion3},
      {"coefficient a != 1 over Z/p: profile q then p", criterion4},
      {"periodic tail 11:(0): (2, 2, 2, ...) odometer", criterion5},
      {"column evolution vs naive simulator", criterion6},
      {"adic round trip and tau law", criterion7},
      {"left-permutive preimage balance", criterion8},
      {"two-letter powers keep positive anticipation", criterion9},
      {"corrupted signatures are caught", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.contains(i + 1)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!outcome.pass) ++failed;
    std::printf("[%s] %zu %s: %s", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, outcome.detail.c_str());
    if (!outcome.pass) std::printf(" (%d failures, first: %s)", outcome.failures, outcome.first_failure.c_str());
    std::printf(" [%.1fs]\n", seconds);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

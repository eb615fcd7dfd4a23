#include <gtest/gtest.h>

#include "lpca/error.hpp"
#include "lpca/tail.hpp"
#include "oracle.hpp"

namespace lpca {
namespace {

using testing::Gen;

LocalRule xor_rule() { return make_rule(2, 1, {0, 1, 1, 0}); }
LocalRule z3_rule() { return make_rule(3, 1, {0, 2, 0, 1, 1, 1, 2, 0, 2}); }

TEST(EventuallyPeriodicWord, CanonicalForm) {
  const EventuallyPeriodicWord a({0, 1, 0, 1}, {0, 1, 0, 1});
  EXPECT_TRUE(a.transient().empty());
  EXPECT_EQ(a.period(), (std::vector<Symbol>{0, 1}));
  // 2 1 . (0 2 1) reads 2 1 0 2 1 0 ...: no transient at all.
  const EventuallyPeriodicWord b({2, 1}, {0, 2, 1});
  EXPECT_TRUE(b.transient().empty());
  EXPECT_EQ(b.period(), (std::vector<Symbol>{2, 1, 0}));
  const EventuallyPeriodicWord c({1, 2, 1}, {0, 2, 1});
  EXPECT_EQ(c.transient(), (std::vector<Symbol>{1}));
  EXPECT_EQ(c.period(), (std::vector<Symbol>{2, 1, 0}));
  EXPECT_EQ(EventuallyPeriodicWord({1, 1, 1}, {1}), EventuallyPeriodicWord::constant(1));
  EXPECT_THROW(EventuallyPeriodicWord({1}, {}), Error);
}

TEST(EventuallyPeriodicWord, EqualityMatchesSymbolwiseEquality) {
  Gen gen(21);
  for (int trial = 0; trial < 400; ++trial) {
    const int s = gen.uniform(2, 3);
    const auto x = gen.ep_word(s, 3, 4);
    const auto y = gen.ep_word(s, 3, 4);
    // Beyond transient + lcm of periods, agreement on a prefix decides equality.
    bool same = true;
    for (std::size_t i = 1; i <= 3 + 12 + 1; ++i) same = same && x.at(i) == y.at(i);
    EXPECT_EQ(x == y, same) << format_tail(x) << " vs " << format_tail(y);
    // Canonical form never changes the sequence.
    const EventuallyPeriodicWord z(x.transient(), x.period());
    EXPECT_EQ(z, x);
  }
}

TEST(TailLiteral, ParseAndFormat) {
  EXPECT_EQ(parse_tail("1:(0)"), EventuallyPeriodicWord({1}, {0}));
  EXPECT_EQ(parse_tail(":(21)"), EventuallyPeriodicWord({}, {2, 1}));
  EXPECT_EQ(format_tail(parse_tail("11:(00)")), "11:(0)");
  EXPECT_EQ(format_tail(parse_tail("0101:(01)")), ":(01)");
  EXPECT_EQ(format_tail(parse_tail(":(a)")), ":(a)");
  EXPECT_THROW(parse_tail("1(0)"), Error);
  EXPECT_THROW(parse_tail("1:()"), Error);
  EXPECT_THROW(parse_tail("1:(0"), Error);
  EXPECT_THROW(check_alphabet(parse_tail(":(2)"), 2), Error);
}

TEST(TailFixed, Examples) {
  const LocalRule f = xor_rule();
  EXPECT_TRUE(is_tail_fixed(parse_tail(":(0)"), f, 1));
  EXPECT_TRUE(is_tail_fixed(parse_tail("1:(0)"), f, 1));
  EXPECT_FALSE(is_tail_fixed(parse_tail("11:(0)"), f, 1));
  EXPECT_TRUE(is_tail_fixed(parse_tail("11:(0)"), f, 2));
  EXPECT_EQ(apply_one_sided(f, parse_tail("11:(0)")), parse_tail("01:(0)"));
}

TEST(LeastPeriod, Examples) {
  const LocalRule f = xor_rule();
  EXPECT_EQ(least_tail_period(parse_tail("1:(0)"), f, 4), 1);
  EXPECT_EQ(least_tail_period(parse_tail("11:(0)"), f, 4), 2);
  EXPECT_EQ(least_tail_period(parse_tail(":(0)"), z3_rule(), 4), 1);
  // (01)^inf falls to (1)^inf and then to zero: never periodic.
  EXPECT_EQ(least_tail_period(parse_tail(":(01)"), f, 16), std::nullopt);
}

TEST(EnumerateFixedTails, XorFixedTails) {
  const auto tails = enumerate_fixed_tails(xor_rule(), 1, 2, 2);
  EXPECT_EQ(tails, (std::vector<EventuallyPeriodicWord>{parse_tail(":(0)"), parse_tail("1:(0)")}));
}

TEST(EnumerateFixedTails, Z3ConstantTails) {
  const auto tails = enumerate_fixed_tails(z3_rule(), 1, 0, 1);
  EXPECT_EQ(tails, (std::vector<EventuallyPeriodicWord>{parse_tail(":(0)"), parse_tail(":(1)"),
                                                         parse_tail(":(2)")}));
}

TEST(EnumerateFixedTails, SquareContainsFixedTails) {
  const auto once = enumerate_fixed_tails(xor_rule(), 1, 2, 2);
  const auto twice = enumerate_fixed_tails(xor_rule(), 2, 2, 2);
  for (const auto& t : once) EXPECT_NE(std::find(twice.begin(), twice.end(), t), twice.end());
  EXPECT_NE(std::find(twice.begin(), twice.end(), parse_tail("11:(0)")), twice.end());
}

// Exhaustive oracle: every word with transient <= T and period <= Q, checked
// directly.
std::vector<EventuallyPeriodicWord> brute_fixed_tails(const LocalRule& f, int P, int T, int Q) {
  const int s = f.alphabet_size();
  std::set<EventuallyPeriodicWord> found;
  auto words = [s](int len) {
    std::vector<std::vector<Symbol>> out;
    int total = 1;
    for (int i = 0; i < len; ++i) total *= s;
    for (int w = 0; w < total; ++w) {
      std::vector<Symbol> word(static_cast<std::size_t>(len));
      int rest = w;
      for (int i = 0; i < len; ++i) {
        word[static_cast<std::size_t>(i)] = static_cast<Symbol>(rest % s);
        rest /= s;
      }
      out.push_back(word);
    }
    return out;
  };
  for (int t = 0; t <= T; ++t) {
    for (int q = 1; q <= Q; ++q) {
      for (const auto& tr : words(t)) {
        for (const auto& pe : words(q)) {
          const EventuallyPeriodicWord w(tr, pe);
          if (static_cast<int>(w.transient().size()) <= T && static_cast<int>(w.period().size()) <= Q &&
              is_tail_fixed(w, f, P)) {
            found.insert(w);
          }
        }
      }
    }
  }
  return {found.begin(), found.end()};
}

TEST(EnumerateFixedTails, MatchesExhaustiveSearch) {
  Gen gen(22);
  for (int trial = 0; trial < 25; ++trial) {
    const int s = gen.uniform(2, 3);
    const LocalRule f = gen.left_permutive(s, gen.uniform(1, 2));
    const int P = gen.uniform(1, 2);
    EXPECT_EQ(enumerate_fixed_tails(f, P, 2, 3), brute_fixed_tails(f, P, 2, 3)) << trial;
  }
}

TEST(EnumerateFixedTails, PropertiesOfEnumeratedTails) {
  Gen gen(23);
  for (int trial = 0; trial < 25; ++trial) {
    const int s = gen.uniform(2, 3);
    const LocalRule f = gen.left_permutive(s, 1);
    const int P = gen.uniform(1, 3);
    for (const auto& t : enumerate_fixed_tails(f, P, 2, 3)) {
      ASSERT_TRUE(is_tail_fixed(t, f, P));
      for (int k = 1; k <= 4; ++k) EXPECT_TRUE(is_tail_fixed(t, f, k * P));
      const auto q = least_tail_period(t, f, 64);
      ASSERT_TRUE(q);
      EXPECT_EQ(P % *q, 0);
      EXPECT_EQ(least_tail_period(apply_one_sided(f, t), f, 64), q);
    }
  }
}

TEST(ApplyOneSided, AgreesWithSlidingOnPrefixes) {
  Gen gen(24);
  for (int trial = 0; trial < 200; ++trial) {
    const int s = gen.uniform(2, 4);
    const LocalRule f = gen.any_rule(s, gen.uniform(0, 2));
    const auto x = gen.ep_word(s, 4, 4);
    const auto y = apply_one_sided(f, x);
    std::vector<Symbol> prefix;
    for (std::size_t i = 1; i <= 30; ++i) prefix.push_back(x.at(i));
    const auto image = testing::slide(f, prefix);
    for (std::size_t i = 0; i < image.size(); ++i) ASSERT_EQ(y.at(i + 1), image[i]);
    EXPECT_LE(y.transient().size(), x.transient().size());
    EXPECT_EQ(x.period().size() % y.period().size(), 0u);
  }
}

}  // namespace
}  // namespace lpca

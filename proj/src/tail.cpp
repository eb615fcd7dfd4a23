#include "lpca/tail.hpp"

#include <algorithm>
#include <set>

#include "lpca/error.hpp"

namespace lpca {

namespace {

std::vector<Symbol> primitive_root(const std::vector<Symbol>& block) {
  const std::size_t n = block.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool repeats = true;
    for (std::size_t i = d; i < n && repeats; ++i) repeats = block[i] == block[i - d];
    if (repeats) return {block.begin(), block.begin() + static_cast<std::ptrdiff_t>(d)};
  }
  return block;
}

}  // namespace

EventuallyPeriodicWord::EventuallyPeriodicWord(std::vector<Symbol> transient,
                                               std::vector<Symbol> period)
    : transient_(std::move(transient)), period_(std::move(period)) {
  if (period_.empty()) throw Error(ErrorCode::bad_dimensions, "empty period block");
  period_ = primitive_root(period_);
  // Absorb transient symbols that already continue the period backwards.
  while (!transient_.empty() && transient_.back() == period_.back()) {
    std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    transient_.pop_back();
  }
}

Symbol EventuallyPeriodicWord::max_symbol() const {
  Symbol m = *std::max_element(period_.begin(), period_.end());
  for (Symbol v : transient_) m = std::max(m, v);
  return m;
}

char symbol_char(Symbol v) {
  if (v < 10) return static_cast<char>('0' + v);
  if (v < 36) return static_cast<char>('a' + (v - 10));
  throw Error(ErrorCode::symbol_out_of_range, "symbol " + std::to_string(v) + " has no literal");
}

std::optional<Symbol> char_symbol(char c) {
  if (c >= '0' && c <= '9') return static_cast<Symbol>(c - '0');
  if (c >= 'a' && c <= 'z') return static_cast<Symbol>(c - 'a' + 10);
  return std::nullopt;
}

EventuallyPeriodicWord parse_tail(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || text.size() < colon + 3 || text[colon + 1] != '(' ||
      text.back() != ')') {
    throw Error(ErrorCode::parse_error, "tail literal must look like TRANSIENT:(PERIOD), got '" +
                                            std::string(text) + "'");
  }
  auto symbols = [&](std::string_view part) {
    std::vector<Symbol> out;
    for (char c : part) {
      auto v = char_symbol(c);
      if (!v) throw Error(ErrorCode::parse_error, std::string("bad symbol '") + c + "'");
      out.push_back(*v);
    }
    return out;
  };
  auto transient = symbols(text.substr(0, colon));
  auto period = symbols(text.substr(colon + 2, text.size() - colon - 3));
  if (period.empty()) throw Error(ErrorCode::parse_error, "empty period block");
  return {std::move(transient), std::move(period)};
}

std::string format_tail(const EventuallyPeriodicWord& word) {
  std::string out;
  for (Symbol v : word.transient()) out += symbol_char(v);
  out += ":(";
  for (Symbol v : word.period()) out += symbol_char(v);
  out += ')';
  return out;
}

void check_alphabet(const EventuallyPeriodicWord& word, int s) {
  if (word.max_symbol() >= s) {
    throw Error(ErrorCode::symbol_out_of_range,
                "tail " + format_tail(word) + " over alphabet " + std::to_string(s));
  }
}

EventuallyPeriodicWord apply_one_sided(const LocalRule& rule, const EventuallyPeriodicWord& tail) {
  check_alphabet(tail, rule.alphabet_size());
  const std::size_t t = tail.transient().size();
  const std::size_t p = tail.period().size();
  const std::size_t r = static_cast<std::size_t>(rule.anticipation());
  const std::size_t s = static_cast<std::size_t>(rule.alphabet_size());
  std::vector<Symbol> image(t + p);
  for (std::size_t i = 1; i <= t + p; ++i) {
    std::size_t index = 0;
    for (std::size_t d = 0; d <= r; ++d) index = index * s + tail.at(i + d);
    image[i - 1] = rule.at(index);
  }
  std::vector<Symbol> period(image.begin() + static_cast<std::ptrdiff_t>(t), image.end());
  image.resize(t);
  return {std::move(image), std::move(period)};
}

bool is_tail_fixed(const EventuallyPeriodicWord& tail, const LocalRule& rule, int period) {
  if (period < 1) throw Error(ErrorCode::bad_dimensions, "period " + std::to_string(period));
  EventuallyPeriodicWord current = tail;
  for (int i = 0; i < period; ++i) current = apply_one_sided(rule, current);
  return current == tail;
}

std::optional<int> least_tail_period(const EventuallyPeriodicWord& tail, const LocalRule& rule,
                                     int q_max) {
  EventuallyPeriodicWord current = tail;
  for (int q = 1; q <= q_max; ++q) {
    current = apply_one_sided(rule, current);
    if (current == tail) return q;
  }
  return std::nullopt;
}

namespace {

// Fixed words of Phi_R^P are exactly the label sequences y with
// psi(y_i, ..., y_{i+e}) = y_i at every i, where psi is the trimmed power.
class FixedTailSearch {
 public:
  FixedTailSearch(LocalRule psi, int max_transient, int max_period)
      : psi_(std::move(psi)),
        s_(psi_.alphabet_size()),
        e_(psi_.anticipation()),
        max_transient_(max_transient),
        max_period_(max_period) {}

  std::vector<EventuallyPeriodicWord> run() {
    for (int len = 1; len <= max_period_; ++len) {
      std::vector<Symbol> block;
      block.reserve(static_cast<std::size_t>(len));
      extend_period(block, static_cast<std::size_t>(len));
    }
    return {found_.begin(), found_.end()};
  }

 private:
  bool window_ok(const std::vector<Symbol>& word, std::size_t start, bool cyclic) const {
    std::size_t index = 0;
    for (int d = 0; d <= e_; ++d) {
      std::size_t pos = start + static_cast<std::size_t>(d);
      if (cyclic) pos %= word.size();
      index = index * static_cast<std::size_t>(s_) + word[pos];
    }
    return psi_.at(index) == word[start];
  }

  void extend_period(std::vector<Symbol>& block, std::size_t len) {
    if (block.size() == len) {
      for (std::size_t i = 0; i < len; ++i) {
        if (!window_ok(block, i, true)) return;
      }
      if (primitive_root(block).size() != len) return;
      add_transients(EventuallyPeriodicWord({}, block));
      return;
    }
    for (int c = 0; c < s_; ++c) {
      block.push_back(static_cast<Symbol>(c));
      // The window that has just been completed without wrapping.
      const std::size_t last = block.size() - 1;
      const bool ok = last < static_cast<std::size_t>(e_) ||
                      window_ok(block, last - static_cast<std::size_t>(e_), false);
      if (ok) extend_period(block, len);
      block.pop_back();
    }
  }

  void add_transients(const EventuallyPeriodicWord& base) {
    std::vector<EventuallyPeriodicWord> level{base};
    for (int depth = 0;; ++depth) {
      for (const auto& w : level) found_.insert(w);
      if (depth == max_transient_) break;
      std::vector<EventuallyPeriodicWord> next;
      for (const auto& w : level) {
        for (int c = 0; c < s_; ++c) {
          std::size_t index = static_cast<std::size_t>(c);
          for (int d = 1; d <= e_; ++d) {
            index = index * static_cast<std::size_t>(s_) + w.at(static_cast<std::size_t>(d));
          }
          if (psi_.at(index) != c) continue;
          std::vector<Symbol> transient{static_cast<Symbol>(c)};
          transient.insert(transient.end(), w.transient().begin(), w.transient().end());
          EventuallyPeriodicWord candidate(std::move(transient), w.period());
          // Words whose canonical transient did not grow were already seen.
          if (candidate.transient().size() == static_cast<std::size_t>(depth) + 1) {
            next.push_back(std::move(candidate));
          }
        }
      }
      if (next.empty()) break;
      level = std::move(next);
    }
  }

  LocalRule psi_;
  int s_;
  int e_;
  int max_transient_;
  int max_period_;
  std::set<EventuallyPeriodicWord> found_;
};

}  // namespace

std::vector<EventuallyPeriodicWord> enumerate_fixed_tails(const LocalRule& rule, int power_p,
                                                          int max_transient, int max_period,
                                                          std::size_t budget) {
  if (power_p < 1 || max_transient < 0 || max_period < 1) {
    throw Error(ErrorCode::bad_dimensions, "enumeration bounds");
  }
  LocalRule psi = trimmed(power(rule, power_p, budget));
  return FixedTailSearch(std::move(psi), max_transient, max_period).run();
}

}  // namespace lpca

#include "lpca/configuration.hpp"

#include <algorithm>

#include "lpca/error.hpp"

namespace lpca {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return mix64(mix64(mix64(seed) ^ stream) ^ counter);
}

Symbol hash_to_symbol(std::uint64_t h, int s) {
  return static_cast<Symbol>((static_cast<unsigned __int128>(h) * static_cast<unsigned>(s)) >> 64);
}

LeftProvider parse_left(std::string_view text, int alphabet) {
  if (text == "zero") return ConstantLeft{0};
  auto body = [&](std::string_view prefix) -> std::optional<std::string_view> {
    if (text.substr(0, prefix.size()) == prefix) return text.substr(prefix.size());
    return std::nullopt;
  };
  if (auto rest = body("ep:")) {
    auto word = parse_tail(*rest);
    check_alphabet(word, alphabet);
    return PeriodicLeft{std::move(word)};
  }
  if (auto rest = body("rand:")) {
    try {
      std::size_t used = 0;
      const auto seed = std::stoull(std::string(*rest), &used);
      if (used != rest->size()) throw std::invalid_argument("trailing");
      return RandomLeft{seed, 0, alphabet};
    } catch (const std::exception&) {
      throw Error(ErrorCode::parse_error, "bad seed in '" + std::string(text) + "'");
    }
  }
  if (auto rest = body("word:")) {
    WordLeft left;
    for (char c : *rest) {
      auto v = char_symbol(c);
      if (!v) throw Error(ErrorCode::parse_error, std::string("bad symbol '") + c + "'");
      if (*v >= alphabet) throw Error(ErrorCode::symbol_out_of_range, std::string(1, c));
      left.symbols.push_back(*v);
    }
    return left;
  }
  throw Error(ErrorCode::parse_error, "unknown left provider '" + std::string(text) + "'");
}

std::string format_left(const LeftProvider& left) {
  return std::visit(
      overloaded{
          [](const ConstantLeft& c) {
            return c.value == 0 ? std::string("zero") : "ep::(" + std::string(1, symbol_char(c.value)) + ")";
          },
          [](const PeriodicLeft& p) { return "ep:" + format_tail(p.word); },
          [](const RandomLeft& r) {
            std::string out = "rand:" + std::to_string(r.seed);
            if (r.stream != 0) out += "/" + std::to_string(r.stream);
            return out;
          },
          [](const WordLeft& w) {
            std::string out = "word:";
            for (Symbol v : w.symbols) out += symbol_char(v);
            return out;
          },
      },
      left);
}

Symbol Configuration::symbol(Position i) const {
  if (!overrides_.empty()) {
    auto it = overrides_.find(i);
    if (it != overrides_.end()) return it->second;
  }
  if (i == 0) return anchor_;
  if (i > 0) return tail_.at(static_cast<std::size_t>(i));
  const auto n = static_cast<std::uint64_t>(-i);
  return std::visit(
      overloaded{
          [](const ConstantLeft& c) { return c.value; },
          [n](const PeriodicLeft& p) { return p.word.at(n); },
          [n](const RandomLeft& r) { return hash_to_symbol(counter_hash(r.seed, r.stream, n), r.alphabet); },
          [n](const WordLeft& w) { return n <= w.symbols.size() ? w.symbols[n - 1] : Symbol{0}; },
      },
      left_);
}

Configuration Configuration::with_symbol(Position position, Symbol value) const {
  Configuration copy = *this;
  if (position < 0) {
    copy.overrides_[position] = value;
  } else if (position == 0) {
    copy.anchor_ = value;
  } else {
    const auto i = static_cast<std::size_t>(position);
    const std::size_t cut = std::max(i, tail_.transient().size());
    std::vector<Symbol> transient, period;
    for (std::size_t n = 1; n <= cut; ++n) transient.push_back(n == i ? value : tail_.at(n));
    for (std::size_t n = cut + 1; n <= cut + tail_.period().size(); ++n) period.push_back(tail_.at(n));
    copy.tail_ = EventuallyPeriodicWord(std::move(transient), std::move(period));
  }
  return copy;
}

std::optional<EventuallyPeriodicWord> Configuration::left_word() const {
  std::optional<EventuallyPeriodicWord> base = std::visit(
      overloaded{
          [](const ConstantLeft& c) -> std::optional<EventuallyPeriodicWord> {
            return EventuallyPeriodicWord::constant(c.value);
          },
          [](const PeriodicLeft& p) -> std::optional<EventuallyPeriodicWord> { return p.word; },
          [](const RandomLeft&) -> std::optional<EventuallyPeriodicWord> { return std::nullopt; },
          [](const WordLeft& w) -> std::optional<EventuallyPeriodicWord> {
            return EventuallyPeriodicWord(w.symbols, {0});
          },
      },
      left_);
  if (!base || overrides_.empty()) return base;
  // Overrides only ever sit at negative positions; the deepest one is first.
  const auto depth = static_cast<std::size_t>(-overrides_.begin()->first);
  const std::size_t cut = std::max(depth, base->transient().size());
  std::vector<Symbol> transient, period;
  for (std::size_t n = 1; n <= cut; ++n) transient.push_back(symbol(-static_cast<Position>(n)));
  for (std::size_t n = cut + 1; n <= cut + base->period().size(); ++n) period.push_back(base->at(n));
  return EventuallyPeriodicWord(std::move(transient), std::move(period));
}

}  // namespace lpca

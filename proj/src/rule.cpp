#include "lpca/rule.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

#include "lpca/error.hpp"

namespace lpca {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::bad_dimensions: return "bad-dimensions";
    case ErrorCode::symbol_out_of_range: return "symbol-out-of-range";
    case ErrorCode::not_permutive: return "not-permutive";
    case ErrorCode::alphabet_mismatch: return "alphabet-mismatch";
    case ErrorCode::budget_exceeded: return "budget-exceeded";
    case ErrorCode::tail_not_fixed: return "tail-not-fixed";
    case ErrorCode::tail_not_periodic: return "tail-not-periodic-within-bound";
    case ErrorCode::precondition_violated: return "precondition-violated";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::not_additive_form: return "not-additive-form";
    case ErrorCode::no_witness_found: return "no-witness-found";
    case ErrorCode::parse_error: return "parse-error";
  }
  return "unknown";
}

std::optional<std::size_t> checked_power(int s, int exponent, std::size_t limit) {
  std::size_t result = 1;
  for (int i = 0; i < exponent; ++i) {
    if (result > limit / static_cast<std::size_t>(s)) return std::nullopt;
    result *= static_cast<std::size_t>(s);
  }
  if (result > limit) return std::nullopt;
  return result;
}

namespace {

std::size_t pow_exact(int s, int exponent) {
  auto p = checked_power(s, exponent);
  if (!p) throw Error(ErrorCode::budget_exceeded, "size overflow");
  return *p;
}

std::size_t budgeted_size(int s, int r, std::size_t budget) {
  auto size = checked_power(s, r + 1, budget);
  if (!size) {
    throw Error(ErrorCode::budget_exceeded,
                "table of " + std::to_string(s) + "^" + std::to_string(r + 1) +
                    " entries exceeds budget of " + std::to_string(budget));
  }
  return *size;
}

}  // namespace

Symbol LocalRule::operator()(std::span<const Symbol> window) const {
  std::size_t index = 0;
  for (Symbol t : window) index = index * static_cast<std::size_t>(alphabet_) + t;
  return table_[index];
}

LocalRule make_rule(int s, int r, std::vector<Symbol> table) {
  if (s < 2 || s > kMaxAlphabet || r < 0) {
    throw Error(ErrorCode::bad_dimensions,
                "alphabet " + std::to_string(s) + ", anticipation " + std::to_string(r));
  }
  auto expected = checked_power(s, r + 1);
  if (!expected || table.size() != *expected) {
    throw Error(ErrorCode::bad_dimensions,
                "table has " + std::to_string(table.size()) + " entries, expected " +
                    std::to_string(s) + "^" + std::to_string(r + 1));
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] >= s) {
      throw Error(ErrorCode::symbol_out_of_range,
                  "entry " + std::to_string(i) + " is " + std::to_string(table[i]));
    }
  }
  return LocalRule(s, r, std::move(table));
}

LocalRule make_additive_rule(int s, int r, Symbol a, std::span<const Symbol> theta) {
  if (s < 2 || s > kMaxAlphabet || r < 0) {
    throw Error(ErrorCode::bad_dimensions,
                "alphabet " + std::to_string(s) + ", anticipation " + std::to_string(r));
  }
  const std::size_t suffixes = pow_exact(s, r);
  if (theta.size() != suffixes) {
    throw Error(ErrorCode::bad_dimensions,
                "theta has " + std::to_string(theta.size()) + " entries, expected " +
                    std::to_string(suffixes));
  }
  if (a >= s) throw Error(ErrorCode::symbol_out_of_range, "coefficient " + std::to_string(a));
  if (std::gcd(static_cast<int>(a), s) != 1) {
    throw Error(ErrorCode::not_permutive, "gcd(" + std::to_string(a) + ", " +
                                              std::to_string(s) + ") != 1");
  }
  std::vector<Symbol> table(suffixes * static_cast<std::size_t>(s));
  for (int t0 = 0; t0 < s; ++t0) {
    for (std::size_t u = 0; u < suffixes; ++u) {
      if (theta[u] >= s) {
        throw Error(ErrorCode::symbol_out_of_range, "theta entry " + std::to_string(u));
      }
      table[static_cast<std::size_t>(t0) * suffixes + u] =
          static_cast<Symbol>((static_cast<int>(a) * t0 + theta[u]) % s);
    }
  }
  return make_rule(s, r, std::move(table));
}

LocalRule identity_rule(int s) {
  std::vector<Symbol> table(static_cast<std::size_t>(s));
  std::iota(table.begin(), table.end(), Symbol{0});
  return make_rule(s, 0, std::move(table));
}

std::optional<AdditiveForm> additive_form(const LocalRule& rule) {
  const int s = rule.alphabet_size();
  const std::size_t suffixes = rule.window_count() / static_cast<std::size_t>(s);
  auto table = rule.table();
  AdditiveForm form;
  form.theta.assign(table.begin(), table.begin() + static_cast<std::ptrdiff_t>(suffixes));
  form.coefficient = static_cast<Symbol>((table[suffixes] - table[0] + s) % s);
  for (int t0 = 0; t0 < s; ++t0) {
    for (std::size_t u = 0; u < suffixes; ++u) {
      const int expected = (form.coefficient * t0 + form.theta[u]) % s;
      if (table[static_cast<std::size_t>(t0) * suffixes + u] != expected) return std::nullopt;
    }
  }
  return form;
}

bool is_left_permutive(const LocalRule& rule) {
  const int s = rule.alphabet_size();
  const std::size_t suffixes = rule.window_count() / static_cast<std::size_t>(s);
  std::vector<bool> seen(static_cast<std::size_t>(s));
  for (std::size_t u = 0; u < suffixes; ++u) {
    std::fill(seen.begin(), seen.end(), false);
    for (int t0 = 0; t0 < s; ++t0) {
      const Symbol v = rule.at(static_cast<std::size_t>(t0) * suffixes + u);
      if (seen[v]) return false;
      seen[v] = true;
    }
  }
  return true;
}

LocalRule compose(const LocalRule& outer, const LocalRule& inner, std::size_t budget) {
  if (outer.alphabet_size() != inner.alphabet_size()) {
    throw Error(ErrorCode::alphabet_mismatch,
                std::to_string(outer.alphabet_size()) + " vs " +
                    std::to_string(inner.alphabet_size()));
  }
  const int s = outer.alphabet_size();
  const int ro = outer.anticipation();
  const int ri = inner.anticipation();
  const int total = ro + ri;
  const std::size_t size = budgeted_size(s, total, budget);
  const std::size_t inner_size = inner.window_count();

  // The inner window starting at offset j occupies digits j..j+ri of the
  // output window, i.e. (index / s^(total-j-ri)) mod s^(ri+1).
  std::vector<std::size_t> shift(static_cast<std::size_t>(ro) + 1);
  for (int j = 0; j <= ro; ++j) shift[static_cast<std::size_t>(j)] = pow_exact(s, total - j - ri);

  auto inner_table = inner.table();
  auto outer_table = outer.table();
  std::vector<Symbol> table(size);
  for (std::size_t index = 0; index < size; ++index) {
    std::size_t outer_index = 0;
    for (int j = 0; j <= ro; ++j) {
      const Symbol v = inner_table[(index / shift[static_cast<std::size_t>(j)]) % inner_size];
      outer_index = outer_index * static_cast<std::size_t>(s) + v;
    }
    table[index] = outer_table[outer_index];
  }
  return make_rule(s, total, std::move(table));
}

LocalRule power(const LocalRule& rule, int n, std::size_t budget) {
  if (n < 1) throw Error(ErrorCode::bad_dimensions, "power exponent " + std::to_string(n));
  budgeted_size(rule.alphabet_size(), n * rule.anticipation(), budget);
  // Growing the inner factor keeps the outer anticipation at r, so the last
  // composition dominates the cost.
  LocalRule result = rule;
  for (int i = 1; i < n; ++i) result = compose(rule, result, budget);
  return result;
}

int effective_anticipation(const LocalRule& rule) {
  const int s = rule.alphabet_size();
  const std::size_t size = rule.window_count();
  for (int j = rule.anticipation(); j >= 1; --j) {
    const std::size_t stride = pow_exact(s, rule.anticipation() - j);
    const std::size_t block = stride * static_cast<std::size_t>(s);
    for (std::size_t hi = 0; hi < size; hi += block) {
      for (std::size_t lo = 0; lo < stride; ++lo) {
        const std::size_t base = hi + lo;
        for (int d = 1; d < s; ++d) {
          if (rule.at(base + static_cast<std::size_t>(d) * stride) != rule.at(base)) return j;
        }
      }
    }
  }
  return 0;
}

LocalRule trimmed(const LocalRule& rule) {
  const int e = effective_anticipation(rule);
  if (e == rule.anticipation()) return rule;
  const int s = rule.alphabet_size();
  const std::size_t drop = pow_exact(s, rule.anticipation() - e);
  const std::size_t size = pow_exact(s, e + 1);
  std::vector<Symbol> table(size);
  for (std::size_t i = 0; i < size; ++i) table[i] = rule.at(i * drop);
  return make_rule(s, e, std::move(table));
}

LocalRule padded(const LocalRule& rule, int anticipation) {
  if (anticipation < rule.anticipation()) {
    throw Error(ErrorCode::bad_dimensions, "cannot pad to a smaller anticipation");
  }
  const int s = rule.alphabet_size();
  const std::size_t extra = pow_exact(s, anticipation - rule.anticipation());
  std::vector<Symbol> table(rule.window_count() * extra);
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = rule.at(i / extra);
  return make_rule(s, anticipation, std::move(table));
}

std::uint64_t permutation_order(std::span<const Symbol> perm) {
  std::uint64_t order = 1;
  std::vector<bool> visited(perm.size());
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (visited[start]) continue;
    std::uint64_t length = 0;
    for (std::size_t x = start; !visited[x]; x = perm[x]) {
      visited[x] = true;
      ++length;
    }
    order = std::lcm(order, length);
  }
  return order;
}

std::optional<int> identity_order(const LocalRule& rule, int bound, std::size_t budget) {
  if (!is_left_permutive(rule)) {
    throw Error(ErrorCode::precondition_violated, "identity_order needs a left-permutive rule");
  }
  // A map that is not one-to-one has no identity power.
  if (effective_anticipation(rule) > 0 && !injectivity_check(rule)) return std::nullopt;

  LocalRule current = trimmed(rule);
  for (int m = 1; m <= bound; ++m) {
    if (current.anticipation() == 0) {
      // Phi^m permutes symbols; no smaller power collapsed, so every identity
      // power is a multiple of m.
      const std::uint64_t total = static_cast<std::uint64_t>(m) * permutation_order(current.table());
      if (total > static_cast<std::uint64_t>(bound)) return std::nullopt;
      return static_cast<int>(total);
    }
    if (m == bound) break;
    current = trimmed(compose(rule, current, budget));
  }
  return std::nullopt;
}

bool injectivity_check(const LocalRule& rule) {
  const LocalRule core = trimmed(rule);
  const int s = core.alphabet_size();
  const int e = core.anticipation();
  if (e == 0) {
    std::vector<bool> seen(static_cast<std::size_t>(s));
    for (Symbol v : core.table()) {
      if (seen[v]) return false;
      seen[v] = true;
    }
    return true;
  }

  // Pair graph: nodes are pairs (u, v) of length-e words, an edge joins them
  // for each pair of extensions whose images agree. The map fails to be
  // injective iff some off-diagonal node lies on a bi-infinite path.
  const std::size_t words = pow_exact(s, e);
  auto nodes_opt = checked_power(s, 2 * e, kDefaultTableBudget);
  if (!nodes_opt) throw Error(ErrorCode::budget_exceeded, "pair graph too large");
  const std::size_t nodes = *nodes_opt;
  const std::size_t us = static_cast<std::size_t>(s);

  auto successors = [&](std::size_t node, auto&& visit) {
    const std::size_t u = node / words;
    const std::size_t v = node % words;
    for (std::size_t a = 0; a < us; ++a) {
      const Symbol fa = core.at(u * us + a);
      for (std::size_t b = 0; b < us; ++b) {
        if (core.at(v * us + b) != fa) continue;
        visit(((u * us + a) % words) * words + (v * us + b) % words);
      }
    }
  };

  std::vector<std::uint32_t> indeg(nodes, 0), outdeg(nodes, 0);
  std::vector<std::vector<std::uint32_t>> preds(nodes);
  for (std::size_t n = 0; n < nodes; ++n) {
    successors(n, [&](std::size_t m) {
      ++indeg[m];
      ++outdeg[n];
      preds[m].push_back(static_cast<std::uint32_t>(n));
    });
  }

  // Nodes with an infinite backward path survive in-degree pruning.
  std::vector<bool> has_past(nodes, true);
  {
    std::deque<std::size_t> queue;
    std::vector<std::uint32_t> deg = indeg;
    for (std::size_t n = 0; n < nodes; ++n) {
      if (deg[n] == 0) queue.push_back(n);
    }
    while (!queue.empty()) {
      const std::size_t n = queue.front();
      queue.pop_front();
      has_past[n] = false;
      successors(n, [&](std::size_t m) {
        if (--deg[m] == 0) queue.push_back(m);
      });
    }
  }
  std::vector<bool> has_future(nodes, true);
  {
    std::deque<std::size_t> queue;
    std::vector<std::uint32_t> deg = outdeg;
    for (std::size_t n = 0; n < nodes; ++n) {
      if (deg[n] == 0) queue.push_back(n);
    }
    while (!queue.empty()) {
      const std::size_t n = queue.front();
      queue.pop_front();
      has_future[n] = false;
      for (std::uint32_t p : preds[n]) {
        if (--deg[p] == 0) queue.push_back(p);
      }
    }
  }
  for (std::size_t n = 0; n < nodes; ++n) {
    if (n / words != n % words && has_past[n] && has_future[n]) return false;
  }
  return true;
}

std::vector<std::uint64_t> preimage_counts(const LocalRule& rule, int len, std::size_t budget) {
  const int s = rule.alphabet_size();
  const int r = rule.anticipation();
  if (len < 1) throw Error(ErrorCode::bad_dimensions, "word length " + std::to_string(len));
  auto sources_opt = checked_power(s, len + r, budget);
  if (!sources_opt) throw Error(ErrorCode::budget_exceeded, "too many source words");
  const std::size_t sources = *sources_opt;
  const std::size_t targets = pow_exact(s, len);
  const std::size_t window = rule.window_count();
  std::vector<std::size_t> shift(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) shift[static_cast<std::size_t>(i)] = pow_exact(s, len - 1 - i);

  std::vector<std::uint64_t> counts(targets, 0);
  for (std::size_t w = 0; w < sources; ++w) {
    std::size_t image = 0;
    for (int i = 0; i < len; ++i) {
      image = image * static_cast<std::size_t>(s) +
              rule.at((w / shift[static_cast<std::size_t>(i)]) % window);
    }
    ++counts[image];
  }
  return counts;
}

}  // namespace lpca

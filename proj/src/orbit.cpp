#include "lpca/orbit.hpp"

#include <map>

#include "lpca/error.hpp"
#include "lpca/signature.hpp"

namespace lpca {

namespace {

constexpr std::size_t kMaxTailOrbit = std::size_t{1} << 16;

}  // namespace

OrbitWorkspace::OrbitWorkspace(Configuration config, LocalRule rule)
    : config_(std::move(config)), rule_(std::move(rule)) {
  check_alphabet(config_.tail(), rule_.alphabet_size());
  std::map<EventuallyPeriodicWord, std::size_t> seen;
  EventuallyPeriodicWord current = config_.tail();
  while (true) {
    auto [it, inserted] = seen.emplace(current, tail_orbit_.size());
    if (!inserted) {
      tail_preperiod_ = static_cast<std::int64_t>(it->second);
      tail_period_ = static_cast<std::int64_t>(tail_orbit_.size() - it->second);
      break;
    }
    tail_orbit_.push_back(current);
    if (tail_orbit_.size() > kMaxTailOrbit) {
      throw Error(ErrorCode::budget_exceeded, "tail orbit longer than " + std::to_string(kMaxTailOrbit));
    }
    current = apply_one_sided(rule_, current);
  }
}

std::size_t OrbitWorkspace::tail_state(std::int64_t t) const {
  if (t < tail_preperiod_ + tail_period_) return static_cast<std::size_t>(t);
  return static_cast<std::size_t>(tail_preperiod_ + (t - tail_preperiod_) % tail_period_);
}

const EventuallyPeriodicWord& OrbitWorkspace::tail_at(std::int64_t t) const {
  return tail_orbit_[tail_state(t)];
}

Symbol OrbitWorkspace::initial(Position j) const {
  const Symbol v = config_.symbol(j);
  if (v >= rule_.alphabet_size()) {
    throw Error(ErrorCode::symbol_out_of_range,
                "x_" + std::to_string(j) + " = " + std::to_string(v));
  }
  return v;
}

void OrbitWorkspace::extend(Position leftmost, std::int64_t T) {
  if (leftmost > 0 || T < 0) return;
  const auto need = static_cast<std::size_t>(T) + 1;
  const auto count = static_cast<std::size_t>(-leftmost) + 1;
  if (columns_.size() < count) columns_.resize(count);
  const int r = rule_.anticipation();
  const auto s = static_cast<std::size_t>(rule_.alphabet_size());

  for (std::size_t n = 0; n < count; ++n) {
    auto& col = columns_[n];
    if (col.size() >= need) continue;
    const Position c = -static_cast<Position>(n);
    if (col.empty()) {
      col.push_back(initial(c));
      ++cells_;
    }
    col.reserve(need);
    for (std::size_t t = col.size() - 1; t + 1 < need; ++t) {
      std::size_t index = col[t];
      for (int d = 1; d <= r; ++d) {
        const Position pos = c + d;
        const Symbol v = pos <= 0 ? columns_[static_cast<std::size_t>(-pos)][t]
                                  : tail_at(static_cast<std::int64_t>(t)).at(static_cast<std::size_t>(pos));
        index = index * s + v;
      }
      col.push_back(rule_.at(index));
      ++cells_;
    }
  }
}

std::span<const Symbol> OrbitWorkspace::column(Position j, std::int64_t T) {
  if (j > 0) throw Error(ErrorCode::precondition_violated, "column memo covers j <= 0 only");
  extend(j, T);
  return {columns_[static_cast<std::size_t>(-j)].data(), static_cast<std::size_t>(T) + 1};
}

Symbol OrbitWorkspace::value(Position j, std::int64_t t) {
  if (j > 0) return tail_at(t).at(static_cast<std::size_t>(j));
  return column(j, t)[static_cast<std::size_t>(t)];
}

bool OrbitWorkspace::suffix_fixed(Position k, std::int64_t m) {
  if (k < 0 || m < 1) throw Error(ErrorCode::bad_dimensions, "suffix_fixed needs k >= 0, m >= 1");
  if (tail_state(m) != tail_state(0)) {
    throw Error(ErrorCode::precondition_violated,
                "tail is not Phi_R^" + std::to_string(m) + "-fixed");
  }
  extend(-k, m);
  for (Position c = 0; c >= -k; --c) {
    const auto& col = columns_[static_cast<std::size_t>(-c)];
    if (col[static_cast<std::size_t>(m)] != col[0]) return false;
  }
  return true;
}

ColumnSeries column_evolution(const Configuration& config, const LocalRule& rule, Position j,
                              std::int64_t T) {
  if (T < 0) throw Error(ErrorCode::bad_dimensions, "negative horizon");
  OrbitWorkspace ws(config, rule);
  ColumnSeries series{j, {}};
  series.values.reserve(static_cast<std::size_t>(T) + 1);
  if (j <= 0) {
    auto col = ws.column(j, T);
    series.values.assign(col.begin(), col.end());
  } else {
    for (std::int64_t t = 0; t <= T; ++t) series.values.push_back(ws.value(j, t));
  }
  return series;
}

bool suffix_fixed(const Configuration& config, const LocalRule& rule, Position k, std::int64_t m) {
  OrbitWorkspace ws(config, rule);
  return ws.suffix_fixed(k, m);
}

SymbolMatrix spacetime_window(const Configuration& config, const LocalRule& rule,
                              Position k_left, Position k_right, std::int64_t T) {
  if (T < 0 || -k_left > k_right) throw Error(ErrorCode::bad_dimensions, "empty window");
  OrbitWorkspace ws(config, rule);
  SymbolMatrix out;
  out.rows = static_cast<std::size_t>(T) + 1;
  out.cols = static_cast<std::size_t>(k_left + k_right + 1);
  out.data.resize(out.rows * out.cols);
  for (std::int64_t t = 0; t <= T; ++t) {
    for (Position j = -k_left; j <= k_right; ++j) {
      out.data[static_cast<std::size_t>(t) * out.cols + static_cast<std::size_t>(j + k_left)] =
          ws.value(j, t);
    }
  }
  return out;
}

std::string to_pgm(const SymbolMatrix& window, int alphabet) {
  std::string out = "P2\n" + std::to_string(window.cols) + " " + std::to_string(window.rows) + "\n255\n";
  for (std::size_t t = 0; t < window.rows; ++t) {
    for (std::size_t j = 0; j < window.cols; ++j) {
      if (j > 0) out += ' ';
      out += std::to_string(255 * window.at(t, j) / (alphabet - 1));
    }
    out += '\n';
  }
  return out;
}

std::optional<FiniteConfiguration> finite_form(const Configuration& config) {
  auto left = config.left_word();
  if (!left) return std::nullopt;
  return FiniteConfiguration{std::move(*left), config.anchor(), config.tail()};
}

FiniteConfiguration apply_two_sided(const LocalRule& rule, const FiniteConfiguration& x) {
  const auto r = static_cast<std::size_t>(rule.anticipation());
  const auto s = static_cast<std::size_t>(rule.alphabet_size());
  // Read outward: L(n) = x_{-n} for n >= 1, L(0) = x_0, L(-m) = x_m.
  auto outward = [&](std::int64_t n) -> Symbol {
    if (n > 0) return x.left.at(static_cast<std::size_t>(n));
    if (n == 0) return x.anchor;
    return x.tail.at(static_cast<std::size_t>(-n));
  };
  const std::size_t transient = x.left.transient().size() + r;
  const std::size_t period = x.left.period().size();
  std::vector<Symbol> image(transient + period);
  for (std::size_t n = 1; n <= image.size(); ++n) {
    std::size_t index = 0;
    for (std::size_t d = 0; d <= r; ++d) index = index * s + outward(static_cast<std::int64_t>(n) - static_cast<std::int64_t>(d));
    image[n - 1] = rule.at(index);
  }
  std::vector<Symbol> left_period(image.begin() + static_cast<std::ptrdiff_t>(transient), image.end());
  image.resize(transient);

  std::size_t index = x.anchor;
  for (std::size_t d = 1; d <= r; ++d) index = index * s + x.tail.at(d);
  return {EventuallyPeriodicWord(std::move(image), std::move(left_period)), rule.at(index),
          apply_one_sided(rule, x.tail)};
}

std::string_view to_string(ProbeKind kind) {
  switch (kind) {
    case ProbeKind::infinite_so_far: return "INFINITE_SO_FAR";
    case ProbeKind::cycle_found: return "CYCLE_FOUND";
    case ProbeKind::inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

namespace {

// Brent's cycle finder on finite forms, limited to max_steps applications.
std::optional<std::pair<std::int64_t, std::int64_t>> find_cycle(const LocalRule& rule,
                                                                const FiniteConfiguration& start,
                                                                std::int64_t max_steps) {
  std::int64_t power = 1;
  std::int64_t lambda = 1;
  std::int64_t steps = 1;
  FiniteConfiguration tortoise = start;
  FiniteConfiguration hare = apply_two_sided(rule, start);
  while (tortoise != hare) {
    if (steps >= max_steps) return std::nullopt;
    if (power == lambda) {
      tortoise = hare;
      power *= 2;
      lambda = 0;
    }
    hare = apply_two_sided(rule, hare);
    ++lambda;
    ++steps;
  }
  tortoise = start;
  hare = start;
  for (std::int64_t i = 0; i < lambda; ++i) hare = apply_two_sided(rule, hare);
  std::int64_t mu = 0;
  while (tortoise != hare) {
    tortoise = apply_two_sided(rule, tortoise);
    hare = apply_two_sided(rule, hare);
    ++mu;
  }
  return std::pair{mu, lambda};
}

}  // namespace

ProbeVerdict finite_orbit_probe(const Configuration& config, const LocalRule& rule,
                                const ProbeBounds& bounds) {
  ProbeVerdict verdict;
  if (auto q = least_tail_period(config.tail(), rule, bounds.max_tail_period)) {
    SignatureBounds sb;
    sb.depth = bounds.depth;
    sb.window = bounds.window;
    const OdometerSignature sig = *q == 1 ? signature(config, rule, sb)
                                          : signature_periodic(config, rule, sb, bounds.max_tail_period);
    if (sig.status == SignatureStatus::complete) {
      verdict.kind = ProbeKind::infinite_so_far;
      for (const auto& stage : sig.stages) verdict.k_sequence.push_back(stage.k);
      verdict.moduli = sig.moduli();
      return verdict;
    }
  }
  if (auto start = finite_form(config)) {
    if (auto cycle = find_cycle(rule, *start, bounds.max_steps)) {
      verdict.kind = ProbeKind::cycle_found;
      verdict.preperiod = cycle->first;
      verdict.period = cycle->second;
    }
  }
  return verdict;
}

}  // namespace lpca

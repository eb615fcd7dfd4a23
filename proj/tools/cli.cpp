#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "lpca/classify.hpp"
#include "lpca/error.hpp"
#include "lpca/experiments.hpp"
#include "lpca/orbit.hpp"
#include "lpca/report.hpp"
#include "lpca/rule_io.hpp"
#include "lpca/signature.hpp"
#include "lpca/tail.hpp"

namespace lpca::cli {

namespace {

constexpr const char* kLeftHelp =
    "Left half x_-1, x_-2, ... as one of: zero | ep:TRANSIENT:(PERIOD) | rand:SEED | "
    "word:SYMBOLS. Sequences are read outward from the anchor, so the first symbol "
    "is x_-1; word: is zero-padded.";

struct PointOptions {
  std::string tail = ":(0)";
  std::string left = "zero";
  int anchor = 0;
  int depth = 6;
  std::int64_t window = 256;
};

void add_point_options(CLI::App* cmd, PointOptions& opt, bool signature_bounds = true) {
  auto* tail = cmd->add_option("--tail", opt.tail, "Right tail x_1, x_2, ... as TRANSIENT:(PERIOD)");
  tail->required();
  cmd->add_option("--left", opt.left, kLeftHelp)->capture_default_str();
  cmd->add_option("--anchor", opt.anchor, "Symbol x_0")->capture_default_str();
  if (!signature_bounds) return;
  cmd->add_option("--depth", opt.depth, "Signature depth")->capture_default_str()->check(CLI::Range(1, 64));
  cmd->add_option("--window", opt.window, "Leftmost place searched for k_i")->capture_default_str();
}

Configuration make_point(const PointOptions& opt, const LocalRule& rule) {
  const int s = rule.alphabet_size();
  if (opt.anchor < 0 || opt.anchor >= s) {
    throw Error(ErrorCode::symbol_out_of_range, "anchor " + std::to_string(opt.anchor));
  }
  auto tail = parse_tail(opt.tail);
  check_alphabet(tail, s);
  return {parse_left(opt.left, s), static_cast<Symbol>(opt.anchor), std::move(tail)};
}

OdometerSignature extract(const Configuration& config, const LocalRule& rule, const PointOptions& opt) {
  SignatureBounds bounds;
  bounds.depth = opt.depth;
  bounds.window = opt.window;
  if (is_tail_fixed(config.tail(), rule, 1)) return signature(config, rule, bounds);
  return signature_periodic(config, rule, bounds);
}

std::string stages_text(const OdometerSignature& sig) {
  std::string out;
  if (sig.tail_period) out += "[q=" + std::to_string(*sig.tail_period) + "]";
  for (const auto& stage : sig.stages) {
    out += "(" + std::to_string(stage.k) + "," + std::to_string(stage.s) + ")";
  }
  return out.empty() ? "(none)" : out;
}

void print_signature_text(std::ostream& out, const OdometerSignature& sig) {
  out << "stages: " << stages_text(sig) << "\n";
  out << "status: " << to_string(sig.status) << "\n";
  out << "moduli:";
  for (auto m : sig.moduli()) out << ' ' << m;
  out << "\nprofile: " << format_profile(supernatural_profile(sig)) << "\n";
}

std::vector<Symbol> parse_word(const std::string& text, int s) {
  std::vector<Symbol> word;
  for (char c : text) {
    auto v = char_symbol(c);
    if (!v) throw Error(ErrorCode::parse_error, std::string("bad symbol '") + c + "'");
    if (*v >= s) throw Error(ErrorCode::symbol_out_of_range, std::string(1, c));
    word.push_back(*v);
  }
  return word;
}

std::pair<Position, Position> parse_range(const std::string& text) {
  const auto colon = text.find(':', 1);
  try {
    if (colon == std::string::npos) throw std::invalid_argument("colon");
    std::size_t used_a = 0, used_b = 0;
    const Position a = std::stoll(text.substr(0, colon), &used_a);
    const Position b = std::stoll(text.substr(colon + 1), &used_b);
    if (used_a != colon || used_b != text.size() - colon - 1 || a > b) throw std::invalid_argument("range");
    return {a, b};
  } catch (const std::exception&) {
    throw Error(ErrorCode::parse_error, "window must be A:B with A <= B, got '" + text + "'");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Odometer analysis for left-permutive cellular automata with no memory", "lpca"};
  app.fallthrough();
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Emit JSON-lines records");

  std::function<int()> action;

  // rule info / rule power
  auto* rule_cmd = app.add_subcommand("rule", "Inspect a rule file");
  rule_cmd->require_subcommand(1);
  std::string rule_file;
  int bound = 32;
  auto* info = rule_cmd->add_subcommand("info", "Permutivity, anticipation, injectivity, identity order");
  info->add_option("FILE", rule_file, "Rule file")->required();
  info->add_option("--bound", bound, "Largest power tried for the identity order")->capture_default_str();
  info->callback([&] {
    action = [&] {
      const LocalRule rule = read_rule_file(rule_file);
      const bool permutive = is_left_permutive(rule);
      const int eff = effective_anticipation(rule);
      const bool injective = injectivity_check(rule);
      std::optional<int> order;
      std::optional<PrevalenceAssessment> prevalence;
      if (permutive) {
        order = identity_order(rule, bound);
        prevalence = prevalence_case(rule, bound);
      }
      const auto form = additive_form(rule);
      if (json) {
        Record r;
        r["kind"] = "rule_info";
        r["rule_hash"] = rule_hash(rule);
        r["alphabet"] = rule.alphabet_size();
        r["anticipation"] = rule.anticipation();
        r["effective_anticipation"] = eff;
        r["left_permutive"] = permutive;
        r["injective"] = injective;
        r["bound"] = bound;
        r["identity_order"] = order ? Record(*order) : Record(nullptr);
        r["additive_coefficient"] = form ? Record(form->coefficient) : Record(nullptr);
        r["prevalence"] = prevalence ? Record(to_string(prevalence->which)) : Record(nullptr);
        r["prevalence_reason"] = prevalence ? Record(prevalence->reason) : Record(nullptr);
        out << r.dump() << "\n";
      } else {
        out << "alphabet: " << rule.alphabet_size() << "\n"
            << "anticipation: " << rule.anticipation() << "\n"
            << "effective anticipation: " << eff << "\n"
            << "left permutive: " << (permutive ? "yes" : "no") << "\n"
            << "injective: " << (injective ? "yes" : "no") << "\n"
            << "identity order: "
            << (order ? std::to_string(*order) : "none up to " + std::to_string(bound)) << "\n"
            << "additive form: "
            << (form ? "a = " + std::to_string(form->coefficient) : std::string("no")) << "\n";
        if (prevalence) {
          out << "odometer points: " << to_string(prevalence->which) << " (" << prevalence->reason << ")\n";
        }
      }
      return kExitOk;
    };
  });

  int exponent = 1;
  auto* power_cmd = rule_cmd->add_subcommand("power", "Print the local rule of Phi^N");
  power_cmd->add_option("FILE", rule_file, "Rule file")->required();
  power_cmd->add_option("N", exponent, "Exponent")->required()->check(CLI::PositiveNumber);
  power_cmd->callback([&] {
    action = [&] {
      const LocalRule rule = read_rule_file(rule_file);
      const LocalRule result = power(rule, exponent);
      if (json) {
        Record r;
        r["kind"] = "rule_power";
        r["rule_hash"] = rule_hash(rule);
        r["n"] = exponent;
        r["power_hash"] = rule_hash(result);
        r["alphabet"] = result.alphabet_size();
        r["anticipation"] = result.anticipation();
        r["effective_anticipation"] = effective_anticipation(result);
        r["table"] = std::vector<int>(result.table().begin(), result.table().end());
        out << r.dump() << "\n";
      } else {
        out << format_rule(result);
      }
      return kExitOk;
    };
  });

  // tails enum
  auto* tails_cmd = app.add_subcommand("tails", "Right tails fixed by a power of Phi_R");
  tails_cmd->require_subcommand(1);
  int tail_power = 1, max_transient = 2, max_period = 2;
  auto* enum_cmd = tails_cmd->add_subcommand("enum", "Enumerate eventually periodic fixed tails");
  enum_cmd->add_option("FILE", rule_file, "Rule file")->required();
  enum_cmd->add_option("--power", tail_power, "P in Phi_R^P")->capture_default_str()->check(CLI::PositiveNumber);
  enum_cmd->add_option("--max-transient", max_transient, "Longest transient")->capture_default_str();
  enum_cmd->add_option("--max-period", max_period, "Longest primitive period")->capture_default_str();
  enum_cmd->callback([&] {
    action = [&] {
      const LocalRule rule = read_rule_file(rule_file);
      const auto tails = enumerate_fixed_tails(rule, tail_power, max_transient, max_period);
      for (const auto& t : tails) {
        if (json) {
          Record r;
          r["kind"] = "tail";
          r["rule_hash"] = rule_hash(rule);
          r["power"] = tail_power;
          r["tail"] = format_tail(t);
          const auto q = least_tail_period(t, rule, tail_power);
          r["least_period"] = q ? Record(*q) : Record(nullptr);
          out << r.dump() << "\n";
        } else {
          out << format_tail(t) << "\n";
        }
      }
      return kExitOk;
    };
  });

  // signature / conjugacy / classify
  PointOptions point;
  auto* sig_cmd = app.add_subcommand("signature", "Extract the odometer signature (k_i, s_i)");
  sig_cmd->add_option("FILE", rule_file, "Rule file")->required();
  add_point_options(sig_cmd, point);
  sig_cmd->callback([&] {
    action = [&] {
      const LocalRule rule = read_rule_file(rule_file);
      const Configuration config = make_point(point, rule);
      const auto sig = extract(config, rule, point);
      if (json) {
        out << signature_record(rule, config, sig).dump() << "\n";
      } else {
        print_signature_text(out, sig);
      }
      return kExitOk;
    };
  });

  std::int64_t iterations = -1;
  auto* conj_cmd = app.add_subcommand("conjugacy", "Check the digit/window correspondence on an orbit segment");
  conj_cmd->add_option("FILE", rule_file, "Rule file")->required();
  add_point_options(conj_cmd, point);
  conj_cmd->add_option("--iters", iterations, "Largest n checked (default min(prod S - 1, 200))");
  conj_cmd->callback([&] {
    action = [&] {
      const LocalRule rule = read_rule_file(rule_file);
      const Configuration config = make_point(point, rule);
      const auto sig = extract(config, rule, point);
      std::uint64_t n = 0;
      if (iterations >= 0) {
        n = static_cast<std::uint64_t>(iterations);
      } else {
        const auto product = modulus_product(sig.moduli());
        n = std::min<std::uint64_t>(product - 1, 200);
      }
      const auto report = verify_conjugacy(config, rule, sig, n);
      if (json) {
        out << conjugacy_record(rule, config, sig, report).dump() << "\n";
      } else {
        print_signature_text(out, sig);
        out << "checked n <= " << n << ": " << report.pairs_checked << " pairs, "
            << report.violation_count << " violations\n";
        for (const auto& v : report.violations) {
          out << "  violation m=" << v.m << " n=" << v.n << " level=" << v.level
              << (v.kind == ConjugacyViolation::Kind::tau_mismatch ? " (tau)" : "")
              << " digits_agree=" << v.digits_agree << " windows_agree=" << v.windows_agree << "\n";
        }
        out << (report.passed() ? "PASS" : "FAIL") << "\n";
      }
      return report.passed() ? kExitOk : kExitFalsified;
    };
  });

  PointOptions classify_point;
  classify_point.left = "rand:1";
  auto* classify_cmd = app.add_subcommand("classify", "Compare the predicted odometer with the extracted one");
  classify_cmd->add_option("FILE", rule_file, "Rule file")->required();
  add_point_options(classify_cmd, classify_point);
  classify_cmd->callback([&] {
    action = [&] {
      const LocalRule rule = read_rule_file(rule_file);
      const Configuration config = make_point(classify_point, rule);
      ExpectedProfile expected;
      try {
        expected = classify_expected(rule, config.tail());
      } catch (const Error& e) {
        if (e.code() != ErrorCode::not_additive_form) throw;
        expected.note = "not of the form a*t_0 + theta";
      }
      const auto sig = extract(config, rule, classify_point);
      const auto check = check_profile(expected, sig);
      if (json) {
        out << classify_record(rule, config, expected, sig, check).dump() << "\n";
      } else {
        out << "expected: " << describe(expected) << "\n";
        print_signature_text(out, sig);
        out << to_string(check.verdict) << " against " << describe(expected);
        if (!check.detail.empty()) out << " (" << check.detail << ")";
        out << "\n";
      }
      return check.verdict == Verdict::fail ? kExitFalsified : kExitOk;
    };
  });

  // prevalence
  std::string prev_tail = ":(0)";
  std::uint64_t trials = 100, seed = 1;
  int prev_depth = 6;
  std::int64_t prev_window = 256;
  unsigned workers = 1;
  auto* prev_cmd = app.add_subcommand("prevalence", "Sample random left halves over a fixed tail");
  prev_cmd->add_option("FILE", rule_file, "Rule file")->required();
  prev_cmd->add_option("--tail", prev_tail, "Phi_R-fixed right tail")->required();
  prev_cmd->add_option("--trials", trials, "Number of random left halves")->capture_default_str();
  prev_cmd->add_option("--depth", prev_depth, "Signature depth")->capture_default_str();
  prev_cmd->add_option("--window", prev_window, "Leftmost place searched")->capture_default_str();
  prev_cmd->add_option("--seed", seed, "Seed of the counter-based stream")->capture_default_str();
  prev_cmd->add_option("--workers", workers, "Worker threads")->capture_default_str();
  prev_cmd->callback([&] {
    action = [&] {
      const LocalRule rule = read_rule_file(rule_file);
      const auto tail = parse_tail(prev_tail);
      const auto stats = sample_prevalence(rule, tail, trials, prev_depth, prev_window, seed, workers);
      if (json) {
        for (const auto& rec : stats.records) out << trial_record(stats, rec).dump() << "\n";
        out << prevalence_record(rule, tail, stats).dump() << "\n";
      } else {
        out << "trials: " << stats.trials << "\n"
            << "infinite so far: " << stats.infinite << "\n"
            << "cycle found: " << stats.cycles << "\n"
            << "inconclusive: " << stats.inconclusive << "\n"
            << "fraction infinite: " << stats.fraction_infinite() << "\n";
        for (const auto& [moduli, count] : stats.histogram) {
          out << "  moduli";
          for (auto m : moduli) out << ' ' << m;
          out << ": " << count << "\n";
        }
      }
      return kExitOk;
    };
  });

  // periodic-search
  std::string word_text;
  std::int64_t period_bound = 8;
  int max_spatial = 12;
  auto* periodic_cmd = app.add_subcommand("periodic-search", "Find a Phi-periodic point starting with a word");
  periodic_cmd->add_option("FILE", rule_file, "Rule file")->required();
  periodic_cmd->add_option("--word", word_text, "Symbols required at places 0, 1, ...")->required();
  periodic_cmd->add_option("--bound", period_bound, "Largest Phi-period accepted")->capture_default_str();
  periodic_cmd->add_option("--max-spatial", max_spatial, "Largest spatial period tried")->capture_default_str();
  periodic_cmd->callback([&] {
    action = [&] {
      const LocalRule rule = read_rule_file(rule_file);
      const auto word = parse_word(word_text, rule.alphabet_size());
      const auto found = periodic_point_search(rule, word, period_bound, max_spatial);
      std::string block;
      if (found) {
        for (Symbol v : found->block) block += symbol_char(v);
      }
      if (json) {
        Record r;
        r["kind"] = "periodic_point";
        r["rule_hash"] = rule_hash(rule);
        r["word"] = word_text;
        r["bound"] = period_bound;
        r["found"] = found.has_value();
        r["block"] = found ? Record(block) : Record(nullptr);
        r["phi_period"] = found ? Record(found->phi_period) : Record(nullptr);
        out << r.dump() << "\n";
      } else if (found) {
        out << "(" << block << ")^inf  phi-period " << found->phi_period << "\n";
      } else {
        out << "none within bounds\n";
      }
      return kExitOk;
    };
  });

  // render
  PointOptions render_point;
  std::string range_text = "-16:16", output = "-";
  std::int64_t steps = 32;
  auto* render_cmd = app.add_subcommand("render", "Write a space-time window as plain PGM");
  render_cmd->add_option("FILE", rule_file, "Rule file")->required();
  add_point_options(render_cmd, render_point, false);
  render_cmd->add_option("--window", range_text, "Places A:B (write --window=-8:8 for negative A)")
      ->capture_default_str();
  render_cmd->add_option("--steps", steps, "Last time step")->capture_default_str();
  render_cmd->add_option("-o,--output", output, "Output file, - for stdout")->capture_default_str();
  render_cmd->callback([&] {
    action = [&] {
      const LocalRule rule = read_rule_file(rule_file);
      const Configuration config = make_point(render_point, rule);
      const auto [a, b] = parse_range(range_text);
      const auto window = spacetime_window(config, rule, -a, b, steps);
      const std::string pgm = to_pgm(window, rule.alphabet_size());
      if (output == "-") {
        out << pgm;
      } else {
        std::ofstream file(output, std::ios::binary);
        if (!file) throw Error(ErrorCode::parse_error, "cannot write " + output);
        file << pgm;
        if (json) {
          Record r;
          r["kind"] = "render";
          r["rule_hash"] = rule_hash(rule);
          r["output"] = output;
          r["rows"] = window.rows;
          r["cols"] = window.cols;
          out << r.dump() << "\n";
        }
      }
      return kExitOk;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  if (!action) {
    err << "no command\n";
    return kExitUsage;
  }
  try {
    return action();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    err << "assertion failed: " << e.what() << "\n";
    return kExitFalsified;
  }
}

}  // namespace lpca::cli

#include "lpca/rule_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lpca/error.hpp"

namespace lpca {

namespace {

long read_integer(std::istringstream& in, const char* what) {
  long value = 0;
  if (!(in >> value)) throw Error(ErrorCode::parse_error, std::string("expected ") + what);
  return value;
}

std::vector<Symbol> read_symbols(std::istringstream& in, std::size_t count, int s) {
  std::vector<Symbol> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    long v = 0;
    if (!(in >> v)) {
      throw Error(ErrorCode::bad_dimensions, "expected " + std::to_string(count) +
                                                 " symbols, found " + std::to_string(i));
    }
    if (v < 0 || v >= s) {
      throw Error(ErrorCode::symbol_out_of_range, "symbol " + std::to_string(v));
    }
    out.push_back(static_cast<Symbol>(v));
  }
  std::string extra;
  if (in >> extra) throw Error(ErrorCode::bad_dimensions, "trailing data '" + extra + "'");
  return out;
}

void check_header(long s, long r) {
  if (s < 2 || s > kMaxAlphabet || r < 0 || r > 64) {
    throw Error(ErrorCode::bad_dimensions,
                "alphabet " + std::to_string(s) + ", anticipation " + std::to_string(r));
  }
}

std::string strip_comments(std::string_view text) {
  std::string out;
  bool comment = false;
  for (char c : text) {
    if (c == '#') comment = true;
    if (c == '\n') comment = false;
    out += comment ? ' ' : c;
  }
  return out;
}

}  // namespace

LocalRule parse_rule(std::string_view text) {
  std::istringstream in{strip_comments(text)};
  std::string first;
  if (!(in >> first)) throw Error(ErrorCode::parse_error, "empty rule text");
  if (first == "additive") {
    const long s = read_integer(in, "alphabet size");
    const long r = read_integer(in, "anticipation");
    check_header(s, r);
    const long a = read_integer(in, "coefficient");
    if (a < 0 || a >= s) throw Error(ErrorCode::symbol_out_of_range, "coefficient");
    auto count = checked_power(static_cast<int>(s), static_cast<int>(r), kDefaultTableBudget);
    if (!count) throw Error(ErrorCode::budget_exceeded, "theta too large");
    auto theta = read_symbols(in, *count, static_cast<int>(s));
    return make_additive_rule(static_cast<int>(s), static_cast<int>(r), static_cast<Symbol>(a),
                              theta);
  }
  long s = 0;
  try {
    s = std::stol(first);
  } catch (const std::exception&) {
    throw Error(ErrorCode::parse_error, "bad header '" + first + "'");
  }
  const long r = read_integer(in, "anticipation");
  check_header(s, r);
  auto count = checked_power(static_cast<int>(s), static_cast<int>(r) + 1, kDefaultTableBudget);
  if (!count) throw Error(ErrorCode::budget_exceeded, "table too large");
  return make_rule(static_cast<int>(s), static_cast<int>(r),
                   read_symbols(in, *count, static_cast<int>(s)));
}

LocalRule read_rule_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw Error(ErrorCode::parse_error, "cannot open " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_rule(buffer.str());
}

std::string format_rule(const LocalRule& rule) {
  const int s = rule.alphabet_size();
  std::string out = std::to_string(s) + " " + std::to_string(rule.anticipation()) + "\n";
  auto table = rule.table();
  for (std::size_t i = 0; i < table.size(); ++i) {
    out += std::to_string(table[i]);
    out += ((i + 1) % static_cast<std::size_t>(s) == 0) ? '\n' : ' ';
  }
  return out;
}

std::string format_additive_rule(const LocalRule& rule) {
  auto form = additive_form(rule);
  if (!form) throw Error(ErrorCode::not_additive_form, "rule is not a*t_0 + theta");
  const int s = rule.alphabet_size();
  std::string out = "additive " + std::to_string(s) + " " + std::to_string(rule.anticipation()) +
                    " " + std::to_string(form->coefficient) + "\n";
  for (std::size_t i = 0; i < form->theta.size(); ++i) {
    out += std::to_string(form->theta[i]);
    out += ((i + 1) % static_cast<std::size_t>(s) == 0 || i + 1 == form->theta.size()) ? '\n' : ' ';
  }
  return out;
}

std::string rule_hash(const LocalRule& rule) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : format_rule(rule)) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace lpca

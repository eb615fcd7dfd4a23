#pragma once

#include <string>
#include <string_view>

#include "lpca/rule.hpp"

namespace lpca {

// Rule files are plain text. The table form is a header line "s r" followed
// by s^(r+1) whitespace-separated symbols, t_r varying fastest. The additive
// form is "additive s r a" followed by s^r theta values. A '#' starts a
// comment running to the end of the line.

LocalRule parse_rule(std::string_view text);
LocalRule read_rule_file(const std::string& path);

/// Canonical table form: header, then one line of s symbols per prefix
/// (t_0, ..., t_{r-1}). parse_rule(format_rule(f)) == f and the text is
/// reproduced byte-for-byte by a second round trip.
std::string format_rule(const LocalRule& rule);

/// Additive form text for a rule a*t_0 + theta; throws not-additive-form.
std::string format_additive_rule(const LocalRule& rule);

/// FNV-1a of the canonical table text, rendered as 16 hex digits.
std::string rule_hash(const LocalRule& rule);

}  // namespace lpca

#pragma once

// UTF-8 text helpers shared by every module. All tokenization in the
// project goes through split_tokens so thresholds, TTR, BPE and BLEU agree
// on what a token is.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cforge::text {

std::string nfc(std::string_view s);

// Unicode case folding (full folding, e.g. "ß" -> "ss").
std::string case_fold(std::string_view s);

// Trims Unicode white space on both ends.
std::string trim(std::string_view s);

// NFC, then split on runs of Unicode white space.
std::vector<std::string> split_tokens(std::string_view s);

// Tokens re-joined with single spaces.
std::string normalize_spaces(std::string_view s);

bool has_line_break(std::string_view s);

// Splits into UTF-8 encoded code points. Invalid bytes become U+FFFD.
std::vector<std::string> code_points(std::string_view s);

std::string join(const std::vector<std::string> &parts, std::string_view sep);

} // namespace cforge::text

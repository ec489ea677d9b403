#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace openmic {

/// Decodes UTF-8 into codepoints. Invalid sequences decode to U+FFFD, one
/// replacement per offending byte, so counting stays total on arbitrary input.
std::vector<char32_t> utf8_decode(std::string_view text);

void utf8_append(std::string& out, char32_t cp);

/// A codepoint counts toward spoken length: CJK ideographs, kana, hangul,
/// ASCII alphanumerics and their fullwidth forms. Punctuation, whitespace and
/// marker syntax do not.
bool is_speakable(char32_t cp);

/// Speakable codepoints in plain (marker-free) text.
std::size_t speakable_count_plain(std::string_view text);

/// Speakable codepoints after removing bracketed stage markers ([pause:600],
/// [/emphasis], ...) and collapsing the [[ escape. Tolerates arbitrary text;
/// an unterminated bracket run is treated as literal text.
std::size_t speakable_char_count(std::string_view text);

std::string replace_all(std::string text, std::string_view from, std::string_view to);

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 1469598103934665603ULL);

std::string to_hex(std::uint64_t value);

}  // namespace openmic

#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace morphex::text {

/// Decodes UTF-8 into code points. Malformed bytes decode to U+FFFD.
std::u32string decode(std::string_view utf8);

std::string encode(std::u32string_view cps);
std::string encode(char32_t cp);

/// Number of code points in a UTF-8 string.
std::size_t length(std::string_view utf8);

/// Substring by code-point offset and count.
std::string slice(std::string_view utf8, std::size_t index, std::size_t count);

bool is_space(char32_t cp);

/// Token separators besides whitespace. Transliteration symbols such as
/// ' ` _ ^ - ~ and interior '.' are word characters.
bool is_separator(char32_t cp);

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view bytes);

}  // namespace morphex::text

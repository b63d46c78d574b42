#pragma once

#include <string>
#include <string_view>

namespace wecnn::utf8 {

/// Decodes UTF-8; invalid sequences become U+FFFD.
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view text);

void append(std::string& out, char32_t cp);

/// Simple case folding for ASCII, Latin-1, Latin Extended-A, Greek and Cyrillic.
char32_t to_lower(char32_t cp);

bool is_space(char32_t cp);

}  // namespace wecnn::utf8

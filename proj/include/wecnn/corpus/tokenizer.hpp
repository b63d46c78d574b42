#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace wecnn::corpus {

enum class TokenKind { word, handle, hashtag, url, other };

const char* to_string(TokenKind kind);

struct Token {
  std::string surface;
  TokenKind kind = TokenKind::word;

  friend bool operator==(const Token&, const Token&) = default;
};

/// True for lowercase `http://`, `https://` or `www.` prefixed strings with a
/// non-empty remainder.
bool is_url(std::string_view surface);

/// Kind implied by a surface form: `@x` handle, `#x` hashtag, URL, word if it
/// contains a letter or digit, otherwise other.
TokenKind classify(std::string_view surface);

/// Splits tweet text into lowercase tokens.
///
/// Whitespace separates chunks. A chunk that is a URL is kept whole (minus
/// trailing sentence punctuation). Otherwise `@name` and `#name` runs become
/// handle/hashtag tokens with their sigil, runs of letters/digits become word
/// tokens, runs of emoji/pictographs become `other` tokens and punctuation is
/// dropped. Elongations such as "yaaaa" are kept verbatim.
std::vector<Token> tokenize(std::string_view text);

/// Surfaces joined by single spaces.
std::string join(const std::vector<Token>& tokens);

}  // namespace wecnn::corpus

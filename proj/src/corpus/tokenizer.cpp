#include "wecnn/corpus/tokenizer.hpp"

#include "wecnn/utf8.hpp"

namespace wecnn::corpus {

namespace {

enum class CharClass { word, symbol, punct };

CharClass char_class(char32_t cp) {
  if (cp < 0x80) {
    if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9')) {
      return CharClass::word;
    }
    return CharClass::punct;
  }
  if (cp >= 0xA0 && cp <= 0xBF) {
    // ª, µ and º are letters; the rest of the block (¡ ¿ « » ...) is punctuation.
    return (cp == 0xAA || cp == 0xB5 || cp == 0xBA) ? CharClass::word : CharClass::punct;
  }
  if (cp == 0xD7 || cp == 0xF7) return CharClass::punct;
  if (cp == 0x200D || cp == 0xFE0F || cp == 0x20E3) return CharClass::symbol;
  if (cp >= 0x2000 && cp <= 0x206F) return CharClass::punct;
  if (cp >= 0x3000 && cp <= 0x303F) return CharClass::punct;
  if ((cp >= 0x2190 && cp <= 0x2BFF) || (cp >= 0x1F000 && cp <= 0x1FAFF)) return CharClass::symbol;
  if (cp == 0xFFFD) return CharClass::punct;
  return CharClass::word;
}

bool is_name_char(char32_t cp) { return cp == '_' || char_class(cp) == CharClass::word; }

bool is_trailing_punct(char32_t cp) {
  switch (cp) {
    case '.': case ',': case ';': case ':': case '!': case '?': case ')': case ']':
    case '}': case '"': case '\'': case 0xBB: case 0x2026: case 0x201D: case 0x2019:
      return true;
    default:
      return false;
  }
}

bool starts_with(std::u32string_view s, std::u32string_view prefix) {
  return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

bool is_url_chunk(std::u32string_view s) {
  for (std::u32string_view prefix : {U"http://", U"https://", U"www."}) {
    if (starts_with(s, prefix) && s.size() > prefix.size()) return true;
  }
  return false;
}

void tokenize_chunk(std::u32string_view chunk, std::vector<Token>& out) {
  if (is_url_chunk(chunk)) {
    std::size_t end = chunk.size();
    while (end > 0 && is_trailing_punct(chunk[end - 1])) --end;
    if (is_url_chunk(chunk.substr(0, end))) {
      out.push_back({utf8::encode(chunk.substr(0, end)), TokenKind::url});
      return;
    }
  }
  std::size_t i = 0;
  while (i < chunk.size()) {
    const char32_t cp = chunk[i];
    if (cp == '@' || cp == '#') {
      std::size_t j = i + 1;
      while (j < chunk.size() && is_name_char(chunk[j])) ++j;
      if (j > i + 1) {
        out.push_back({utf8::encode(chunk.substr(i, j - i)),
                       cp == '@' ? TokenKind::handle : TokenKind::hashtag});
      }
      i = j;
      continue;
    }
    const CharClass cls = char_class(cp);
    if (cls == CharClass::punct) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < chunk.size() && char_class(chunk[j]) == cls) ++j;
    out.push_back({utf8::encode(chunk.substr(i, j - i)),
                   cls == CharClass::word ? TokenKind::word : TokenKind::other});
    i = j;
  }
}

}  // namespace

const char* to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::word: return "word";
    case TokenKind::handle: return "handle";
    case TokenKind::hashtag: return "hashtag";
    case TokenKind::url: return "url";
    case TokenKind::other: return "other";
  }
  return "other";
}

bool is_url(std::string_view surface) { return is_url_chunk(utf8::decode(surface)); }

TokenKind classify(std::string_view surface) {
  if (surface.size() > 1 && surface.front() == '@') return TokenKind::handle;
  if (surface.size() > 1 && surface.front() == '#') return TokenKind::hashtag;
  if (is_url(surface)) return TokenKind::url;
  for (char32_t cp : utf8::decode(surface)) {
    if (char_class(cp) == CharClass::word) return TokenKind::word;
  }
  return TokenKind::other;
}

std::vector<Token> tokenize(std::string_view text) {
  std::u32string lowered = utf8::decode(text);
  for (auto& cp : lowered) cp = utf8::to_lower(cp);

  std::vector<Token> out;
  std::size_t i = 0;
  while (i < lowered.size()) {
    while (i < lowered.size() && utf8::is_space(lowered[i])) ++i;
    std::size_t j = i;
    while (j < lowered.size() && !utf8::is_space(lowered[j])) ++j;
    if (j > i) tokenize_chunk(std::u32string_view(lowered).substr(i, j - i), out);
    i = j;
  }
  return out;
}

std::string join(const std::vector<Token>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i].surface;
  }
  return out;
}

}  // namespace wecnn::corpus

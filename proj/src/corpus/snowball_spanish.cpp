#include <array>
#include <optional>
#include <string>

#include "wecnn/corpus/stemmer.hpp"
#include "wecnn/utf8.hpp"

// Port of the Snowball Spanish stemmer. Suffix tables and step order follow
// spanish.sbl; each step works on the current end of the word.

namespace wecnn::corpus {

namespace {

bool is_vowel(char32_t c) {
  switch (c) {
    case U'a': case U'e': case U'i': case U'o': case U'u':
    case U'á': case U'é': case U'í': case U'ó': case U'ú': case U'ü':
      return true;
    default:
      return false;
  }
}

constexpr std::array<std::u32string_view, 13> kPronouns = {
    U"me", U"se", U"sela", U"selo", U"selas", U"selos", U"la",
    U"le", U"lo", U"las", U"les", U"los", U"nos"};

struct Entry {
  std::u32string_view suffix;
  int action;
};

// Endings allowed in front of an attached pronoun.
constexpr std::array<Entry, 11> kPronounHosts = {{
    {U"iéndo", 1}, {U"ándo", 2}, {U"ár", 3}, {U"ér", 4}, {U"ír", 5},
    {U"ando", 6}, {U"iendo", 6}, {U"ar", 6}, {U"er", 6}, {U"ir", 6},
    {U"yendo", 7},
}};

constexpr std::array<Entry, 48> kStandard = {{
    {U"anza", 1}, {U"anzas", 1}, {U"ico", 1}, {U"ica", 1}, {U"icos", 1}, {U"icas", 1},
    {U"ismo", 1}, {U"ismos", 1}, {U"able", 1}, {U"ables", 1}, {U"ible", 1}, {U"ibles", 1},
    {U"ista", 1}, {U"istas", 1}, {U"oso", 1}, {U"osa", 1}, {U"osos", 1}, {U"osas", 1},
    {U"amiento", 1}, {U"amientos", 1}, {U"imiento", 1}, {U"imientos", 1},
    {U"adora", 2}, {U"ador", 2}, {U"ación", 2}, {U"acion", 2}, {U"adoras", 2}, {U"adores", 2},
    {U"aciones", 2}, {U"ante", 2}, {U"antes", 2}, {U"ancia", 2}, {U"ancias", 2},
    {U"logía", 3}, {U"logías", 3},
    {U"ución", 4}, {U"ucion", 4}, {U"uciones", 4},
    {U"encia", 5}, {U"encias", 5},
    {U"amente", 6},
    {U"mente", 7},
    {U"idad", 8}, {U"idades", 8},
    {U"iva", 9}, {U"ivo", 9}, {U"ivas", 9}, {U"ivos", 9},
}};

constexpr std::array<std::u32string_view, 12> kYVerb = {
    U"ya", U"ye", U"yan", U"yen", U"yeron", U"yendo", U"yo", U"yó",
    U"yas", U"yes", U"yais", U"yamos"};

constexpr std::array<Entry, 96> kVerb = {{
    {U"en", 1}, {U"es", 1}, {U"éis", 1}, {U"emos", 1},
    {U"arían", 2}, {U"arías", 2}, {U"arán", 2}, {U"arás", 2}, {U"aríais", 2}, {U"aría", 2},
    {U"aréis", 2}, {U"aríamos", 2}, {U"aremos", 2}, {U"ará", 2}, {U"aré", 2},
    {U"erían", 2}, {U"erías", 2}, {U"erán", 2}, {U"erás", 2}, {U"eríais", 2}, {U"ería", 2},
    {U"eréis", 2}, {U"eríamos", 2}, {U"eremos", 2}, {U"erá", 2}, {U"eré", 2},
    {U"irían", 2}, {U"irías", 2}, {U"irán", 2}, {U"irás", 2}, {U"iríais", 2}, {U"iría", 2},
    {U"iréis", 2}, {U"iríamos", 2}, {U"iremos", 2}, {U"irá", 2}, {U"iré", 2},
    {U"aba", 2}, {U"ada", 2}, {U"ida", 2}, {U"ía", 2}, {U"ara", 2}, {U"iera", 2},
    {U"ad", 2}, {U"ed", 2}, {U"id", 2}, {U"ase", 2}, {U"iese", 2}, {U"aste", 2}, {U"iste", 2},
    {U"an", 2}, {U"aban", 2}, {U"ían", 2}, {U"aran", 2}, {U"ieran", 2}, {U"asen", 2},
    {U"iesen", 2}, {U"aron", 2}, {U"ieron", 2}, {U"ado", 2}, {U"ido", 2}, {U"ando", 2},
    {U"iendo", 2}, {U"ió", 2}, {U"ar", 2}, {U"er", 2}, {U"ir", 2}, {U"as", 2}, {U"abas", 2},
    {U"adas", 2}, {U"idas", 2}, {U"ías", 2}, {U"aras", 2}, {U"ieras", 2}, {U"ases", 2},
    {U"ieses", 2}, {U"ís", 2}, {U"áis", 2}, {U"abais", 2}, {U"íais", 2}, {U"arais", 2},
    {U"ierais", 2}, {U"aseis", 2}, {U"ieseis", 2}, {U"asteis", 2}, {U"isteis", 2},
    {U"ados", 2}, {U"idos", 2}, {U"amos", 2}, {U"ábamos", 2}, {U"íamos", 2}, {U"imos", 2},
    {U"áramos", 2}, {U"iéramos", 2}, {U"iésemos", 2}, {U"ásemos", 2},
}};

constexpr std::array<Entry, 8> kResidual = {{
    {U"os", 1}, {U"a", 1}, {U"o", 1}, {U"á", 1}, {U"í", 1}, {U"ó", 1},
    {U"e", 2}, {U"é", 2},
}};

class SpanishWord {
 public:
  explicit SpanishWord(std::u32string w) : s_(std::move(w)) { mark_regions(); }

  std::u32string run() {
    attached_pronoun();
    if (!standard_suffix() && !y_verb_suffix()) verb_suffix();
    residual_suffix();
    postlude();
    return std::move(s_);
  }

 private:
  std::size_t gopast_vowel(std::size_t i) const {
    while (i < s_.size() && !is_vowel(s_[i])) ++i;
    return i < s_.size() ? i + 1 : npos;
  }
  std::size_t gopast_consonant(std::size_t i) const {
    while (i < s_.size() && is_vowel(s_[i])) ++i;
    return i < s_.size() ? i + 1 : npos;
  }
  bool vowel_at(std::size_t i) const { return i < s_.size() && is_vowel(s_[i]); }
  bool consonant_at(std::size_t i) const { return i < s_.size() && !is_vowel(s_[i]); }

  void mark_regions() {
    const std::size_t n = s_.size();
    rv_ = r1_ = r2_ = n;

    std::size_t pv = npos;
    if (vowel_at(0)) {
      if (consonant_at(1)) pv = gopast_vowel(2);
      if (pv == npos && vowel_at(1)) pv = gopast_consonant(2);
    } else if (consonant_at(0)) {
      if (consonant_at(1)) pv = gopast_vowel(2);
      if (pv == npos && vowel_at(1) && n > 2) pv = 3;
    }
    if (pv != npos) rv_ = pv;

    std::size_t p = gopast_vowel(0);
    if (p != npos) p = gopast_consonant(p);
    if (p == npos) return;
    r1_ = p;
    p = gopast_vowel(p);
    if (p != npos) p = gopast_consonant(p);
    if (p != npos) r2_ = p;
  }

  bool ends_with(std::u32string_view suffix, std::size_t end, std::size_t lower = 0) const {
    return end >= suffix.size() && end - suffix.size() >= lower &&
           std::u32string_view(s_).substr(end - suffix.size(), suffix.size()) == suffix;
  }

  template <typename Table>
  std::optional<Entry> longest(const Table& table, std::size_t end, std::size_t lower = 0) const {
    std::optional<Entry> best;
    for (const auto& e : table) {
      if (ends_with(e.suffix, end, lower) && (!best || e.suffix.size() > best->suffix.size())) {
        best = e;
      }
    }
    return best;
  }

  // Deletes a suffix ending at the word end if it starts inside R2.
  bool delete_in_r2(std::u32string_view suffix) {
    if (!ends_with(suffix, s_.size())) return false;
    const std::size_t start = s_.size() - suffix.size();
    if (start < r2_) return false;
    s_.resize(start);
    return true;
  }

  void attached_pronoun() {
    std::size_t pronoun_len = 0;
    for (auto p : kPronouns) {
      if (ends_with(p, s_.size()) && p.size() > pronoun_len) pronoun_len = p.size();
    }
    if (pronoun_len == 0) return;
    const std::size_t pos = s_.size() - pronoun_len;
    const auto host = longest(kPronounHosts, pos);
    if (!host) return;
    const std::size_t host_start = pos - host->suffix.size();
    if (host_start < rv_) return;
    switch (host->action) {
      case 1: s_.replace(host_start, std::u32string::npos, U"iendo"); break;
      case 2: s_.replace(host_start, std::u32string::npos, U"ando"); break;
      case 3: s_.replace(host_start, std::u32string::npos, U"ar"); break;
      case 4: s_.replace(host_start, std::u32string::npos, U"er"); break;
      case 5: s_.replace(host_start, std::u32string::npos, U"ir"); break;
      case 6: s_.resize(pos); break;
      case 7:
        if (host_start > 0 && s_[host_start - 1] == U'u') s_.resize(pos);
        break;
    }
  }

  bool standard_suffix() {
    const auto m = longest(kStandard, s_.size());
    if (!m) return false;
    const std::size_t start = s_.size() - m->suffix.size();
    const bool in_r2 = start >= r2_;
    switch (m->action) {
      case 1:
        if (!in_r2) return false;
        s_.resize(start);
        return true;
      case 2:
        if (!in_r2) return false;
        s_.resize(start);
        delete_in_r2(U"ic");
        return true;
      case 3:
        if (!in_r2) return false;
        s_.replace(start, std::u32string::npos, U"log");
        return true;
      case 4:
        if (!in_r2) return false;
        s_.replace(start, std::u32string::npos, U"u");
        return true;
      case 5:
        if (!in_r2) return false;
        s_.replace(start, std::u32string::npos, U"ente");
        return true;
      case 6:
        if (start < r1_) return false;
        s_.resize(start);
        if (delete_in_r2(U"iv")) {
          delete_in_r2(U"at");
        } else if (!delete_in_r2(U"os") && !delete_in_r2(U"ic")) {
          delete_in_r2(U"ad");
        }
        return true;
      case 7:
        if (!in_r2) return false;
        s_.resize(start);
        if (!delete_in_r2(U"able") && !delete_in_r2(U"ible")) delete_in_r2(U"ante");
        return true;
      case 8:
        if (!in_r2) return false;
        s_.resize(start);
        if (!delete_in_r2(U"abil") && !delete_in_r2(U"ic")) delete_in_r2(U"iv");
        return true;
      case 9:
        if (!in_r2) return false;
        s_.resize(start);
        delete_in_r2(U"at");
        return true;
    }
    return false;
  }

  bool y_verb_suffix() {
    if (s_.size() < rv_) return false;
    std::size_t len = 0;
    for (auto y : kYVerb) {
      if (ends_with(y, s_.size(), rv_) && y.size() > len) len = y.size();
    }
    if (len == 0) return false;
    const std::size_t start = s_.size() - len;
    if (start == 0 || s_[start - 1] != U'u') return false;
    s_.resize(start);
    return true;
  }

  bool verb_suffix() {
    if (s_.size() < rv_) return false;
    const auto m = longest(kVerb, s_.size(), rv_);
    if (!m) return false;
    std::size_t start = s_.size() - m->suffix.size();
    if (m->action == 1 && start >= 2 && s_[start - 1] == U'u' && s_[start - 2] == U'g') {
      --start;
    }
    s_.resize(start);
    return true;
  }

  void residual_suffix() {
    const auto m = longest(kResidual, s_.size());
    if (!m) return;
    const std::size_t start = s_.size() - m->suffix.size();
    if (start < rv_) return;
    s_.resize(start);
    if (m->action == 2 && start >= 2 && s_[start - 1] == U'u' && s_[start - 2] == U'g' &&
        start - 1 >= rv_) {
      s_.resize(start - 1);
    }
  }

  void postlude() {
    for (auto& c : s_) {
      switch (c) {
        case U'á': c = U'a'; break;
        case U'é': c = U'e'; break;
        case U'í': c = U'i'; break;
        case U'ó': c = U'o'; break;
        case U'ú': c = U'u'; break;
        default: break;
      }
    }
  }

  static constexpr std::size_t npos = std::u32string::npos;

  std::u32string s_;
  std::size_t rv_ = 0;
  std::size_t r1_ = 0;
  std::size_t r2_ = 0;
};

}  // namespace

std::string SpanishSnowballStemmer::stem(std::string_view word) const {
  return utf8::encode(SpanishWord(utf8::decode(word)).run());
}

}  // namespace wecnn::corpus

#include <fstream>
#include <string>

#include "wecnn/common.hpp"
#include "wecnn/corpus/preprocess.hpp"
#include "wecnn/utf8.hpp"

namespace wecnn::corpus {

namespace {

// Mirrors resources/stopwords_es.txt (the Snowball Spanish stop list).
const char* const kSpanishStopWords[] = {
    "de", "la", "que", "el", "en", "y", "a", "los", "del", "se", "las", "por", "un", "para",
    "con", "no", "una", "su", "al", "lo", "como", "más", "pero", "sus", "le", "ya", "o", "este",
    "sí", "porque", "esta", "entre", "cuando", "muy", "sin", "sobre", "también", "me", "hasta",
    "hay", "donde", "quien", "desde", "todo", "nos", "durante", "todos", "uno", "les", "ni",
    "contra", "otros", "ese", "eso", "ante", "ellos", "e", "esto", "mí", "antes", "algunos",
    "qué", "unos", "yo", "otro", "otras", "otra", "él", "tanto", "esa", "estos", "mucho",
    "quienes", "nada", "muchos", "cual", "poco", "ella", "estar", "estas", "algunas", "algo",
    "nosotros", "mi", "mis", "tú", "te", "ti", "tu", "tus", "ellas", "nosotras", "vosotros",
    "vosotras", "os", "mío", "mía", "míos", "mías", "tuyo", "tuya", "tuyos", "tuyas", "suyo",
    "suya", "suyos", "suyas", "nuestro", "nuestra", "nuestros", "nuestras", "vuestro",
    "vuestra", "vuestros", "vuestras", "esos", "esas", "estoy", "estás", "está", "estamos",
    "estáis", "están", "esté", "estés", "estemos", "estéis", "estén", "estaré", "estarás",
    "estará", "estaremos", "estaréis", "estarán", "estaría", "estarías", "estaríamos",
    "estaríais", "estarían", "estaba", "estabas", "estábamos", "estabais", "estaban", "estuve",
    "estuviste", "estuvo", "estuvimos", "estuvisteis", "estuvieron", "estuviera", "estuvieras",
    "estuviéramos", "estuvierais", "estuvieran", "estuviese", "estuvieses", "estuviésemos",
    "estuvieseis", "estuviesen", "estando", "estado", "estada", "estados", "estadas", "estad",
    "he", "has", "ha", "hemos", "habéis", "han", "haya", "hayas", "hayamos", "hayáis", "hayan",
    "habré", "habrás", "habrá", "habremos", "habréis", "habrán", "habría", "habrías",
    "habríamos", "habríais", "habrían", "había", "habías", "habíamos", "habíais", "habían",
    "hube", "hubiste", "hubo", "hubimos", "hubisteis", "hubieron", "hubiera", "hubieras",
    "hubiéramos", "hubierais", "hubieran", "hubiese", "hubieses", "hubiésemos", "hubieseis",
    "hubiesen", "habiendo", "habido", "habida", "habidos", "habidas", "soy", "eres", "es",
    "somos", "sois", "son", "sea", "seas", "seamos", "seáis", "sean", "seré", "serás", "será",
    "seremos", "seréis", "serán", "sería", "serías", "seríamos", "seríais", "serían", "era",
    "eras", "éramos", "erais", "eran", "fui", "fuiste", "fue", "fuimos", "fuisteis", "fueron",
    "fuera", "fueras", "fuéramos", "fuerais", "fueran", "fuese", "fueses", "fuésemos",
    "fueseis", "fuesen", "siendo", "sido", "tengo", "tienes", "tiene", "tenemos", "tenéis",
    "tienen", "tenga", "tengas", "tengamos", "tengáis", "tengan", "tendré", "tendrás", "tendrá",
    "tendremos", "tendréis", "tendrán", "tendría", "tendrías", "tendríamos", "tendríais",
    "tendrían", "tenía", "tenías", "teníamos", "teníais", "tenían", "tuve", "tuviste", "tuvo",
    "tuvimos", "tuvisteis", "tuvieron", "tuviera", "tuvieras", "tuviéramos", "tuvierais",
    "tuvieran", "tuviese", "tuvieses", "tuviésemos", "tuvieseis", "tuviesen", "teniendo",
    "tenido", "tenida", "tenidos", "tenidas", "tened",
};

std::string lowercase(std::string_view s) {
  std::u32string cps = utf8::decode(s);
  for (auto& c : cps) c = utf8::to_lower(c);
  return utf8::encode(cps);
}

}  // namespace

StopWords StopWords::spanish_default() {
  std::unordered_set<std::string> words;
  for (const char* w : kSpanishStopWords) words.emplace(w);
  return StopWords(std::move(words));
}

StopWords StopWords::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open stop-word file: " + path.string());
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.pop_back();
    }
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '|') continue;
    words.insert(lowercase(std::string_view(line).substr(first)));
  }
  return StopWords(std::move(words));
}

std::vector<Token> preprocess(std::span<const Token> tokens, const StopWords& stopwords,
                              const Stemmer& stemmer) {
  std::vector<Token> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (stopwords.contains(t.surface)) continue;
    if (t.kind != TokenKind::word) {
      out.push_back(t);
      continue;
    }
    std::string stem = stemmer.stem(t.surface);
    if (stem.empty() || stopwords.contains(stem)) continue;
    out.push_back({std::move(stem), TokenKind::word});
  }
  return out;
}

Preprocessor::Preprocessor(StopWords stopwords, std::shared_ptr<const Stemmer> stemmer)
    : stopwords_(std::move(stopwords)), stemmer_(std::move(stemmer)) {
  if (!stemmer_) stemmer_ = std::make_shared<IdentityStemmer>();
}

Preprocessor Preprocessor::spanish() {
  return Preprocessor(StopWords::spanish_default(), std::make_shared<SpanishSnowballStemmer>());
}

Preprocessor Preprocessor::pretokenized() {
  Preprocessor p(StopWords{}, std::make_shared<IdentityStemmer>());
  p.split_only_ = true;
  return p;
}

std::vector<Token> Preprocessor::operator()(std::string_view text) const {
  if (split_only_) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\r') ++j;
      if (j > i) {
        std::string s(text.substr(i, j - i));
        TokenKind kind = classify(s);
        out.push_back({std::move(s), kind});
      }
      i = j;
    }
    return out;
  }
  const auto tokens = tokenize(text);
  return preprocess(tokens, stopwords_, *stemmer_);
}

std::vector<std::string> Preprocessor::surfaces(std::string_view text) const {
  std::vector<std::string> out;
  for (auto& t : (*this)(text)) out.push_back(std::move(t.surface));
  return out;
}

}  // namespace wecnn::corpus

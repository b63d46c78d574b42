#include "wecnn/app/synthetic.hpp"

#include <cstdio>
#include <fstream>

#include "wecnn/common.hpp"
#include "wecnn/random.hpp"

namespace wecnn::app {

namespace {

std::vector<std::string> pool(const char* prefix, std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  char buf[32];
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "%s%03zu", prefix, i);
    out.emplace_back(buf);
  }
  return out;
}

const std::string& pick(const std::vector<std::string>& words, Rng& rng) {
  return words[rng.below(words.size())];
}

}  // namespace

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
  if (spec.topic_size == 0 || spec.shared_size == 0) throw InvalidArgument("word pools must be non-empty");
  if (spec.min_length < 1 || spec.max_length < spec.min_length) {
    throw InvalidArgument("invalid document length range");
  }
  if (spec.labeled_own + spec.labeled_other > 1.0 || spec.background_own > 1.0) {
    throw InvalidArgument("topic shares exceed 1");
  }

  SyntheticData d;
  d.topic_a = pool("pa", spec.topic_size);
  d.topic_b = pool("pb", spec.topic_size);
  d.shared = pool("sh", spec.shared_size);
  Rng rng(mix_seed(spec.seed, 0x5A7));
  const std::size_t span = spec.max_length - spec.min_length + 1;

  auto document = [&](bool topic_a, double own, double other) {
    const auto& mine = topic_a ? d.topic_a : d.topic_b;
    const auto& theirs = topic_a ? d.topic_b : d.topic_a;
    std::vector<std::string> doc(spec.min_length + rng.below(span));
    for (auto& w : doc) {
      const double u = rng.uniform();
      w = u < own ? pick(mine, rng) : u < own + other ? pick(theirs, rng) : pick(d.shared, rng);
    }
    return doc;
  };

  d.background.reserve(spec.background_docs);
  for (std::size_t i = 0; i < spec.background_docs; ++i) {
    d.background.push_back(document(i % 2 == 0, spec.background_own, 0.0));
  }

  const auto positives = static_cast<std::size_t>(
      static_cast<double>(spec.labeled_docs) * spec.positive_share + 0.5);
  std::vector<char> is_pos(spec.labeled_docs, 0);
  for (std::size_t i = 0; i < positives && i < is_pos.size(); ++i) is_pos[i] = 1;
  rng.shuffle(is_pos);
  for (const bool pos : is_pos) {
    corpus::Instance inst;
    inst.tokens = document(pos, spec.labeled_own, spec.labeled_other);
    for (const auto& t : inst.tokens) {
      if (!inst.text.empty()) inst.text += ' ';
      inst.text += t;
    }
    inst.label = label_from_bool(pos);
    d.labeled.instances.push_back(std::move(inst));
  }
  return d;
}

void write_synthetic(const SyntheticData& data, const std::filesystem::path& corpus_path,
                     const std::filesystem::path& dataset_path) {
  std::ofstream corpus(corpus_path);
  if (!corpus) throw IoError("cannot open " + corpus_path.string() + " for writing");
  for (const auto& doc : data.background) {
    for (std::size_t i = 0; i < doc.size(); ++i) corpus << (i ? " " : "") << doc[i];
    corpus << '\n';
  }
  std::ofstream dataset(dataset_path);
  if (!dataset) throw IoError("cannot open " + dataset_path.string() + " for writing");
  for (const auto& inst : data.labeled.instances) {
    dataset << to_int(inst.label) << '\t' << inst.text << '\n';
  }
  if (!corpus || !dataset) throw IoError("failed to write synthetic data");
}

}  // namespace wecnn::app

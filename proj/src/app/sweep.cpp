#include "wecnn/app/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "wecnn/app/tables.hpp"
#include "wecnn/detail/parallel.hpp"
#include "wecnn/embeddings/embedding_io.hpp"
#include "wecnn/embeddings/skipgram.hpp"
#include "wecnn/eval/report_io.hpp"
#include "wecnn/numeric_io.hpp"

namespace wecnn::app {

namespace fs = std::filesystem;
using eval::ClassifierKind;

std::string CellKey::name() const {
  std::string n = eval::to_string(kind);
  if (uses_grid()) n += "_w" + std::to_string(window) + "_d" + std::to_string(dimension);
  return n;
}

std::size_t SweepSummary::failures() const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](const CellOutcome& c) { return !c.ok; }));
}

namespace {

class Log {
 public:
  explicit Log(std::ostream* out) : out_(out) {}
  void operator()(const std::string& line) {
    if (!out_) return;
    std::lock_guard lock(mutex_);
    *out_ << line << '\n' << std::flush;
  }

 private:
  std::ostream* out_;
  std::mutex mutex_;
};

using GridPoint = std::pair<std::size_t, std::size_t>;

/// Trains the listed grid points whose files are missing (or all of them when
/// `skip_existing` is false). Files appear atomically via rename.
std::size_t ensure_embeddings(const ExperimentConfig& config, const std::vector<GridPoint>& points,
                              bool skip_existing, Log& log) {
  const fs::path dir = config.embeddings_directory();
  fs::create_directories(dir);
  std::vector<GridPoint> todo;
  for (const auto& p : points) {
    if (!skip_existing || !fs::exists(dir / embedding_file_name(p.first, p.second))) todo.push_back(p);
  }
  if (todo.empty()) return 0;
  if (config.corpora.empty()) throw InvalidArgument("no background corpus given for embedding training");

  const embeddings::FileSentences source(config.corpora, config.preprocessor());
  detail::parallel_for(todo.size(), config.workers, [&](std::size_t i) {
    const auto [w, d] = todo[i];
    const fs::path target = dir / embedding_file_name(w, d);
    log("training embeddings W=" + std::to_string(w) + " D=" + std::to_string(d));
    const auto matrix = embeddings::train_embeddings(source, config.embedding_config(w, d));
    fs::path tmp = target;
    tmp += ".tmp";
    embeddings::save_embeddings(matrix, tmp);
    fs::rename(tmp, target);
    log("wrote " + target.string());
  });
  return todo.size();
}

std::vector<GridPoint> grid_points(const ExperimentConfig& config) {
  std::vector<GridPoint> out;
  for (auto w : config.windows) {
    for (auto d : config.dimensions) out.emplace_back(w, d);
  }
  return out;
}

std::vector<ClassifierKind> grid_kinds(const ExperimentConfig& config) {
  std::vector<ClassifierKind> out;
  for (auto k : config.classifier_kinds()) {
    if (eval::needs_embeddings(k) && std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  }
  return out;
}

fs::path cell_dir(const ExperimentConfig& config, const CellKey& key) {
  return config.output_dir / "cells" / key.name();
}

void fill_outcome(CellOutcome& out, const eval::EvalReport& report) {
  out.ok = true;
  out.mean = report.mean;
  out.macro_mean = report.macro_mean;
  out.accuracy = report.mean_accuracy;
  out.gold = report.gold;
  out.predictions = report.predictions;
}

bool load_finished(const fs::path& dir, CellOutcome& out) {
  if (!fs::exists(dir / "DONE")) return false;
  try {
    std::ifstream in(dir / "report.jsonl");
    std::string line, last;
    while (std::getline(in, line)) {
      if (!line.empty()) last = line;
    }
    const auto j = nlohmann::json::parse(last);
    if (j.at("type") != "summary") return false;
    auto preds = eval::load_predictions(dir / "predictions.tsv");
    out.ok = true;
    out.resumed = true;
    out.mean = eval::metrics_from_json(j.at("positive"));
    out.macro_mean = eval::metrics_from_json(j.at("macro"));
    out.accuracy = j.at("accuracy").get<double>();
    out.gold = std::move(preds.gold);
    out.predictions = std::move(preds.predicted);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

void store_finished(const fs::path& dir, const eval::EvalReport& report) {
  fs::create_directories(dir);
  fs::remove(dir / "DONE");
  fs::remove(dir / "ERROR");
  {
    std::ofstream out(dir / "report.jsonl");
    eval::write_report_jsonl(report, out);
  }
  eval::save_predictions(report, dir / "predictions.tsv");
  std::ofstream done(dir / "DONE");
  done << "ok\n";
  if (!done) throw IoError("cannot write " + (dir / "DONE").string());
}

void store_failure(const fs::path& dir, const std::string& error) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  fs::remove(dir / "DONE", ec);
  std::ofstream out(dir / "ERROR");
  out << error << '\n';
}

std::string display_name(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::random: return "Random";
    case ClassifierKind::svm_tfidf: return "SVM+TFIDF";
    case ClassifierKind::svm_we: return "SVM+WE";
    case ClassifierKind::cnn: return "CNN";
  }
  return "?";
}

std::string format_p(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", p);
  return buf;
}

nlohmann::json mcnemar_json(const eval::McNemarResult& r) {
  return {{"b", r.b}, {"c", r.c}, {"p_value", r.p_value}, {"statistic", r.statistic},
          {"method", eval::to_string(r.method)}};
}

constexpr double kSignificance = 0.05;

}  // namespace

std::vector<fs::path> train_embedding_grid(const ExperimentConfig& config, bool skip_existing,
                                           std::ostream* log, std::size_t* trained) {
  config.validate(false);
  Log logger(log);
  const auto points = grid_points(config);
  const std::size_t n = ensure_embeddings(config, points, skip_existing, logger);
  if (trained) *trained = n;
  std::vector<fs::path> out;
  for (const auto& [w, d] : points) out.push_back(config.embeddings_directory() / embedding_file_name(w, d));
  return out;
}

SweepSummary run_sweep(const ExperimentConfig& config, bool resume, std::ostream* log) {
  config.validate(true);
  Log logger(log);
  fs::create_directories(config.output_dir / "cells");
  save_config(config, config.output_dir / "config.json");

  const auto dataset = corpus::load_dataset(config.dataset, config.preprocessor());
  const auto plan = eval::make_folds(dataset.labels(), config.seed);

  SweepSummary summary;
  summary.windows = config.windows;
  summary.dimensions = config.dimensions;
  auto add_cell = [&](ClassifierKind k, std::size_t w, std::size_t d) {
    CellOutcome cell;
    cell.key = CellKey{k, w, d};
    summary.cells.push_back(std::move(cell));
  };
  for (auto k : {ClassifierKind::random, ClassifierKind::svm_tfidf}) add_cell(k, 0, 0);
  const auto kinds = grid_kinds(config);
  for (const auto& [w, d] : grid_points(config)) {
    for (auto k : kinds) add_cell(k, w, d);
  }

  // Cells grouped by grid point so only one embedding matrix is held at a time.
  std::map<GridPoint, std::vector<std::size_t>> pending;
  for (std::size_t i = 0; i < summary.cells.size(); ++i) {
    auto& cell = summary.cells[i];
    if (resume && load_finished(cell_dir(config, cell.key), cell)) {
      logger("[" + cell.key.name() + "] already done");
      continue;
    }
    pending[{cell.key.window, cell.key.dimension}].push_back(i);
  }

  auto run_group = [&](const std::vector<std::size_t>& cells, const embeddings::EmbeddingLookup* lookup) {
    const std::size_t threads = std::min(config.workers, cells.size());
    const std::size_t fold_workers = std::max<std::size_t>(1, config.workers / std::max<std::size_t>(threads, 1));
    detail::parallel_for(cells.size(), threads, [&](std::size_t j) {
      auto& cell = summary.cells[cells[j]];
      const auto dir = cell_dir(config, cell.key);
      try {
        logger("[" + cell.key.name() + "] running");
        const auto report = eval::run_experiment(dataset, config.classifier_spec(cell.key.kind), lookup,
                                                 plan, fold_workers);
        store_finished(dir, report);
        fill_outcome(cell, report);
        logger("[" + cell.key.name() + "] F1 " + format_percent(cell.mean.f1));
      } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
        store_failure(dir, cell.error);
        logger("[" + cell.key.name() + "] failed: " + cell.error);
      }
    });
  };

  for (const auto& [point, cells] : pending) {
    summary.trained_cells += cells.size();
    if (point.first == 0) {
      run_group(cells, nullptr);
      continue;
    }
    std::unique_ptr<embeddings::EmbeddingMatrix> matrix;
    try {
      summary.trained_embeddings += ensure_embeddings(config, {point}, true, logger);
      matrix = std::make_unique<embeddings::EmbeddingMatrix>(embeddings::load_embeddings(
          config.embeddings_directory() / embedding_file_name(point.first, point.second)));
    } catch (const std::exception& e) {
      for (auto i : cells) {
        auto& cell = summary.cells[i];
        cell.ok = false;
        cell.error = std::string("embeddings unavailable: ") + e.what();
        store_failure(cell_dir(config, cell.key), cell.error);
        logger("[" + cell.key.name() + "] failed: " + cell.error);
      }
      continue;
    }
    const embeddings::EmbeddingLookup lookup(*matrix, config.seed);
    run_group(cells, &lookup);
  }

  const auto tfidf = std::find_if(summary.cells.begin(), summary.cells.end(), [](const CellOutcome& c) {
    return c.key.kind == ClassifierKind::svm_tfidf;
  });
  for (std::size_t i = 0; i < summary.cells.size(); ++i) {
    auto& cell = summary.cells[i];
    if (!cell.ok || &cell == &*tfidf || !tfidf->ok) continue;
    cell.versus_tfidf = eval::mcnemar(cell.predictions, tfidf->predictions, cell.gold);
    if (cell.key.kind == ClassifierKind::cnn &&
        (!summary.best_cnn || cell.mean.f1 > summary.cells[*summary.best_cnn].mean.f1)) {
      summary.best_cnn = i;
    }
  }
  if (summary.best_cnn) summary.best_cnn_vs_tfidf = summary.cells[*summary.best_cnn].versus_tfidf;

  summary.table = render_results_table(summary);
  {
    std::ofstream out(config.output_dir / "results.txt");
    out << summary.table;
    if (!out) throw IoError("cannot write results table");
  }
  std::ofstream jl(config.output_dir / "results.jsonl");
  for (const auto& cell : summary.cells) {
    nlohmann::json j{{"type", "cell"},
                     {"cell", cell.key.name()},
                     {"classifier", eval::to_string(cell.key.kind)},
                     {"window", cell.key.window},
                     {"dimension", cell.key.dimension},
                     {"status", cell.ok ? "ok" : "failed"}};
    if (cell.ok) {
      j["positive"] = eval::to_json(cell.mean);
      j["macro"] = eval::to_json(cell.macro_mean);
      j["accuracy"] = cell.accuracy;
      j["predictions"] = (cell_dir(config, cell.key) / "predictions.tsv").string();
      if (cell.versus_tfidf) j["mcnemar_vs_svm_tfidf"] = mcnemar_json(*cell.versus_tfidf);
    } else {
      j["error"] = cell.error;
    }
    jl << j.dump() << '\n';
  }
  if (summary.best_cnn_vs_tfidf) {
    nlohmann::json j{{"type", "comparison"},
                     {"a", summary.cells[*summary.best_cnn].key.name()},
                     {"b", "svm_tfidf"},
                     {"mcnemar", mcnemar_json(*summary.best_cnn_vs_tfidf)}};
    jl << j.dump() << '\n';
  }
  if (!jl) throw IoError("cannot write results.jsonl");
  return summary;
}

std::string render_results_table(const SweepSummary& summary) {
  const auto& cells = summary.cells;
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].ok && (!best || cells[i].mean.f1 > cells[*best].mean.f1)) best = i;
  }
  auto values = [&](std::size_t i) -> std::array<std::string, 3> {
    const auto& c = cells[i];
    if (!c.ok) return {"fail  ", "fail  ", "fail  "};
    // Every value carries a two-character marker slot so numbers line up.
    std::string marks;
    if (best && *best == i) marks += '*';
    if (c.versus_tfidf && c.versus_tfidf->p_value < kSignificance) marks += '+';
    marks.resize(2, ' ');
    return {format_percent(c.mean.precision) + "  ", format_percent(c.mean.recall) + "  ",
            format_percent(c.mean.f1) + marks};
  };
  auto find = [&](ClassifierKind k, std::size_t w, std::size_t d) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].key.kind == k && cells[i].key.window == w && cells[i].key.dimension == d) return i;
    }
    return std::nullopt;
  };

  std::ostringstream out;
  out << "(a) Baselines\n";
  std::vector<std::vector<std::string>> rows{{"Classifier", "P  ", "R  ", "F1  "}};
  std::optional<std::size_t> best_we;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].key.kind == ClassifierKind::svm_we && cells[i].ok &&
        (!best_we || cells[i].mean.f1 > cells[*best_we].mean.f1)) {
      best_we = i;
    }
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].key.uses_grid()) continue;
    const auto v = values(i);
    rows.push_back({display_name(cells[i].key.kind), v[0], v[1], v[2]});
  }
  if (best_we) {
    const auto& k = cells[*best_we].key;
    const auto v = values(*best_we);
    rows.push_back({"SVM+WE (W" + std::to_string(k.window) + " D" + std::to_string(k.dimension) + ")",
                    v[0], v[1], v[2]});
  }
  out << render_grid(rows);

  std::vector<ClassifierKind> kinds;
  for (const auto& c : cells) {
    if (c.key.uses_grid() && std::find(kinds.begin(), kinds.end(), c.key.kind) == kinds.end()) {
      kinds.push_back(c.key.kind);
    }
  }
  if (!kinds.empty()) {
    constexpr std::size_t kValue = 9;
    const std::size_t group = kinds.size() * 3 * kValue;
    auto centered = [](const std::string& s, std::size_t width) {
      if (s.size() >= width) return s;
      const std::size_t left = (width - s.size()) / 2;
      return std::string(left, ' ') + s + std::string(width - s.size() - left, ' ');
    };
    auto right = [](const std::string& s, std::size_t width) {
      return s.size() >= width ? " " + s : std::string(width - s.size(), ' ') + s;
    };
    auto trim = [](std::string s) {
      while (!s.empty() && s.back() == ' ') s.pop_back();
      return s;
    };

    out << "\n(b) Word-embedding classifiers\n";
    std::string l1 = "    ", l2 = "    ", l3 = "    ";
    for (auto d : summary.dimensions) {
      l1 += " |" + centered("D" + std::to_string(d), group);
      l2 += " |";
      l3 += " |";
      for (auto k : kinds) {
        l2 += centered(display_name(k), 3 * kValue);
        l3 += right("P  ", kValue) + right("R  ", kValue) + right("F1  ", kValue);
      }
    }
    out << trim(l1) << '\n' << trim(l2) << '\n' << trim(l3) << '\n';
    for (auto w : summary.windows) {
      std::string line = "W" + std::to_string(w);
      line.resize(4, ' ');
      for (auto d : summary.dimensions) {
        line += " |";
        for (auto k : kinds) {
          const auto i = find(k, w, d);
          const auto v = i ? values(*i) : std::array<std::string, 3>{"-  ", "-  ", "-  "};
          for (const auto& s : v) line += right(s, kValue);
        }
      }
      out << trim(line) << '\n';
    }
  }

  out << "\n* best F1 score; + significantly different from SVM+TFIDF (McNemar, p < 0.05)\n";
  if (summary.best_cnn && summary.best_cnn_vs_tfidf) {
    const auto& k = cells[*summary.best_cnn].key;
    const auto& m = *summary.best_cnn_vs_tfidf;
    out << "McNemar best CNN (W" << k.window << " D" << k.dimension << ") vs SVM+TFIDF: b=" << m.b
        << " c=" << m.c << " p=" << format_p(m.p_value) << " (" << eval::to_string(m.method) << ")\n";
  }
  return out.str();
}

}  // namespace wecnn::app

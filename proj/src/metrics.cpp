#include "lexishot/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <unordered_map>

#include "lexishot/error.hpp"
#include "lexishot/io.hpp"
#include "lexishot/unicode.hpp"

namespace lexishot {
namespace {

double ratio(std::size_t num, std::size_t den) { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }

double harmonic(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

// Two-pass mean/std with a correction pass on the mean, so identical inputs
// give their exact value and zero spread.
std::pair<double, double> mean_std(const std::vector<double>& xs, StdKind kind) {
  const double n = static_cast<double>(xs.size());
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= n;
  double residual = 0;
  for (double x : xs) residual += x - mean;
  mean += residual / n;
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double denom = kind == StdKind::Sample ? n - 1 : n;
  return {mean, std::sqrt(ss / denom)};
}

}  // namespace

std::vector<std::string> MetricSummary::labels() const {
  std::vector<std::string> out;
  for (const auto& c : per_class) out.push_back(c.label);
  return out;
}

MetricSummary macro_scores(std::span<const PredictionRecord> records, std::span<const std::string> labels) {
  if (records.empty()) throw DataError("no prediction records");
  if (labels.empty()) throw DataError("empty label set");
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!index.emplace(labels[i], i).second) throw DataError("duplicate label '" + labels[i] + "'");
  }

  const std::size_t k = labels.size();
  std::vector<std::size_t> tp(k), fp(k), fn(k), support(k);
  for (const PredictionRecord& r : records) {
    auto g = index.find(r.gold);
    auto p = index.find(r.pred);
    if (g == index.end()) throw DataError("undeclared gold label '" + r.gold + "' for id '" + r.id + "'", r.line);
    if (p == index.end()) throw DataError("undeclared predicted label '" + r.pred + "' for id '" + r.id + "'", r.line);
    ++support[g->second];
    if (g->second == p->second) {
      ++tp[g->second];
    } else {
      ++fn[g->second];
      ++fp[p->second];
    }
  }

  MetricSummary s;
  for (std::size_t c = 0; c < k; ++c) {
    ClassScores cs;
    cs.label = labels[c];
    cs.scores.precision = ratio(tp[c], tp[c] + fp[c]);
    cs.scores.recall = ratio(tp[c], tp[c] + fn[c]);
    cs.scores.f1 = harmonic(cs.scores.precision, cs.scores.recall);
    cs.support = support[c];
    s.macro.precision += cs.scores.precision;
    s.macro.recall += cs.scores.recall;
    s.macro.f1 += cs.scores.f1;
    s.per_class.push_back(std::move(cs));
  }
  s.macro.precision /= static_cast<double>(k);
  s.macro.recall /= static_cast<double>(k);
  s.macro.f1 /= static_cast<double>(k);
  return s;
}

MetricSummary aggregate_seeds(std::span<const MetricSummary> summaries, StdKind kind) {
  if (summaries.empty()) throw DataError("no summaries to aggregate");
  const auto labels = summaries.front().labels();
  for (const auto& s : summaries) {
    if (s.labels() != labels) throw DataError("cannot aggregate summaries with different label sets");
  }

  auto reduce = [&](auto getter) {
    std::vector<double> xs;
    for (const auto& s : summaries) xs.push_back(getter(s));
    return mean_std(xs, kind);
  };
  auto reduce_scores = [&](auto pick, Scores& mean, Scores& sd) {
    std::tie(mean.precision, sd.precision) = reduce([&](const MetricSummary& s) { return pick(s).precision; });
    std::tie(mean.recall, sd.recall) = reduce([&](const MetricSummary& s) { return pick(s).recall; });
    std::tie(mean.f1, sd.f1) = reduce([&](const MetricSummary& s) { return pick(s).f1; });
  };

  MetricSummary out;
  out.runs = summaries.size();
  Spread spread;
  spread.kind = kind;
  reduce_scores([](const MetricSummary& s) -> const Scores& { return s.macro; }, out.macro, spread.macro);
  for (std::size_t c = 0; c < labels.size(); ++c) {
    ClassScores cs;
    cs.label = labels[c];
    for (const auto& s : summaries) cs.support += s.per_class[c].support;
    Scores sd;
    reduce_scores([c](const MetricSummary& s) -> const Scores& { return s.per_class[c].scores; }, cs.scores, sd);
    out.per_class.push_back(std::move(cs));
    spread.per_class.push_back(sd);
  }
  out.spread = std::move(spread);
  return out;
}

MetricSummary score_shot_set(const ShotSet& shots, std::span<const PredictionRecord> predictions,
                             std::span<const std::string> labels) {
  std::unordered_map<std::string, const PredictionRecord*> by_id;
  for (const PredictionRecord& r : predictions) {
    if (!by_id.emplace(r.id, &r).second) throw DataError("duplicate prediction for id '" + r.id + "'", r.line);
  }
  std::vector<PredictionRecord> selected;
  std::string missing;
  for (const Shot& s : shots.shots) {
    auto it = by_id.find(s.example.id);
    if (it == by_id.end()) {
      missing += (missing.empty() ? "" : ", ") + s.example.id;
      continue;
    }
    selected.push_back(*it->second);
  }
  if (!missing.empty()) throw DataError("no prediction for shot id(s): " + missing);
  return macro_scores(selected, labels);
}

std::vector<PredictionRecord> load_predictions(std::string_view content, const std::string& source) {
  std::vector<PredictionRecord> out;
  std::size_t line_no = 0;
  for (std::string_view raw : io::split_lines(content)) {
    ++line_no;
    if (raw.empty()) continue;
    if (line_no == 1 && raw == "id\tgold\tpred") continue;
    if (!unicode::is_valid_utf8(raw)) throw DataError("invalid UTF-8", line_no, source);
    const auto cols = io::split(raw, '\t');
    if (cols.size() != 3) throw DataError("expected id<TAB>gold<TAB>pred", line_no, source);
    PredictionRecord r{unicode::trim(cols[0]), unicode::trim(cols[1]), unicode::trim(cols[2]), line_no};
    if (r.id.empty()) throw DataError("empty id", line_no, source);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<PredictionRecord> load_predictions_file(const std::filesystem::path& path) {
  return load_predictions(io::read_file(path), path.string());
}

}  // namespace lexishot

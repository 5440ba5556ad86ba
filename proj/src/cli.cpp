#include "lexishot/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "lexishot/annotate.hpp"
#include "lexishot/corpus.hpp"
#include "lexishot/embedding.hpp"
#include "lexishot/error.hpp"
#include "lexishot/io.hpp"
#include "lexishot/lexicon.hpp"
#include "lexishot/metrics.hpp"
#include "lexishot/sampler.hpp"
#include "lexishot/shift.hpp"
#include "lexishot/shotset_io.hpp"
#include "lexishot/text_match.hpp"
#include "lexishot/text_table.hpp"
#include "lexishot/unicode.hpp"

namespace lexishot::cli {
namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Shared helpers

fs::path resolve_input(const std::string& path) {
  if (path.empty()) throw UsageError("empty input path");
  fs::path p(path);
  std::error_code ec;
  if (fs::is_regular_file(p, ec)) return p;
  if (p.is_relative()) {
    if (const char* data = std::getenv("LEXISHOT_DATA"); data && *data) {
      fs::path alt = fs::path(data) / p;
      if (fs::is_regular_file(alt, ec)) return alt;
    }
  }
  throw UsageError("cannot read input file '" + path + "'");
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError("cannot open output file", 0, path);
  f << content;
  if (!f) throw DataError("write failed", 0, path);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  for (std::string_view part : io::split(text, ',')) {
    std::string s = unicode::trim(part);
    if (!s.empty()) out.push_back(std::move(s));
  }
  return out;
}

std::uint64_t parse_seed(std::string_view text) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || p != text.data() + text.size()) {
    throw UsageError("--seeds: '" + std::string(text) + "' is not a 64-bit unsigned integer");
  }
  return v;
}

// "[NAME[@LANG]=]path"
struct Labeled {
  std::string name;
  std::string lang;
  std::string path;
};

Labeled parse_labeled(const std::string& spec) {
  Labeled l;
  const auto eq = spec.find('=');
  if (eq == std::string::npos) {
    l.path = spec;
    return l;
  }
  std::string head = spec.substr(0, eq);
  l.path = spec.substr(eq + 1);
  const auto at = head.find('@');
  l.name = head.substr(0, at);
  if (at != std::string::npos) l.lang = head.substr(at + 1);
  return l;
}

std::string timestamp_value(const std::string& flag) {
  if (flag == "now") {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
  }
  return flag;
}

void add_meta(ojson& doc, const std::string& timestamp) {
  if (timestamp != "none") doc["generated_at"] = timestamp_value(timestamp);
}

std::string dump(const ojson& doc) { return doc.dump(2) + "\n"; }

struct ScopeOptions {
  std::string languages;
  std::string countries;

  void add_to(CLI::App* sub) {
    sub->add_option("--languages", languages,
                    "Comma-separated lexicon languages to match (default: the corpus languages)");
    sub->add_option("--countries", countries, "Comma-separated lexicon countries to match");
  }

  // With neither filter given, defaults to the languages present in `examples`.
  MatchScope scope(std::span<const Example> examples) const {
    MatchScope s;
    for (auto& l : split_list(languages)) s.languages.insert(l);
    for (auto& c : split_list(countries)) s.countries.insert(c);
    if (s.languages.empty() && s.countries.empty()) {
      for (const Example& ex : examples) {
        if (!ex.language.empty()) s.languages.insert(ex.language);
      }
    }
    return s;
  }
};

std::string lines_summary(const ShotSet& set, const SetDistribution& d) {
  std::string s = set.name() + " seed " + std::to_string(set.config.seed) + ": " + std::to_string(set.shots.size()) +
                  " examples";
  for (Origin o : {Origin::LexiconSelected, Origin::RandomFill, Origin::ComplementTarget, Origin::ComplementSlur,
                   Origin::ComplementRandom}) {
    if (const std::size_t n = set.count(o)) s += ", " + std::to_string(n) + " " + std::string(to_string(o));
  }
  s += ", S=" + std::to_string(d.slurs()) + " T=" + std::to_string(d.targets());
  if (set.shortfall) s += ", shortfall " + std::to_string(set.shortfall);
  return s;
}

std::vector<Example> examples_of(const ShotSet& set) {
  std::vector<Example> out;
  for (const Shot& s : set.shots) out.push_back(s.example);
  return out;
}

// ---------------------------------------------------------------------------
// Subcommands

struct Common {
  std::string output = "-";
  std::string format = "text";
  std::string timestamp = "none";
};

void add_output(CLI::App* sub, Common& c, bool with_format) {
  sub->add_option("-o,--output", c.output, "Output file ('-' for stdout)");
  if (with_format) sub->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
}

struct LexiconStatsCmd {
  std::string lexicon;

  int run(const Common& c, std::ostream& out) const {
    const Lexicon lex = load_lexicon_file(resolve_input(lexicon));
    const LexiconStats stats = compute_stats(lex);
    if (c.format == "json") {
      ojson doc;
      add_meta(doc, c.timestamp);
      ojson countries = ojson::object();
      for (const auto& [country, s] : stats.by_country) {
        ojson row;
        for (std::size_t i = 0; i < kCombinationCount; ++i) {
          row[std::string(to_string(static_cast<TypeCombination>(i)))] = s.counts[i];
        }
        row["Total"] = s.total();
        countries[country] = std::move(row);
      }
      doc["countries"] = std::move(countries);
      doc["total"] = stats.total();
      emit(c.output, dump(doc), out);
      return kOk;
    }
    std::vector<std::string> header{"Type"};
    for (const auto& [country, _] : stats.by_country) header.push_back(country);
    TextTable table(header);
    for (std::size_t i = 0; i < kCombinationCount; ++i) {
      std::vector<std::string> row{std::string(to_string(static_cast<TypeCombination>(i)))};
      for (const auto& [_, s] : stats.by_country) row.push_back(std::to_string(s.counts[i]));
      table.add_row(std::move(row));
    }
    std::vector<std::string> total{"Total"};
    for (const auto& [_, s] : stats.by_country) total.push_back(std::to_string(s.total()));
    table.add_row(std::move(total));
    emit(c.output, table.render(), out);
    return kOk;
  }
};

struct LexiconValidateCmd {
  std::string lexicon;
  std::string declared;

  int run(const Common& c, std::ostream& out) const {
    const Lexicon lex = load_lexicon_file(resolve_input(lexicon));
    const LexiconStats stats = compute_stats(lex);
    std::vector<Discrepancy> found;
    if (!declared.empty()) {
      const fs::path p = resolve_input(declared);
      found = validate_against_declared(stats, load_declared_totals(io::read_file(p), p.string()));
    }
    if (c.format == "json") {
      ojson doc;
      add_meta(doc, c.timestamp);
      doc["terms"] = lex.size();
      doc["countries"] = lex.countries();
      ojson list = ojson::array();
      for (const auto& d : found) list.push_back({{"country", d.country}, {"computed", d.computed}, {"declared", d.declared}});
      doc["discrepancies"] = std::move(list);
      emit(c.output, dump(doc), out);
    } else {
      std::string text = "lexicon OK: " + std::to_string(lex.size()) + " terms, " +
                         std::to_string(lex.countries().size()) + " countries\n";
      for (const auto& d : found) {
        text += d.country + ": computed " + std::to_string(d.computed) + ", declared " + std::to_string(d.declared) +
                "\n";
      }
      emit(c.output, text, out);
    }
    return found.empty() ? kOk : kDataError;
  }
};

struct MatchCmd {
  std::string lexicon;
  std::string corpus;
  ScopeOptions scope;
  unsigned jobs = 1;

  int run(const Common& c, std::ostream& out) const {
    const Lexicon lex = load_lexicon_file(resolve_input(lexicon));
    const auto examples = load_corpus_file(resolve_input(corpus));
    const TermMatcher matcher(lex, scope.scope(examples));

    std::vector<std::string> lines(examples.size());
    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) lines[i] = to_json_line(classify_example(examples[i], matcher));
    };
    const std::size_t threads = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(examples.size(), 1));
    if (threads == 1) {
      work(0, examples.size());
    } else {
      std::vector<std::jthread> pool;
      const std::size_t chunk = (examples.size() + threads - 1) / threads;
      for (std::size_t b = 0; b < examples.size(); b += chunk) {
        pool.emplace_back(work, b, std::min(b + chunk, examples.size()));
      }
    }
    std::string text;
    for (const auto& l : lines) text += l + '\n';
    emit(c.output, text, out);
    return kOk;
  }
};

std::string seeded_path(const std::string& path, std::uint64_t seed, bool many) {
  const std::string s = std::to_string(seed);
  if (auto pos = path.find("{seed}"); pos != std::string::npos) {
    return path.substr(0, pos) + s + path.substr(pos + 6);
  }
  if (!many) return path;
  fs::path p(path);
  return (p.parent_path() / (p.stem().string() + ".seed" + s + p.extension().string())).string();
}

struct SampleCmd {
  std::string method;
  std::size_t size = 0;
  std::uint64_t seed = 0;
  std::string seeds;
  std::string lexicon;
  std::string corpus;
  ScopeOptions scope;
  CLI::Option* seed_opt = nullptr;

  int run(const Common& c, std::ostream& out, std::ostream& err) const {
    auto m = parse_sampling_method(method);
    if (!m) throw UsageError("--method must be 'random' or 'lexicon'");
    std::vector<std::uint64_t> seed_list;
    for (const auto& s : split_list(seeds)) seed_list.push_back(parse_seed(s));
    if (seed_opt->count() > 0) seed_list.insert(seed_list.begin(), seed);
    if (seed_list.empty()) seed_list.push_back(seed);
    const bool many = seed_list.size() > 1;
    if (many && (c.output == "-" || c.output.empty())) throw UsageError("--seeds with several seeds requires --output");
    if (*m == SamplingMethod::Lexicon && lexicon.empty()) throw UsageError("--method lexicon requires --lexicon");

    const auto pool = load_corpus_file(resolve_input(corpus));
    const Lexicon lex = lexicon.empty() ? Lexicon{} : load_lexicon_file(resolve_input(lexicon));
    const TermMatcher matcher(lex, scope.scope(pool));

    std::vector<double> s_counts;
    std::vector<double> t_counts;
    std::string summary;
    for (std::uint64_t sd : seed_list) {
      SamplingConfig cfg{*m, size, sd, std::nullopt, 32};
      ShotSet set = *m == SamplingMethod::Random ? sample_random(pool, cfg) : sample_lexicon_first(pool, matcher, cfg);
      if (*m == SamplingMethod::Random) annotate(set, matcher);
      const std::string path = seeded_path(c.output, sd, many);
      emit(path, to_jsonl(set), out);
      const SetDistribution d = distribution_of(set.name(), examples_of(set), matcher);
      s_counts.push_back(static_cast<double>(d.slurs()));
      t_counts.push_back(static_cast<double>(d.targets()));
      if (path != "-") summary += "wrote " + path + ": " + lines_summary(set, d) + "\n";
    }
    if (many) {
      auto stat = [](const std::vector<double>& xs) {
        double mean = 0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(xs.size());
        double ss = 0;
        for (double x : xs) ss += (x - mean) * (x - mean);
        return fixed(mean, 2) + " (std " + fixed(std::sqrt(ss / static_cast<double>(xs.size() - 1)), 2) + ")";
      };
      summary += "mean over " + std::to_string(seed_list.size()) + " seeds: S=" + stat(s_counts) +
                 " T=" + stat(t_counts) + "\n";
    }
    if (c.output != "-") out << summary;
    (void)err;
    return kOk;
  }
};

struct ComplementCmd {
  std::string base;
  std::string corpus;
  std::string lexicon;
  std::string mode;
  std::size_t complement_size = 32;
  std::uint64_t seed = 0;
  ScopeOptions scope;
  CLI::Option* seed_opt = nullptr;

  int run(const Common& c, std::ostream& out, std::ostream& err) const {
    auto m = parse_complement_mode(mode);
    if (!m) throw UsageError("--mode must be 'l' (lexicon) or 'r' (random)");
    const ShotSet base_set = load_shot_set_file(resolve_input(base));
    const auto pool = load_corpus_file(resolve_input(corpus));
    const Lexicon lex = load_lexicon_file(resolve_input(lexicon));
    const TermMatcher matcher(lex, scope.scope(pool));

    SamplingConfig cfg = base_set.config;
    cfg.complement = m;
    cfg.complement_size = complement_size;
    cfg.seed = seed_opt->count() > 0 ? seed : base_set.config.seed;
    const ShotSet set = complement(base_set, pool, matcher, cfg);
    emit(c.output, to_jsonl(set), out);
    if (set.shortfall) {
      err << "warning: only " << (complement_size - set.shortfall) << " of " << complement_size
          << " complement examples available (shortfall " << set.shortfall << ")\n";
    }
    if (c.output != "-") {
      out << "wrote " << c.output << ": "
          << lines_summary(set, distribution_of(set.name(), examples_of(set), matcher)) << "\n";
    }
    return kOk;
  }
};

struct DistributionCmd {
  std::string lexicon;
  std::vector<std::string> sets;
  std::vector<std::string> corpora;
  ScopeOptions scope;

  int run(const Common& c, std::ostream& out) const {
    if (sets.empty() && corpora.empty()) throw UsageError("give at least one --set or --corpus");
    const Lexicon lex = load_lexicon_file(resolve_input(lexicon));

    std::vector<std::pair<std::string, std::vector<Example>>> named;
    for (const auto& spec : corpora) {
      Labeled l = parse_labeled(spec);
      auto examples = load_corpus_file(resolve_input(l.path));
      named.emplace_back(l.name.empty() ? "All" + std::to_string(examples.size()) : l.name, std::move(examples));
    }
    for (const auto& spec : sets) {
      Labeled l = parse_labeled(spec);
      ShotSet set = load_shot_set_file(resolve_input(l.path));
      named.emplace_back(l.name.empty() ? set.name() : l.name, examples_of(set));
    }
    std::vector<Example> everything;
    for (const auto& [_, ex] : named) everything.insert(everything.end(), ex.begin(), ex.end());
    const TermMatcher matcher(lex, scope.scope(everything));

    DistributionReport report;
    for (const auto& [name, ex] : named) report.push_back(distribution_of(name, ex, matcher));

    if (c.format == "json") {
      ojson doc;
      add_meta(doc, c.timestamp);
      ojson list = ojson::array();
      for (const auto& d : report) {
        list.push_back({{"set", d.name},
                        {"size", d.size},
                        {"S", d.slurs()},
                        {"T", d.targets()},
                        {"slurs", d.slur_terms},
                        {"targets", d.target_terms}});
      }
      doc["sets"] = std::move(list);
      emit(c.output, dump(doc), out);
      return kOk;
    }
    TextTable table({"Set", "Size", "S", "T"});
    for (const auto& d : report) {
      table.add_row({d.name, std::to_string(d.size), std::to_string(d.slurs()), std::to_string(d.targets())});
    }
    emit(c.output, table.render(), out);
    return kOk;
  }
};

struct AnnotateWordsCmd {
  std::string lexicon;
  std::string country;
  std::string words;

  int run(const Common& c, std::ostream& out) const {
    const Lexicon lex = load_lexicon_file(resolve_input(lexicon));
    const fs::path wp = resolve_input(words);
    std::vector<std::string> list;
    try {
      list = io::read_word_list(io::read_file(wp));
    } catch (const DataError& e) {
      throw e.in(wp.string());
    }
    const AnnotatedWordList annotated = annotate_words(list, lex, country);
    const AnnotationSummary& s = annotated.summary;
    if (c.format == "json") {
      ojson doc;
      add_meta(doc, c.timestamp);
      doc["country"] = annotated.country;
      ojson entries = ojson::array();
      for (const auto& e : annotated.entries) {
        ojson types = nullptr;
        if (e.types) {
          types = ojson::array();
          for (TermType t : e.types->members()) types.push_back(to_string(t));
        }
        entries.push_back({{"word", e.word}, {"types", types}});
      }
      doc["entries"] = std::move(entries);
      doc["summary"] = {{"slurs", s.slurs},
                        {"targets", s.targets},
                        {"both", s.both},
                        {"neutral", s.neutral},
                        {"unmatched", s.unmatched}};
      emit(c.output, dump(doc), out);
      return kOk;
    }
    std::string text = annotated.country + ": " + describe(s) + " (" + std::to_string(s.both) + " both, " +
                       std::to_string(s.unmatched) + " unmatched)\n\n";
    TextTable table({"Word", "Types"});
    for (const auto& e : annotated.entries) table.add_row({e.word, e.types ? e.types->to_string() : "-"});
    text += table.render();
    emit(c.output, text, out);
    return kOk;
  }
};

struct RepShiftCmd {
  std::string before;
  std::string after;
  std::vector<std::string> groups;
  std::string random_vocab;
  std::size_t random_count = 0;
  std::string random_name = "Random";
  std::uint64_t seed = 0;
  std::string metric = "cosine";
  unsigned jobs = 1;

  int run(const Common& c, std::ostream& out) const {
    auto m = parse_shift_metric(metric);
    if (!m) throw UsageError("--metric must be 'cosine' or 'distance'");
    if (groups.empty() && random_vocab.empty()) throw UsageError("give at least one --group or --random-vocab");
    const EmbeddingTable before_table = load_embedding_file(resolve_input(before));
    const EmbeddingTable after_table = load_embedding_file(resolve_input(after));

    std::map<std::string, std::vector<std::string>> members;
    for (const auto& spec : groups) {
      Labeled l = parse_labeled(spec);
      if (l.name.empty()) throw UsageError("--group expects NAME=path, got '" + spec + "'");
      const fs::path p = resolve_input(l.path);
      try {
        members[l.name] = io::read_word_list(io::read_file(p));
      } catch (const DataError& e) {
        throw e.in(p.string());
      }
    }
    if (!random_vocab.empty()) {
      if (members.contains(random_name)) throw UsageError("group '" + random_name + "' given twice");
      std::set<std::string> used;
      std::size_t others = 0;
      for (const auto& [_, ws] : members) {
        used.insert(ws.begin(), ws.end());
        others += std::set<std::string>(ws.begin(), ws.end()).size();
      }
      const fs::path p = resolve_input(random_vocab);
      std::vector<std::string> candidates;
      for (auto& w : io::read_word_list(io::read_file(p))) {
        if (!used.contains(w) && before_table.find(w) && after_table.find(w)) candidates.push_back(std::move(w));
      }
      const std::size_t k = random_count > 0 ? random_count : others;
      if (k == 0) throw UsageError("--random-count is required when no other groups are given");
      members[random_name] = sample_words(std::move(candidates), k, seed);
    }

    const ShiftReport report = shift_report(before_table, after_table, members, *m, jobs);
    if (c.format == "json") {
      ojson doc;
      add_meta(doc, c.timestamp);
      doc["metric"] = to_string(report.metric);
      ojson meta = ojson::object();
      for (const auto& [k, v] : before_table.meta()) meta["before"][k] = v;
      for (const auto& [k, v] : after_table.meta()) meta["after"][k] = v;
      doc["meta"] = std::move(meta);
      ojson gs = ojson::array();
      for (const auto& g : report.groups) {
        ojson terms = ojson::array();
        for (const auto& t : g.terms) terms.push_back({{"term", t.term}, {"value", t.value}});
        gs.push_back({{"group", g.name}, {"mean", g.mean}, {"terms", std::move(terms)}});
      }
      doc["groups"] = std::move(gs);
      emit(c.output, dump(doc), out);
      return kOk;
    }
    const std::string col = "Mean " + std::string(to_string(report.metric));
    TextTable summary({"Group", "Terms", col});
    for (const auto& g : report.groups) summary.add_row({g.name, std::to_string(g.terms.size()), fixed(g.mean, 4)});
    TextTable detail({"Group", "Term", std::string(to_string(report.metric))});
    for (const auto& g : report.groups) {
      for (const auto& t : g.terms) detail.add_row({g.name, t.term, fixed(t.value, 6)});
    }
    emit(c.output, summary.render() + "\n" + detail.render(), out);
    return kOk;
  }
};

ojson scores_json(const Scores& s) { return {{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}}; }

ojson summary_json(const MetricSummary& s) {
  ojson doc;
  doc["runs"] = s.runs;
  doc["macro"] = scores_json(s.macro);
  ojson classes = ojson::array();
  for (std::size_t i = 0; i < s.per_class.size(); ++i) {
    ojson cj = scores_json(s.per_class[i].scores);
    cj["label"] = s.per_class[i].label;
    cj["support"] = s.per_class[i].support;
    if (s.spread) cj["std"] = scores_json(s.spread->per_class[i]);
    classes.push_back(std::move(cj));
  }
  doc["per_class"] = std::move(classes);
  if (s.spread) {
    doc["std"] = scores_json(s.spread->macro);
    doc["std_kind"] = s.spread->kind == StdKind::Sample ? "sample" : "population";
  }
  return doc;
}

// Rows are sets and columns languages, in first-appearance order. Cells show
// macro F1, followed by the standard deviation x100 in parentheses when
// aggregated over more than one run.
std::string f1_table(const std::vector<std::tuple<std::string, std::string, MetricSummary>>& cells) {
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  for (const auto& [set, lang, _] : cells) {
    if (std::find(rows.begin(), rows.end(), set) == rows.end()) rows.push_back(set);
    if (std::find(cols.begin(), cols.end(), lang) == cols.end()) cols.push_back(lang);
  }
  std::vector<std::string> header{"Set"};
  for (const auto& l : cols) header.push_back(l.empty() ? "F1" : l);
  TextTable table(header);
  for (const auto& r : rows) {
    std::vector<std::string> row{r};
    for (const auto& l : cols) {
      std::string cell = "-";
      for (const auto& [set, lang, s] : cells) {
        if (set != r || lang != l) continue;
        cell = fixed(s.macro.f1, 2);
        if (s.runs > 1 && s.spread) cell += " (" + fixed(s.spread->macro.f1 * 100.0, 1) + ")";
      }
      row.push_back(cell);
    }
    table.add_row(std::move(row));
  }
  return table.render();
}

struct EvalCmd {
  std::string labels = "HOF,NOT";
  std::vector<std::string> preds;
  std::string std_kind = "sample";

  int run(const Common& c, std::ostream& out) const {
    const auto label_set = split_list(labels);
    if (label_set.empty()) throw UsageError("--labels is empty");
    const StdKind kind = std_kind == "population" ? StdKind::Population : StdKind::Sample;

    std::vector<std::pair<std::string, std::string>> order;
    std::map<std::pair<std::string, std::string>, std::vector<MetricSummary>> runs;
    std::map<std::pair<std::string, std::string>, std::vector<std::string>> files;
    for (const auto& spec : preds) {
      Labeled l = parse_labeled(spec);
      const fs::path p = resolve_input(l.path);
      if (l.name.empty()) l.name = p.stem().string();
      MetricSummary s;
      try {
        s = macro_scores(load_predictions_file(p), label_set);
      } catch (const DataError& e) {
        throw e.source().empty() ? e.in(p.string()) : e;
      }
      auto key = std::make_pair(l.name, l.lang);
      if (!runs.contains(key)) order.push_back(key);
      runs[key].push_back(std::move(s));
      files[key].push_back(p.string());
    }

    std::vector<std::tuple<std::string, std::string, MetricSummary>> cells;
    for (const auto& key : order) cells.emplace_back(key.first, key.second, aggregate_seeds(runs[key], kind));

    if (c.format == "json") {
      ojson doc;
      add_meta(doc, c.timestamp);
      doc["labels"] = label_set;
      ojson results = ojson::array();
      for (const auto& [set, lang, agg] : cells) {
        ojson r;
        r["set"] = set;
        r["language"] = lang;
        ojson per = ojson::array();
        const auto& rs = runs[{set, lang}];
        const auto& fs_ = files[{set, lang}];
        for (std::size_t i = 0; i < rs.size(); ++i) {
          ojson one = summary_json(rs[i]);
          one["file"] = fs_[i];
          per.push_back(std::move(one));
        }
        r["runs"] = std::move(per);
        r["aggregate"] = summary_json(agg);
        results.push_back(std::move(r));
      }
      doc["results"] = std::move(results);
      emit(c.output, dump(doc), out);
      return kOk;
    }
    std::string text = f1_table(cells) + "\n";
    for (const auto& [set, lang, s] : cells) {
      text += set + (lang.empty() ? "" : "@" + lang) + ": macro F1 " + fixed(s.macro.f1, 4) + ", P " +
              fixed(s.macro.precision, 4) + ", R " + fixed(s.macro.recall, 4);
      if (s.runs > 1) text += " over " + std::to_string(s.runs) + " runs, std F1 " + fixed(s.spread->macro.f1, 4);
      text += "\n";
    }
    emit(c.output, text, out);
    return kOk;
  }
};

struct EvalShotsCmd {
  std::string labels = "HOF,NOT";
  std::vector<std::string> shots;
  std::vector<std::string> preds;

  int run(const Common& c, std::ostream& out) const {
    const auto label_set = split_list(labels);
    if (label_set.empty()) throw UsageError("--labels is empty");
    std::map<std::string, std::pair<std::string, std::vector<PredictionRecord>>> by_lang;
    for (const auto& spec : preds) {
      const auto eq = spec.find('=');
      const std::string lang = eq == std::string::npos ? "" : spec.substr(0, eq);
      const fs::path p = resolve_input(eq == std::string::npos ? spec : spec.substr(eq + 1));
      by_lang[lang] = {p.string(), load_predictions_file(p)};
    }

    std::vector<std::tuple<std::string, std::string, MetricSummary>> cells;
    for (const auto& spec : shots) {
      Labeled l = parse_labeled(spec);
      const fs::path p = resolve_input(l.path);
      const ShotSet set = load_shot_set_file(p);
      auto it = by_lang.find(l.lang);
      if (it == by_lang.end() && by_lang.size() == 1 && l.lang.empty()) it = by_lang.begin();
      if (it == by_lang.end()) throw UsageError("no --pred given for language '" + l.lang + "'");
      try {
        cells.emplace_back(l.name.empty() ? set.name() : l.name, l.lang,
                           score_shot_set(set, it->second.second, label_set));
      } catch (const DataError& e) {
        throw e.in(e.line() ? it->second.first : p.string());
      }
    }

    if (c.format == "json") {
      ojson doc;
      add_meta(doc, c.timestamp);
      doc["labels"] = label_set;
      ojson results = ojson::array();
      for (const auto& [set, lang, s] : cells) {
        ojson r = summary_json(s);
        r["set"] = set;
        r["language"] = lang;
        results.push_back(std::move(r));
      }
      doc["results"] = std::move(results);
      emit(c.output, dump(doc), out);
      return kOk;
    }
    emit(c.output, f1_table(cells), out);
    return kOk;
  }
};

// ---------------------------------------------------------------------------
// Config files: key=value lines appended as flags unless the flag was given.

std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::string config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config requires a file argument");
      config = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].starts_with("--config=")) {
      config = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (config.empty()) return args;

  auto given = [&](const std::string& flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.starts_with(flag + "="); });
  };
  const fs::path p = resolve_input(config);
  const std::string content = io::read_file(p);
  std::vector<std::string> extra;
  std::set<std::string> seen_keys;
  std::set<std::string> overridden;
  std::size_t line_no = 0;
  for (std::string_view raw : io::split_lines(content)) {
    ++line_no;
    const std::string line = unicode::trim(raw);
    if (line.empty() || line.starts_with('#')) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(p.string() + ":" + std::to_string(line_no) + ": expected key=value");
    const std::string key = unicode::trim(line.substr(0, eq));
    const std::string value = unicode::trim(line.substr(eq + 1));
    const std::string flag = "--" + key;
    if (overridden.contains(key)) continue;
    if (seen_keys.insert(key).second && given(flag)) {  // command line wins
      overridden.insert(key);
      continue;
    }
    if (value == "true") {
      extra.push_back(flag);
    } else if (value != "false") {
      extra.push_back(flag);
      extra.push_back(value);
    }
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

}  // namespace

int run(std::span<const std::string> raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lexishot: lexicon-driven corpus matching, shot sampling and analysis"};
  app.name("lexishot");
  app.require_subcommand(1);
  Common common;
  app.add_option("--timestamp", common.timestamp, "none (default), now, or a literal value for JSON reports");

  LexiconStatsCmd stats;
  auto* s_stats = app.add_subcommand("lexicon-stats", "Per-country counts of each type combination");
  s_stats->add_option("--lexicon", stats.lexicon, "Lexicon TSV")->required();
  add_output(s_stats, common, true);

  LexiconValidateCmd validate;
  auto* s_validate = app.add_subcommand("lexicon-validate", "Load-check a lexicon and compare declared totals");
  s_validate->add_option("--lexicon", validate.lexicon, "Lexicon TSV")->required();
  s_validate->add_option("--declared", validate.declared, "TSV of country<TAB>declared total");
  add_output(s_validate, common, true);

  MatchCmd match;
  auto* s_match = app.add_subcommand("match", "Emit per-example term matches as JSON Lines");
  s_match->add_option("--lexicon", match.lexicon, "Lexicon TSV")->required();
  s_match->add_option("--corpus", match.corpus, "Corpus TSV")->required();
  match.scope.add_to(s_match);
  s_match->add_option("--jobs", match.jobs, "Worker threads")->check(CLI::PositiveNumber);
  add_output(s_match, common, false);

  SampleCmd sample;
  auto* s_sample = app.add_subcommand("sample", "Draw a random or lexicon-first shot set");
  s_sample->add_option("--method", sample.method, "random or lexicon")->required();
  s_sample->add_option("--size", sample.size, "Number of shots")->required()->check(CLI::PositiveNumber);
  sample.seed_opt = s_sample->add_option("--seed", sample.seed, "Seed");
  s_sample->add_option("--seeds", sample.seeds, "Comma-separated seeds, one output per seed");
  s_sample->add_option("--lexicon", sample.lexicon, "Lexicon TSV");
  s_sample->add_option("--corpus", sample.corpus, "Pool corpus TSV")->required();
  sample.scope.add_to(s_sample);
  add_output(s_sample, common, false);

  ComplementCmd comp;
  auto* s_comp = app.add_subcommand("complement", "Add lexicon (+l) or random (+r) examples to a shot set");
  s_comp->add_option("--base", comp.base, "Base ShotSet JSONL")->required();
  s_comp->add_option("--corpus", comp.corpus, "Pool corpus TSV")->required();
  s_comp->add_option("--lexicon", comp.lexicon, "Lexicon TSV")->required();
  s_comp->add_option("--mode", comp.mode, "l (lexicon) or r (random)")->required();
  s_comp->add_option("--complement-size", comp.complement_size, "Examples to add");
  comp.seed_opt = s_comp->add_option("--seed", comp.seed, "Seed (default: the base set's seed)");
  comp.scope.add_to(s_comp);
  add_output(s_comp, common, false);

  DistributionCmd dist;
  auto* s_dist = app.add_subcommand("distribution", "Distinct slur (S) and target (T) terms per set");
  s_dist->add_option("--lexicon", dist.lexicon, "Lexicon TSV")->required();
  s_dist->add_option("--set", dist.sets, "[NAME=]ShotSet JSONL");
  s_dist->add_option("--corpus", dist.corpora, "[NAME=]corpus TSV taken as a whole set");
  dist.scope.add_to(s_dist);
  add_output(s_dist, common, true);

  AnnotateWordsCmd ann;
  auto* s_ann = app.add_subcommand("annotate-words", "Mark a keyword list with lexicon types");
  s_ann->add_option("--lexicon", ann.lexicon, "Lexicon TSV")->required();
  s_ann->add_option("--country", ann.country, "Country whose terms apply")->required();
  s_ann->add_option("--words", ann.words, "Word list, one per line")->required();
  add_output(s_ann, common, true);

  RepShiftCmd shift;
  auto* s_shift = app.add_subcommand("rep-shift", "Similarity of term representations before and after finetuning");
  s_shift->add_option("--before", shift.before, "Embedding table before")->required();
  s_shift->add_option("--after", shift.after, "Embedding table after")->required();
  s_shift->add_option("--group", shift.groups, "NAME=word list");
  s_shift->add_option("--random-vocab", shift.random_vocab, "Candidate words for a seeded random group");
  s_shift->add_option("--random-count", shift.random_count, "Random group size (default: size of the other groups)");
  s_shift->add_option("--random-name", shift.random_name, "Random group name");
  s_shift->add_option("--seed", shift.seed, "Seed for the random group");
  s_shift->add_option("--metric", shift.metric, "cosine or distance (1 - cosine)");
  s_shift->add_option("--jobs", shift.jobs, "Worker threads")->check(CLI::PositiveNumber);
  add_output(s_shift, common, true);

  EvalCmd eval;
  auto* s_eval = app.add_subcommand("eval", "Macro precision, recall and F1 of prediction files");
  s_eval->add_option("--labels", eval.labels, "Comma-separated label set");
  s_eval->add_option("--pred", eval.preds, "[SET[@LANG]=]predictions TSV; repeats of a SET@LANG are seeds")
      ->required();
  s_eval->add_option("--std", eval.std_kind, "sample or population")->check(CLI::IsMember({"sample", "population"}));
  add_output(s_eval, common, true);

  EvalShotsCmd eshots;
  auto* s_eshots = app.add_subcommand("eval-shots", "Score predictions restricted to shot sets");
  s_eshots->add_option("--labels", eshots.labels, "Comma-separated label set");
  s_eshots->add_option("--shots", eshots.shots, "[SET[@LANG]=]ShotSet JSONL")->required();
  s_eshots->add_option("--pred", eshots.preds, "[LANG=]predictions TSV")->required();
  add_output(s_eshots, common, true);

  try {
    std::vector<std::string> args = apply_config({raw_args.begin(), raw_args.end()});
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kOk : kUsageError;
    }

    if (s_stats->parsed()) return stats.run(common, out);
    if (s_validate->parsed()) return validate.run(common, out);
    if (s_match->parsed()) return match.run(common, out);
    if (s_sample->parsed()) return sample.run(common, out, err);
    if (s_comp->parsed()) return comp.run(common, out, err);
    if (s_dist->parsed()) return dist.run(common, out);
    if (s_ann->parsed()) return ann.run(common, out);
    if (s_shift->parsed()) return shift.run(common, out);
    if (s_eval->parsed()) return eval.run(common, out);
    if (s_eshots->parsed()) return eshots.run(common, out);
    err << "error: no subcommand\n";
    return kUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
}

}  // namespace lexishot::cli

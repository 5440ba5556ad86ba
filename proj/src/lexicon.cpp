#include "lexishot/lexicon.hpp"

#include <charconv>
#include <set>
#include <tuple>

#include "lexishot/error.hpp"
#include "lexishot/io.hpp"
#include "lexishot/unicode.hpp"

namespace lexishot {

std::string_view to_string(TermType type) {
  switch (type) {
    case TermType::Neutral: return "Neutral";
    case TermType::Target: return "Target";
    case TermType::Slur: return "Slur";
  }
  return "?";
}

std::optional<TermType> parse_term_type(std::string_view label) {
  for (TermType t : kAllTermTypes) {
    if (label == to_string(t)) return t;
  }
  return std::nullopt;
}

std::vector<TermType> TypeSet::members() const {
  std::vector<TermType> out;
  for (TermType t : kAllTermTypes) {
    if (contains(t)) out.push_back(t);
  }
  return out;
}

std::string TypeSet::to_string() const {
  std::string out;
  for (TermType t : members()) {
    if (!out.empty()) out += '|';
    out += lexishot::to_string(t);
  }
  return out;
}

Lexicon Lexicon::from_terms(std::vector<LexiconTerm> terms, std::span<const std::size_t> lines) {
  Lexicon lex;
  lex.terms_ = std::move(terms);
  lex.folded_.reserve(lex.terms_.size());
  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> first_seen;
  for (std::size_t i = 0; i < lex.terms_.size(); ++i) {
    const std::size_t line = i < lines.size() ? lines[i] : 0;
    const LexiconTerm& t = lex.terms_[i];
    if (t.surface.empty()) throw DataError("empty surface", line);
    if (unicode::trim(t.surface) != t.surface) throw DataError("surface has surrounding whitespace", line);
    if (unicode::nfc(t.surface) != t.surface) throw DataError("surface is not NFC-normalized", line);
    if (t.country.empty()) throw DataError("empty country", line);
    if (t.language.empty()) throw DataError("empty language", line);
    if (t.types.empty()) throw DataError("empty type set", line);

    std::string folded = unicode::fold(t.surface);
    auto [slot, inserted] = lex.index_[{t.language, t.country}].try_emplace(folded, i);
    if (!inserted) {
      const std::size_t prev = slot->second;
      std::string msg = "duplicate term '" + t.surface + "' for " + t.country + "/" + t.language;
      if (prev < lines.size() && lines[prev] != 0) msg += " (first defined on line " + std::to_string(lines[prev]) + ")";
      throw DataError(msg, line);
    }
    lex.folded_.push_back(std::move(folded));
  }
  return lex;
}

const LexiconTerm* Lexicon::find(std::string_view surface, std::string_view country, std::string_view language) const {
  auto part = index_.find(Partition{std::string(language), std::string(country)});
  if (part == index_.end()) return nullptr;
  auto it = part->second.find(unicode::fold(surface));
  return it == part->second.end() ? nullptr : &terms_[it->second];
}

std::vector<const LexiconTerm*> Lexicon::lookup(std::string_view word, std::string_view country) const {
  std::vector<const LexiconTerm*> out;
  const std::string folded = unicode::fold(word);
  for (const auto& [partition, entries] : index_) {
    if (partition.second != country) continue;
    if (auto it = entries.find(folded); it != entries.end()) out.push_back(&terms_[it->second]);
  }
  return out;
}

std::vector<std::string> Lexicon::countries() const {
  std::set<std::string> s;
  for (const auto& t : terms_) s.insert(t.country);
  return {s.begin(), s.end()};
}

std::vector<std::string> Lexicon::languages() const {
  std::set<std::string> s;
  for (const auto& t : terms_) s.insert(t.language);
  return {s.begin(), s.end()};
}

Lexicon load_lexicon(std::string_view content, const std::string& source) {
  std::vector<LexiconTerm> terms;
  std::vector<std::size_t> lines;
  std::size_t line_no = 0;
  try {
    for (std::string_view raw : io::split_lines(content)) {
      ++line_no;
      if (!unicode::is_valid_utf8(raw)) throw DataError("invalid UTF-8", line_no);
      if (raw.starts_with('#') || unicode::trim(raw).empty()) continue;

      const auto cols = io::split(raw, '\t');
      if (cols.size() != 5) {
        throw DataError("expected 5 tab-separated columns, found " + std::to_string(cols.size()), line_no);
      }
      LexiconTerm term;
      term.surface = unicode::nfc(unicode::trim(cols[0]));
      term.country = unicode::trim(cols[1]);
      term.language = unicode::trim(cols[2]);
      term.description = unicode::nfc(unicode::trim(cols[4]));
      for (std::string_view label : io::split(cols[3], '|')) {
        const std::string trimmed = unicode::trim(label);
        if (trimmed.empty()) continue;
        auto type = parse_term_type(trimmed);
        if (!type) throw DataError("unknown type label '" + trimmed + "'", line_no);
        term.types.insert(*type);
      }
      if (term.types.empty()) throw DataError("empty type set", line_no);
      if (term.surface.empty()) throw DataError("empty surface", line_no);
      terms.push_back(std::move(term));
      lines.push_back(line_no);
    }
    return Lexicon::from_terms(std::move(terms), lines);
  } catch (const DataError& e) {
    if (source.empty()) throw;
    throw e.in(source);
  }
}

Lexicon load_lexicon_file(const std::filesystem::path& path) {
  return load_lexicon(io::read_file(path), path.string());
}

std::string to_tsv(const Lexicon& lexicon) {
  std::string out;
  for (const LexiconTerm& t : lexicon.terms()) {
    out += t.surface + '\t' + t.country + '\t' + t.language + '\t' + t.types.to_string() + '\t' + t.description + '\n';
  }
  return out;
}

TypeCombination combination_of(TypeSet types) {
  using enum TermType;
  if (types == TypeSet{Neutral}) return TypeCombination::Neutral;
  if (types == TypeSet{Target}) return TypeCombination::Target;
  if (types == TypeSet{Slur}) return TypeCombination::Slur;
  if (types == TypeSet{Neutral, Target}) return TypeCombination::NeutralTarget;
  if (types == TypeSet{Neutral, Slur}) return TypeCombination::NeutralSlur;
  if (types == TypeSet{Target, Slur}) return TypeCombination::TargetSlur;
  return TypeCombination::Other;
}

std::string_view to_string(TypeCombination combination) {
  switch (combination) {
    case TypeCombination::Neutral: return "Neutral";
    case TypeCombination::Target: return "Target";
    case TypeCombination::Slur: return "Slur";
    case TypeCombination::NeutralTarget: return "Neutral/Target";
    case TypeCombination::NeutralSlur: return "Neutral/Slur";
    case TypeCombination::TargetSlur: return "Target/Slur";
    case TypeCombination::Other: return "Other";
  }
  return "?";
}

std::size_t CountryStats::total() const {
  std::size_t sum = 0;
  for (std::size_t c : counts) sum += c;
  return sum;
}

std::size_t LexiconStats::total() const {
  std::size_t sum = 0;
  for (const auto& [_, s] : by_country) sum += s.total();
  return sum;
}

LexiconStats compute_stats(const Lexicon& lexicon) {
  LexiconStats stats;
  for (const LexiconTerm& t : lexicon.terms()) {
    ++stats.by_country[t.country].counts[static_cast<std::size_t>(combination_of(t.types))];
  }
  return stats;
}

std::vector<Discrepancy> validate_against_declared(const LexiconStats& stats,
                                                   const std::map<std::string, std::size_t>& declared) {
  std::vector<Discrepancy> out;
  for (const auto& [country, expected] : declared) {
    auto it = stats.by_country.find(country);
    const std::size_t computed = it == stats.by_country.end() ? 0 : it->second.total();
    if (computed != expected) out.push_back({country, computed, expected});
  }
  return out;
}

std::map<std::string, std::size_t> load_declared_totals(std::string_view content, const std::string& source) {
  std::map<std::string, std::size_t> out;
  std::size_t line_no = 0;
  for (std::string_view raw : io::split_lines(content)) {
    ++line_no;
    if (raw.starts_with('#') || unicode::trim(raw).empty()) continue;
    const auto cols = io::split(raw, '\t');
    if (cols.size() != 2) throw DataError("expected country<TAB>total", line_no, source);
    const std::string country = unicode::trim(cols[0]);
    const std::string number = unicode::trim(cols[1]);
    std::size_t total = 0;
    auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), total);
    if (ec != std::errc{} || ptr != number.data() + number.size()) {
      throw DataError("invalid total '" + number + "'", line_no, source);
    }
    if (!out.emplace(country, total).second) throw DataError("duplicate country '" + country + "'", line_no, source);
  }
  return out;
}

}  // namespace lexishot

#include "lexishot/text_match.hpp"

#include <algorithm>
#include <tuple>

#include "lexishot/unicode.hpp"

namespace lexishot {
namespace {

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view primary_subtag(std::string_view tag) { return tag.substr(0, tag.find_first_of("-_")); }

}  // namespace

bool language_matches(std::string_view term_language, std::string_view filter_language) {
  const std::string a = ascii_lower(term_language);
  const std::string b = ascii_lower(filter_language);
  if (a == b) return true;
  const bool a_bare = a.find_first_of("-_") == std::string::npos;
  const bool b_bare = b.find_first_of("-_") == std::string::npos;
  return (a_bare || b_bare) && primary_subtag(a) == primary_subtag(b);
}

bool MatchScope::admits(const LexiconTerm& term) const {
  if (!countries.empty() && !countries.contains(term.country)) return false;
  if (languages.empty()) return true;
  return std::any_of(languages.begin(), languages.end(),
                     [&](const std::string& lang) { return language_matches(term.language, lang); });
}

TermMatcher::TermMatcher(const Lexicon& lexicon, MatchScope scope)
    : lexicon_(&lexicon), scope_(std::move(scope)), trie_(1) {
  const auto terms = lexicon.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!scope_.admits(terms[i])) continue;
    const auto tokens = unicode::word_tokens(terms[i].surface);
    if (tokens.empty()) continue;  // no word characters: cannot occur as a whole word
    std::size_t node = 0;
    for (const auto& tok : tokens) {
      std::string key = unicode::fold(tok.text);
      auto it = trie_[node].next.find(key);
      if (it == trie_[node].next.end()) {
        trie_.emplace_back();
        it = trie_[node].next.emplace(std::move(key), trie_.size() - 1).first;
      }
      node = it->second;
    }
    trie_[node].terms.push_back(i);
    max_tokens_ = std::max(max_tokens_, tokens.size());
  }
}

std::vector<TermMatch> TermMatcher::find(std::string_view text) const {
  std::vector<TermMatch> out;
  if (max_tokens_ == 0) return out;
  const auto tokens = unicode::word_tokens(text);
  std::vector<std::string> keys;
  keys.reserve(tokens.size());
  for (const auto& tok : tokens) keys.push_back(unicode::fold(tok.text));

  const auto terms = lexicon_->terms();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::size_t node = 0;
    for (std::size_t j = i; j < tokens.size(); ++j) {
      auto it = trie_[node].next.find(keys[j]);
      if (it == trie_[node].next.end()) break;
      node = it->second;
      for (std::size_t term : trie_[node].terms) {
        TermMatch m;
        m.term = &terms[term];
        m.start = tokens[i].start;
        m.end = tokens[j].end;
        m.matched_text = std::string(text.substr(tokens[i].byte_begin, tokens[j].byte_end - tokens[i].byte_begin));
        out.push_back(std::move(m));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const TermMatch& a, const TermMatch& b) {
    return std::tie(a.start, a.term->surface, a.end, a.term->country, a.term->language) <
           std::tie(b.start, b.term->surface, b.end, b.term->country, b.term->language);
  });
  return out;
}

std::vector<TermMatch> find_terms(std::string_view text, const Lexicon& lexicon, const MatchScope& scope) {
  return TermMatcher(lexicon, scope).find(text);
}

MatchReport classify_example(const Example& example, const TermMatcher& matcher) {
  MatchReport report;
  report.example_id = example.id;
  report.matches = matcher.find(example.text);
  for (const TermMatch& m : report.matches) {
    report.has_slur = report.has_slur || m.term->types.contains(TermType::Slur);
    report.has_target = report.has_target || m.term->types.contains(TermType::Target);
    report.has_neutral = report.has_neutral || m.term->types.contains(TermType::Neutral);
  }
  return report;
}

std::vector<std::string> matched_surfaces(const MatchReport& report) {
  std::vector<std::string> out;
  for (const TermMatch& m : report.matches) {
    if (std::find(out.begin(), out.end(), m.term->surface) == out.end()) out.push_back(m.term->surface);
  }
  return out;
}

}  // namespace lexishot

#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexishot/corpus.hpp"
#include "lexishot/lexicon.hpp"

namespace lexishot {

// Restricts matching to a subset of the lexicon. Empty sets admit everything.
// Languages compare as BCP-47-style tags: "pt" admits "pt-BR" and vice versa,
// "pt-BR" does not admit "pt-PT".
struct MatchScope {
  std::set<std::string> languages;
  std::set<std::string> countries;

  bool admits(const LexiconTerm& term) const;
};

bool language_matches(std::string_view term_language, std::string_view filter_language);

struct TermMatch {
  const LexiconTerm* term = nullptr;  // points into the matcher's lexicon
  std::size_t start = 0;              // code points, inclusive
  std::size_t end = 0;                // code points, exclusive
  std::string matched_text;

  friend bool operator==(const TermMatch&, const TermMatch&) = default;
};

// Whole-word, case-insensitive matcher over the admitted lexicon terms.
// Surfaces and text are split with the Unicode default word-boundary rules and
// compared token by token after full case folding, so a multi-word surface
// matches any run of consecutive word tokens regardless of the whitespace or
// punctuation between them. Diacritics are significant.
//
// The lexicon must outlive the matcher.
class TermMatcher {
 public:
  explicit TermMatcher(const Lexicon& lexicon, MatchScope scope = {});
  TermMatcher(Lexicon&&, MatchScope = {}) = delete;

  // All matches, ordered by (start, surface, end, country, language).
  // Overlapping matches are all kept.
  std::vector<TermMatch> find(std::string_view text) const;

  const Lexicon& lexicon() const { return *lexicon_; }
  const MatchScope& scope() const { return scope_; }
  std::size_t max_term_tokens() const { return max_tokens_; }

 private:
  struct Node {
    std::unordered_map<std::string, std::size_t> next;
    std::vector<std::size_t> terms;  // indices into lexicon terms
  };

  const Lexicon* lexicon_;
  MatchScope scope_;
  std::vector<Node> trie_;
  std::size_t max_tokens_ = 0;
};

std::vector<TermMatch> find_terms(std::string_view text, const Lexicon& lexicon, const MatchScope& scope = {});

struct MatchReport {
  std::string example_id;
  std::vector<TermMatch> matches;
  bool has_slur = false;
  bool has_target = false;
  bool has_neutral = false;

  // The lexicon-first selection criterion.
  bool bears_slur_or_target() const { return has_slur || has_target; }
};

MatchReport classify_example(const Example& example, const TermMatcher& matcher);

// Distinct matched surfaces in order of first occurrence.
std::vector<std::string> matched_surfaces(const MatchReport& report);

}  // namespace lexishot

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexishot/lexicon.hpp"

namespace lexishot {

struct AnnotatedWord {
  std::string word;
  std::optional<TypeSet> types;  // nullopt when the word is not in the lexicon
};

// A word typed Target and Slur counts once in slurs, once in targets and once
// in both.
struct AnnotationSummary {
  std::size_t slurs = 0;
  std::size_t targets = 0;
  std::size_t both = 0;
  std::size_t neutral = 0;
  std::size_t unmatched = 0;

  friend bool operator==(const AnnotationSummary&, const AnnotationSummary&) = default;
};

struct AnnotatedWordList {
  std::string country;
  std::vector<AnnotatedWord> entries;
  AnnotationSummary summary;
};

AnnotationSummary summarize(std::span<const AnnotatedWord> entries);

// Looks every word up case-folded among the terms of `country` (all of its
// languages). Repeated words are counted each time they occur.
AnnotatedWordList annotate_words(std::span<const std::string> words, const Lexicon& lexicon, std::string_view country);

// "1 slur, 4 targets"
std::string describe(const AnnotationSummary& summary);

}  // namespace lexishot

#include "lexishot/annotate.hpp"

namespace lexishot {

AnnotationSummary summarize(std::span<const AnnotatedWord> entries) {
  AnnotationSummary s;
  for (const AnnotatedWord& e : entries) {
    if (!e.types) {
      ++s.unmatched;
      continue;
    }
    const bool slur = e.types->contains(TermType::Slur);
    const bool target = e.types->contains(TermType::Target);
    s.slurs += slur;
    s.targets += target;
    s.both += slur && target;
    s.neutral += e.types->contains(TermType::Neutral);
  }
  return s;
}

AnnotatedWordList annotate_words(std::span<const std::string> words, const Lexicon& lexicon, std::string_view country) {
  AnnotatedWordList out;
  out.country = std::string(country);
  for (const std::string& word : words) {
    AnnotatedWord entry{word, std::nullopt};
    for (const LexiconTerm* term : lexicon.lookup(word, country)) {
      if (!entry.types) entry.types = TypeSet{};
      *entry.types |= term->types;
    }
    out.entries.push_back(std::move(entry));
  }
  out.summary = summarize(out.entries);
  return out;
}

std::string describe(const AnnotationSummary& summary) {
  auto plural = [](std::size_t n, const char* noun) {
    return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
  };
  return plural(summary.slurs, "slur") + ", " + plural(summary.targets, "target");
}

}  // namespace lexishot

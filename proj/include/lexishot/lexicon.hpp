#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lexishot {

enum class TermType : std::uint8_t { Neutral, Target, Slur };

inline constexpr std::array<TermType, 3> kAllTermTypes{TermType::Neutral, TermType::Target, TermType::Slur};

std::string_view to_string(TermType type);
std::optional<TermType> parse_term_type(std::string_view label);

// Set of term types; member order is always Neutral, Target, Slur.
class TypeSet {
 public:
  constexpr TypeSet() = default;
  constexpr TypeSet(std::initializer_list<TermType> types) {
    for (TermType t : types) insert(t);
  }

  constexpr void insert(TermType t) { bits_ |= mask(t); }
  constexpr bool contains(TermType t) const { return (bits_ & mask(t)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const {
    return static_cast<std::size_t>((bits_ & 1) + ((bits_ >> 1) & 1) + ((bits_ >> 2) & 1));
  }
  constexpr std::uint8_t bits() const { return bits_; }
  constexpr TypeSet& operator|=(TypeSet other) {
    bits_ |= other.bits_;
    return *this;
  }
  friend constexpr bool operator==(TypeSet, TypeSet) = default;

  std::vector<TermType> members() const;
  // "Target|Slur"
  std::string to_string() const;

 private:
  static constexpr std::uint8_t mask(TermType t) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(t)); }
  std::uint8_t bits_ = 0;
};

struct LexiconTerm {
  std::string surface;  // NFC, trimmed, non-empty
  std::string country;
  std::string language;
  TypeSet types;
  std::string description;

  friend bool operator==(const LexiconTerm&, const LexiconTerm&) = default;
};

// Immutable after construction. Terms keep their load order; the index maps
// case-folded surfaces to terms within each (language, country) partition.
class Lexicon {
 public:
  Lexicon() = default;

  // Validates every term and builds the index. Throws DataError on an invalid
  // term or a duplicate (case-folded surface, country, language) key; `lines`
  // supplies line numbers for the messages when non-empty.
  static Lexicon from_terms(std::vector<LexiconTerm> terms, std::span<const std::size_t> lines = {});

  std::span<const LexiconTerm> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  // Case-folded surface of terms()[i].
  const std::string& folded_surface(std::size_t i) const { return folded_[i]; }

  const LexiconTerm* find(std::string_view surface, std::string_view country, std::string_view language) const;

  // All terms of `country` (any language) whose folded surface equals fold(word).
  std::vector<const LexiconTerm*> lookup(std::string_view word, std::string_view country) const;

  std::vector<std::string> countries() const;
  std::vector<std::string> languages() const;

 private:
  using Partition = std::pair<std::string, std::string>;  // (language, country)

  std::vector<LexiconTerm> terms_;
  std::vector<std::string> folded_;
  std::map<Partition, std::map<std::string, std::size_t, std::less<>>> index_;
};

// Parses the lexicon TSV format:
//   surface<TAB>country<TAB>language<TAB>types<TAB>description
// `types` is a '|'-joined subset of {Neutral, Target, Slur}; '#' lines are
// comments; blank lines are ignored. Fields are trimmed and NFC-normalized.
Lexicon load_lexicon(std::string_view content, const std::string& source = {});
Lexicon load_lexicon_file(const std::filesystem::path& path);

// Inverse of load_lexicon, with type labels in canonical order.
std::string to_tsv(const Lexicon& lexicon);

// Type combinations tracked by the statistics table; Other holds anything
// outside the six single and pair combinations.
enum class TypeCombination : std::uint8_t { Neutral, Target, Slur, NeutralTarget, NeutralSlur, TargetSlur, Other };

inline constexpr std::size_t kCombinationCount = 7;
TypeCombination combination_of(TypeSet types);
std::string_view to_string(TypeCombination combination);

struct CountryStats {
  std::array<std::size_t, kCombinationCount> counts{};

  std::size_t operator[](TypeCombination c) const { return counts[static_cast<std::size_t>(c)]; }
  std::size_t total() const;

  friend bool operator==(const CountryStats&, const CountryStats&) = default;
};

struct LexiconStats {
  std::map<std::string, CountryStats> by_country;

  std::size_t total() const;
};

LexiconStats compute_stats(const Lexicon& lexicon);

struct Discrepancy {
  std::string country;
  std::size_t computed = 0;
  std::size_t declared = 0;

  friend bool operator==(const Discrepancy&, const Discrepancy&) = default;
};

// One record per declared country whose computed total differs, in country
// order. A declared country missing from the lexicon computes as 0.
std::vector<Discrepancy> validate_against_declared(const LexiconStats& stats,
                                                   const std::map<std::string, std::size_t>& declared);

// "country<TAB>total" per line; '#' comments allowed.
std::map<std::string, std::size_t> load_declared_totals(std::string_view content, const std::string& source = {});

}  // namespace lexishot

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexishot/corpus.hpp"
#include "lexishot/text_match.hpp"

namespace lexishot {

enum class SamplingMethod { Random, Lexicon };

// PlusL: half target-bearing, half slur-bearing extra examples.
// PlusR: unrestricted extra examples (the control).
enum class ComplementMode { PlusL, PlusR };

enum class Origin { LexiconSelected, RandomFill, ComplementTarget, ComplementSlur, ComplementRandom };

std::string_view to_string(SamplingMethod method);
std::string_view to_string(ComplementMode mode);
std::string_view to_string(Origin origin);
std::optional<SamplingMethod> parse_sampling_method(std::string_view text);
std::optional<ComplementMode> parse_complement_mode(std::string_view text);
std::optional<Origin> parse_origin(std::string_view text);

struct SamplingConfig {
  SamplingMethod method = SamplingMethod::Random;
  std::size_t size = 0;
  std::uint64_t seed = 0;
  std::optional<ComplementMode> complement;
  std::size_t complement_size = 32;

  // Throws std::invalid_argument: size must be positive, and a PlusL
  // complement size must be even.
  void validate() const;
};

struct Shot {
  Example example;
  Origin origin = Origin::RandomFill;
  std::vector<std::string> matched_terms;
};

struct ShotSet {
  SamplingConfig config;
  std::optional<std::uint64_t> complement_seed;
  std::vector<Shot> shots;  // ascending id order (id_less)
  std::size_t shortfall = 0;

  std::vector<std::string> ids() const;
  // "Lexicon96", "Random64+l"
  std::string name() const;
  std::size_t count(Origin origin) const;
};

// Uniform sample of config.size examples without replacement. The result
// depends only on the seed and the set of pool ids, not the pool order.
// Throws DataError when the pool is too small or has duplicate ids.
ShotSet sample_random(std::span<const Example> pool, const SamplingConfig& config);

// Two-step selection: every example bearing a slur or target term is taken
// when they fit (|L| <= size) and the remainder is filled at random from the
// other examples; otherwise a uniform sample of size is drawn from L.
// Neutral-only matches do not count as bearing.
ShotSet sample_lexicon_first(std::span<const Example> pool, const TermMatcher& matcher, const SamplingConfig& config);

// Adds config.complement_size examples drawn from pool minus base, seeded with
// config.seed. PlusL draws the target half first, then the slur half from what
// remains, so an example bearing both lands in at most one bucket. Missing
// candidates are recorded as shortfall rather than raised.
ShotSet complement(const ShotSet& base, std::span<const Example> pool, const TermMatcher& matcher,
                   const SamplingConfig& config);

// Fills matched_terms for every shot.
void annotate(ShotSet& set, const TermMatcher& matcher);

struct SetDistribution {
  std::string name;
  std::size_t size = 0;
  std::vector<std::string> slur_terms;    // distinct, sorted
  std::vector<std::string> target_terms;  // distinct, sorted

  std::size_t slurs() const { return slur_terms.size(); }
  std::size_t targets() const { return target_terms.size(); }
};

using DistributionReport = std::vector<SetDistribution>;

// Distinct slur (S) and target (T) terms present in a set. A term carrying
// both types counts toward both.
SetDistribution distribution_of(std::string name, std::span<const Example> examples, const TermMatcher& matcher);
DistributionReport distribution_report(std::span<const ShotSet> sets, const TermMatcher& matcher);

// Seeded sample of k distinct words from candidates (deduplicated and sorted
// first), returned sorted. Throws DataError when fewer than k are available.
std::vector<std::string> sample_words(std::vector<std::string> candidates, std::size_t k, std::uint64_t seed);

}  // namespace lexishot

#include "lexishot/sampler.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "lexishot/error.hpp"
#include "lexishot/prng.hpp"

namespace lexishot {
namespace {

std::vector<const Example*> sorted_pool(std::span<const Example> pool) {
  std::vector<const Example*> out;
  out.reserve(pool.size());
  for (const Example& ex : pool) out.push_back(&ex);
  std::sort(out.begin(), out.end(), [](const Example* a, const Example* b) { return id_less(a->id, b->id); });
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i]->id == out[i - 1]->id) throw DataError("duplicate example id '" + out[i]->id + "' in pool");
  }
  return out;
}

void require_pool(std::size_t pool_size, std::size_t size) {
  if (pool_size < size) {
    throw DataError("pool has " + std::to_string(pool_size) + " examples, fewer than the requested " +
                    std::to_string(size));
  }
}

// Draws k candidates (fewer when not enough exist) and appends them with the given origin.
std::size_t draw(const std::vector<const Example*>& candidates, std::size_t k, Prng& rng, Origin origin,
                 std::vector<Shot>& out) {
  const std::size_t take = std::min(k, candidates.size());
  for (std::size_t idx : sample_indices(candidates.size(), take, rng)) {
    out.push_back(Shot{*candidates[idx], origin, {}});
  }
  return take;
}

void sort_shots(std::vector<Shot>& shots) {
  std::sort(shots.begin(), shots.end(), [](const Shot& a, const Shot& b) { return id_less(a.example.id, b.example.id); });
}

}  // namespace

std::string_view to_string(SamplingMethod method) { return method == SamplingMethod::Random ? "Random" : "Lexicon"; }

std::string_view to_string(ComplementMode mode) { return mode == ComplementMode::PlusL ? "PlusL" : "PlusR"; }

std::string_view to_string(Origin origin) {
  switch (origin) {
    case Origin::LexiconSelected: return "lexicon-selected";
    case Origin::RandomFill: return "random-fill";
    case Origin::ComplementTarget: return "complement-target";
    case Origin::ComplementSlur: return "complement-slur";
    case Origin::ComplementRandom: return "complement-random";
  }
  return "?";
}

std::optional<SamplingMethod> parse_sampling_method(std::string_view text) {
  if (text == "Random" || text == "random") return SamplingMethod::Random;
  if (text == "Lexicon" || text == "lexicon") return SamplingMethod::Lexicon;
  return std::nullopt;
}

std::optional<ComplementMode> parse_complement_mode(std::string_view text) {
  if (text == "PlusL" || text == "+l" || text == "l" || text == "lexicon") return ComplementMode::PlusL;
  if (text == "PlusR" || text == "+r" || text == "r" || text == "random") return ComplementMode::PlusR;
  return std::nullopt;
}

std::optional<Origin> parse_origin(std::string_view text) {
  for (Origin o : {Origin::LexiconSelected, Origin::RandomFill, Origin::ComplementTarget, Origin::ComplementSlur,
                   Origin::ComplementRandom}) {
    if (text == to_string(o)) return o;
  }
  return std::nullopt;
}

void SamplingConfig::validate() const {
  if (size == 0) throw std::invalid_argument("sample size must be at least 1");
  if (complement == ComplementMode::PlusL && complement_size % 2 != 0) {
    throw std::invalid_argument("PlusL complement size must be even, got " + std::to_string(complement_size));
  }
}

std::vector<std::string> ShotSet::ids() const {
  std::vector<std::string> out;
  out.reserve(shots.size());
  for (const Shot& s : shots) out.push_back(s.example.id);
  return out;
}

std::string ShotSet::name() const {
  std::string out = std::string(to_string(config.method)) + std::to_string(config.size);
  if (config.complement) out += *config.complement == ComplementMode::PlusL ? "+l" : "+r";
  return out;
}

std::size_t ShotSet::count(Origin origin) const {
  return static_cast<std::size_t>(
      std::count_if(shots.begin(), shots.end(), [origin](const Shot& s) { return s.origin == origin; }));
}

ShotSet sample_random(std::span<const Example> pool, const SamplingConfig& config) {
  config.validate();
  if (config.method != SamplingMethod::Random) throw std::invalid_argument("sample_random requires method Random");
  const auto candidates = sorted_pool(pool);
  require_pool(candidates.size(), config.size);

  ShotSet set;
  set.config = config;
  set.config.complement.reset();
  Prng rng(config.seed);
  draw(candidates, config.size, rng, Origin::RandomFill, set.shots);
  sort_shots(set.shots);
  return set;
}

ShotSet sample_lexicon_first(std::span<const Example> pool, const TermMatcher& matcher, const SamplingConfig& config) {
  config.validate();
  if (config.method != SamplingMethod::Lexicon) {
    throw std::invalid_argument("sample_lexicon_first requires method Lexicon");
  }
  const auto candidates = sorted_pool(pool);
  require_pool(candidates.size(), config.size);

  std::vector<const Example*> bearing;
  std::vector<const Example*> rest;
  for (const Example* ex : candidates) {
    (classify_example(*ex, matcher).bears_slur_or_target() ? bearing : rest).push_back(ex);
  }

  ShotSet set;
  set.config = config;
  set.config.complement.reset();
  Prng rng(config.seed);
  if (bearing.size() <= config.size) {
    for (const Example* ex : bearing) set.shots.push_back(Shot{*ex, Origin::LexiconSelected, {}});
    draw(rest, config.size - bearing.size(), rng, Origin::RandomFill, set.shots);
  } else {
    draw(bearing, config.size, rng, Origin::LexiconSelected, set.shots);
  }
  sort_shots(set.shots);
  annotate(set, matcher);
  return set;
}

ShotSet complement(const ShotSet& base, std::span<const Example> pool, const TermMatcher& matcher,
                   const SamplingConfig& config) {
  if (!config.complement) throw std::invalid_argument("complement requires a complement mode");
  if (*config.complement == ComplementMode::PlusL && config.complement_size % 2 != 0) {
    throw std::invalid_argument("PlusL complement size must be even, got " + std::to_string(config.complement_size));
  }
  std::unordered_set<std::string> taken;
  for (const Shot& s : base.shots) taken.insert(s.example.id);

  std::vector<const Example*> candidates;
  for (const Example* ex : sorted_pool(pool)) {
    if (!taken.contains(ex->id)) candidates.push_back(ex);
  }

  ShotSet out = base;
  out.config.complement = config.complement;
  out.config.complement_size = config.complement_size;
  out.complement_seed = config.seed;
  out.shortfall = 0;

  std::vector<Shot> added;
  Prng rng(config.seed);
  if (*config.complement == ComplementMode::PlusR) {
    const std::size_t got = draw(candidates, config.complement_size, rng, Origin::ComplementRandom, added);
    out.shortfall = config.complement_size - got;
  } else {
    const std::size_t half = config.complement_size / 2;
    std::vector<const Example*> targets;
    std::vector<MatchReport> reports;
    reports.reserve(candidates.size());
    for (const Example* ex : candidates) {
      reports.push_back(classify_example(*ex, matcher));
      if (reports.back().has_target) targets.push_back(ex);
    }
    const std::size_t got_targets = draw(targets, half, rng, Origin::ComplementTarget, added);
    std::unordered_set<std::string> used;
    for (const Shot& s : added) used.insert(s.example.id);
    std::vector<const Example*> slurs;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (reports[i].has_slur && !used.contains(candidates[i]->id)) slurs.push_back(candidates[i]);
    }
    const std::size_t got_slurs = draw(slurs, half, rng, Origin::ComplementSlur, added);
    out.shortfall = (half - got_targets) + (half - got_slurs);
  }

  for (Shot& s : added) {
    s.matched_terms = matched_surfaces(classify_example(s.example, matcher));
    out.shots.push_back(std::move(s));
  }
  sort_shots(out.shots);
  return out;
}

void annotate(ShotSet& set, const TermMatcher& matcher) {
  for (Shot& s : set.shots) s.matched_terms = matched_surfaces(classify_example(s.example, matcher));
}

SetDistribution distribution_of(std::string name, std::span<const Example> examples, const TermMatcher& matcher) {
  std::set<const LexiconTerm*> slurs;
  std::set<const LexiconTerm*> targets;
  for (const Example& ex : examples) {
    for (const TermMatch& m : matcher.find(ex.text)) {
      if (m.term->types.contains(TermType::Slur)) slurs.insert(m.term);
      if (m.term->types.contains(TermType::Target)) targets.insert(m.term);
    }
  }
  auto surfaces = [](const std::set<const LexiconTerm*>& terms) {
    std::vector<std::string> out;
    for (const LexiconTerm* t : terms) out.push_back(t->surface);
    std::sort(out.begin(), out.end());
    return out;
  };
  SetDistribution d;
  d.name = std::move(name);
  d.size = examples.size();
  d.slur_terms = surfaces(slurs);
  d.target_terms = surfaces(targets);
  return d;
}

DistributionReport distribution_report(std::span<const ShotSet> sets, const TermMatcher& matcher) {
  DistributionReport report;
  for (const ShotSet& set : sets) {
    std::vector<Example> examples;
    examples.reserve(set.shots.size());
    for (const Shot& s : set.shots) examples.push_back(s.example);
    report.push_back(distribution_of(set.name(), examples, matcher));
  }
  return report;
}

std::vector<std::string> sample_words(std::vector<std::string> candidates, std::size_t k, std::uint64_t seed) {
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  if (candidates.size() < k) {
    throw DataError("need " + std::to_string(k) + " distinct words, only " + std::to_string(candidates.size()) +
                    " available");
  }
  Prng rng(seed);
  std::vector<std::string> out;
  for (std::size_t idx : sample_indices(candidates.size(), k, rng)) out.push_back(candidates[idx]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lexishot

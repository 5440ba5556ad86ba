#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "lexishot/corpus.hpp"
#include "lexishot/error.hpp"
#include "lexishot/lexicon.hpp"
#include "lexishot/prng.hpp"
#include "lexishot/sampler.hpp"
#include "lexishot/shotset_io.hpp"

namespace lexishot {
namespace {

const std::string kData = LEXISHOT_TEST_DATA;

const Lexicon& toy_lexicon() {
  static const Lexicon lex = load_lexicon(
      "slura\tGermany\tde\tSlur\t\nslurb\tGermany\tde\tSlur\t\nslurc\tGermany\tde\tSlur\t\n"
      "tgta\tGermany\tde\tTarget\t\ntgtb\tGermany\tde\tTarget\t\n"
      "beides\tGermany\tde\tTarget|Slur\t\nneutro\tGermany\tde\tNeutral\t\n");
  return lex;
}

Example ex(std::string id, std::string text, Label label = Label::Not) { return {std::move(id), label, "de", std::move(text)}; }

// Pool of n examples; each bears a slur, a target, both, a neutral term or
// nothing according to the draw.
std::vector<Example> random_pool(std::mt19937_64& rng, std::size_t n, unsigned bearing_percent) {
  static const std::vector<std::string> words{"heute", "Bahn", "Wetter", "Stadt", "und", "gehen"};
  static const std::vector<std::string> terms{"slura", "slurb", "slurc", "tgta", "tgtb", "beides"};
  std::vector<Example> pool;
  for (std::size_t i = 0; i < n; ++i) {
    std::string text = words[rng() % words.size()] + " " + words[rng() % words.size()];
    if (rng() % 100 < bearing_percent) text += " " + terms[rng() % terms.size()];
    if (rng() % 4 == 0) text += " neutro";
    pool.push_back(ex("p" + std::to_string(i), text, rng() % 2 ? Label::Hof : Label::Not));
  }
  return pool;
}

std::set<std::string> bearing_ids(std::span<const Example> pool, const TermMatcher& m) {
  std::set<std::string> out;
  for (const Example& e : pool) {
    if (classify_example(e, m).bears_slur_or_target()) out.insert(e.id);
  }
  return out;
}

SamplingConfig cfg(SamplingMethod method, std::size_t size, std::uint64_t seed) { return {method, size, seed, std::nullopt, 32}; }

TEST(Prng, BelowStaysInRangeAndSampleIndicesAreDistinct) {
  Prng rng(5);
  for (std::uint64_t bound : {1ull, 2ull, 3ull, 7ull, 1000ull, (1ull << 63) + 5}) {
    for (int i = 0; i < 200; ++i) EXPECT_LT(rng.below(bound), bound);
  }
  const auto idx = sample_indices(50, 50, rng);
  EXPECT_EQ(std::set<std::size_t>(idx.begin(), idx.end()).size(), 50u);
}

TEST(Prng, KnownSequenceOfUnderlyingEngine) {
  // The standard fixes the 10000th output of a default-seeded mt19937_64.
  Prng rng(5489u);
  std::uint64_t v = 0;
  for (int i = 0; i < 10000; ++i) v = rng.next();
  EXPECT_EQ(v, 9981545732273789042ull);
}

TEST(SampleRandom, WholePool) {
  std::mt19937_64 rng(1);
  const auto pool = random_pool(rng, 128, 20);
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    EXPECT_EQ(sample_random(pool, cfg(SamplingMethod::Random, 128, seed)).shots.size(), 128u);
  }
}

TEST(SampleRandom, SameSubsetAcrossRunsAndOrderings) {
  std::mt19937_64 rng(2);
  auto pool = random_pool(rng, 10, 20);
  const auto first = sample_random(pool, cfg(SamplingMethod::Random, 3, 42)).ids();
  EXPECT_EQ(first.size(), 3u);
  EXPECT_EQ(sample_random(pool, cfg(SamplingMethod::Random, 3, 42)).ids(), first);
  std::reverse(pool.begin(), pool.end());
  EXPECT_EQ(sample_random(pool, cfg(SamplingMethod::Random, 3, 42)).ids(), first);
  EXPECT_TRUE(std::is_sorted(first.begin(), first.end(), id_less));
}

TEST(SampleRandom, PoolTooSmallNamesBothNumbers) {
  const std::vector<Example> pool{ex("1", "a"), ex("2", "b")};
  try {
    sample_random(pool, cfg(SamplingMethod::Random, 3, 0));
    FAIL();
  } catch (const DataError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find('2'), std::string::npos);
    EXPECT_NE(msg.find('3'), std::string::npos);
  }
}

TEST(SampleRandom, RejectsDuplicateIdsAndBadConfig) {
  const std::vector<Example> pool{ex("1", "a"), ex("1", "b"), ex("2", "c")};
  EXPECT_THROW(sample_random(pool, cfg(SamplingMethod::Random, 1, 0)), DataError);
  EXPECT_THROW(sample_random(pool, cfg(SamplingMethod::Random, 0, 0)), std::invalid_argument);
  SamplingConfig odd{SamplingMethod::Random, 4, 0, ComplementMode::PlusL, 31};
  EXPECT_THROW(odd.validate(), std::invalid_argument);
}

TEST(SampleLexiconFirst, AllBearingIncludedThenFilled) {
  const auto pool = load_corpus_file(kData + "/hasoc_de_128.tsv");
  const Lexicon lex = load_lexicon_file(kData + "/sampling_lexicon.tsv");
  const TermMatcher m(lex, MatchScope{{"de"}, {}});
  const auto bearing = bearing_ids(pool, m);
  ASSERT_EQ(bearing.size(), 22u);
  const ShotSet set = sample_lexicon_first(pool, m, cfg(SamplingMethod::Lexicon, 64, 3));
  EXPECT_EQ(set.shots.size(), 64u);
  EXPECT_EQ(set.count(Origin::LexiconSelected), 22u);
  EXPECT_EQ(set.count(Origin::RandomFill), 42u);
  for (const Shot& s : set.shots) {
    EXPECT_EQ(s.origin == Origin::LexiconSelected, bearing.contains(s.example.id));
    EXPECT_EQ(s.matched_terms.empty(), !bearing.contains(s.example.id) &&
                                           classify_example(s.example, m).matches.empty());
  }
}

TEST(SampleLexiconFirst, OverflowSubsamplesBearingOnly) {
  std::mt19937_64 rng(3);
  const auto pool = random_pool(rng, 80, 100);
  const TermMatcher m(toy_lexicon());
  ASSERT_EQ(bearing_ids(pool, m).size(), 80u);
  const ShotSet set = sample_lexicon_first(pool, m, cfg(SamplingMethod::Lexicon, 32, 9));
  EXPECT_EQ(set.shots.size(), 32u);
  EXPECT_EQ(set.count(Origin::LexiconSelected), 32u);
}

TEST(SampleLexiconFirst, ExactFitTakesAllWithoutFill) {
  const std::vector<Example> pool{ex("1", "slura"), ex("2", "tgta"), ex("3", "Wetter"), ex("4", "neutro")};
  const ShotSet set = sample_lexicon_first(pool, TermMatcher(toy_lexicon()), cfg(SamplingMethod::Lexicon, 2, 0));
  EXPECT_EQ(set.ids(), (std::vector<std::string>{"1", "2"}));
  EXPECT_EQ(set.count(Origin::RandomFill), 0u);
}

TEST(SampleLexiconFirst, NeutralOnlyIsNotBearing) {
  const std::vector<Example> pool{ex("1", "neutro"), ex("2", "tgta"), ex("3", "heute")};
  const ShotSet set = sample_lexicon_first(pool, TermMatcher(toy_lexicon()), cfg(SamplingMethod::Lexicon, 2, 1));
  EXPECT_EQ(set.count(Origin::LexiconSelected), 1u);
  EXPECT_EQ(set.count(Origin::RandomFill), 1u);
}

TEST(Distribution, PaperShapedGermanAndHindi) {
  const Lexicon lex = load_lexicon_file(kData + "/sampling_lexicon.tsv");
  const auto de = load_corpus_file(kData + "/hasoc_de_128.tsv");
  const auto hi = load_corpus_file(kData + "/hasoc_hi_128.tsv");
  const TermMatcher mde(lex, MatchScope{{"de"}, {}});
  const TermMatcher mhi(lex, MatchScope{{"hi"}, {}});

  const SetDistribution all_de = distribution_of("All128", de, mde);
  EXPECT_EQ(all_de.slurs(), 12u);
  EXPECT_EQ(all_de.targets(), 10u);
  for (std::size_t size : {32u, 64u, 96u}) {
    const ShotSet set = sample_lexicon_first(de, mde, cfg(SamplingMethod::Lexicon, size, 0));
    if (set.count(Origin::LexiconSelected) < 22) continue;  // overflow at 32 may drop terms
    const auto report = distribution_report(std::span<const ShotSet>(&set, 1), mde);
    EXPECT_EQ(report[0].slurs(), 12u);
    EXPECT_EQ(report[0].targets(), 10u);
  }
  const SetDistribution all_hi = distribution_of("All128", hi, mhi);
  EXPECT_EQ(all_hi.slurs(), 12u);
  EXPECT_EQ(all_hi.targets(), 9u);
}

TEST(Distribution, EmptySetAndMultiTypeTerm) {
  const Lexicon lex = load_lexicon_file(kData + "/sampling_lexicon.tsv");
  const TermMatcher m(lex);
  EXPECT_EQ(distribution_of("empty", {}, m).slurs(), 0u);
  EXPECT_EQ(distribution_of("empty", {}, m).targets(), 0u);
  const std::vector<Example> one{ex("1", "die Schwule kommen")};
  const SetDistribution d = distribution_of("one", one, m);
  EXPECT_EQ(d.slurs(), 1u);
  EXPECT_EQ(d.targets(), 1u);
}

TEST(Distribution, CountsDistinctTermsOnce) {
  const std::vector<Example> set{ex("1", "slura slura tgta"), ex("2", "SLURA tgta beides")};
  const SetDistribution d = distribution_of("x", set, TermMatcher(toy_lexicon()));
  EXPECT_EQ(d.slur_terms, (std::vector<std::string>{"beides", "slura"}));
  EXPECT_EQ(d.target_terms, (std::vector<std::string>{"beides", "tgta"}));
}

// Pool with plenty of single-type bearing examples beyond any 96-example base.
std::vector<Example> complement_pool(std::size_t targets, std::size_t slurs, std::size_t plain) {
  std::vector<Example> pool;
  for (std::size_t i = 0; i < targets; ++i) pool.push_back(ex("t" + std::to_string(i), "die tgta heute"));
  for (std::size_t i = 0; i < slurs; ++i) pool.push_back(ex("s" + std::to_string(i), "slurb Bahn"));
  for (std::size_t i = 0; i < plain; ++i) pool.push_back(ex("n" + std::to_string(i), "Wetter heute"));
  return pool;
}

ShotSet base_of(std::span<const Example> pool, std::size_t size) {
  return sample_random(pool, cfg(SamplingMethod::Random, size, 77));
}

TEST(Complement, PlusLSplitsEvenly) {
  const auto pool = complement_pool(60, 60, 100);
  const TermMatcher m(toy_lexicon());
  const ShotSet base = base_of(pool, 96);
  SamplingConfig c = base.config;
  c.complement = ComplementMode::PlusL;
  const ShotSet out = complement(base, pool, m, c);
  EXPECT_EQ(out.shots.size(), 128u);
  EXPECT_EQ(out.count(Origin::ComplementTarget), 16u);
  EXPECT_EQ(out.count(Origin::ComplementSlur), 16u);
  EXPECT_EQ(out.shortfall, 0u);
  EXPECT_EQ(out.name(), "Random96+l");
}

TEST(Complement, PlusRDrawsUnrestricted) {
  const auto pool = complement_pool(60, 60, 100);
  const ShotSet base = base_of(pool, 96);
  SamplingConfig c = base.config;
  c.complement = ComplementMode::PlusR;
  const ShotSet out = complement(base, pool, TermMatcher(toy_lexicon()), c);
  EXPECT_EQ(out.shots.size(), 128u);
  EXPECT_EQ(out.count(Origin::ComplementRandom), 32u);
}

TEST(Complement, ShortfallWhenSlursRunOut) {
  auto pool = complement_pool(30, 5, 10);
  const std::vector<Example> base_pool(pool.end() - 10, pool.end());
  const ShotSet base = sample_random(base_pool, cfg(SamplingMethod::Random, 10, 0));
  SamplingConfig c = base.config;
  c.complement = ComplementMode::PlusL;
  const ShotSet out = complement(base, pool, TermMatcher(toy_lexicon()), c);
  EXPECT_EQ(out.count(Origin::ComplementTarget), 16u);
  EXPECT_EQ(out.count(Origin::ComplementSlur), 5u);
  EXPECT_EQ(out.shortfall, 11u);
  EXPECT_EQ(out.shots.size(), 31u);
}

TEST(Complement, ExampleBearingBothUsedOnce) {
  std::vector<Example> pool;
  for (int i = 0; i < 20; ++i) pool.push_back(ex("b" + std::to_string(i), "beides"));
  const ShotSet base = sample_random(std::vector<Example>{ex("x", "heute")}, cfg(SamplingMethod::Random, 1, 0));
  pool.push_back(ex("x", "heute"));
  SamplingConfig c = base.config;
  c.complement = ComplementMode::PlusL;
  const ShotSet out = complement(base, pool, TermMatcher(toy_lexicon()), c);
  EXPECT_EQ(out.count(Origin::ComplementTarget), 16u);
  EXPECT_EQ(out.count(Origin::ComplementSlur), 4u);
  EXPECT_EQ(out.shortfall, 12u);
  const auto ids = out.ids();
  EXPECT_EQ(std::set<std::string>(ids.begin(), ids.end()).size(), ids.size());
}

TEST(SamplerProperty, DeterministicAcrossRunsAndPermutations) {
  std::mt19937_64 gen(31);
  const TermMatcher m(toy_lexicon());
  for (int round = 0; round < 20; ++round) {
    const std::uint64_t seed = gen();
    auto pool = random_pool(gen, 60, 30);
    const auto r1 = sample_random(pool, cfg(SamplingMethod::Random, 20, seed)).ids();
    const auto l1 = sample_lexicon_first(pool, m, cfg(SamplingMethod::Lexicon, 20, seed)).ids();
    EXPECT_EQ(sample_random(pool, cfg(SamplingMethod::Random, 20, seed)).ids(), r1);
    std::shuffle(pool.begin(), pool.end(), gen);
    EXPECT_EQ(sample_random(pool, cfg(SamplingMethod::Random, 20, seed)).ids(), r1);
    EXPECT_EQ(sample_lexicon_first(pool, m, cfg(SamplingMethod::Lexicon, 20, seed)).ids(), l1);
  }
}

TEST(SamplerProperty, SupersetMonotonicity) {
  std::mt19937_64 gen(32);
  const TermMatcher m(toy_lexicon());
  for (int round = 0; round < 100; ++round) {
    const auto pool = random_pool(gen, 30 + gen() % 60, static_cast<unsigned>(gen() % 50));
    const auto bearing = bearing_ids(pool, m);
    const std::size_t size = bearing.size() + gen() % (pool.size() - bearing.size() + 1);
    if (size == 0) continue;
    const auto ids = sample_lexicon_first(pool, m, cfg(SamplingMethod::Lexicon, size, gen())).ids();
    for (const auto& id : bearing) EXPECT_TRUE(std::binary_search(ids.begin(), ids.end(), id, id_less));
  }
}

TEST(SamplerProperty, CoverageDominanceOverSeeds) {
  const Lexicon lex = load_lexicon_file(kData + "/sampling_lexicon.tsv");
  for (const char* lang : {"de", "hi"}) {
    const auto pool = load_corpus_file(kData + "/hasoc_" + std::string(lang) + "_128.tsv");
    const TermMatcher m(lex, MatchScope{{lang}, {}});
    for (std::size_t size : {32u, 64u, 96u}) {
      double lex_s = 0, lex_t = 0, rnd_s = 0, rnd_t = 0;
      for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto l = distribution_report(
            std::vector<ShotSet>{sample_lexicon_first(pool, m, cfg(SamplingMethod::Lexicon, size, seed))}, m)[0];
        const auto r = distribution_report(
            std::vector<ShotSet>{sample_random(pool, cfg(SamplingMethod::Random, size, seed))}, m)[0];
        lex_s += static_cast<double>(l.slurs());
        lex_t += static_cast<double>(l.targets());
        rnd_s += static_cast<double>(r.slurs());
        rnd_t += static_cast<double>(r.targets());
      }
      EXPECT_GE(lex_s, rnd_s) << lang << size;
      EXPECT_GE(lex_t, rnd_t) << lang << size;
    }
  }
}

TEST(SamplerProperty, ComplementNeverDuplicatesBase) {
  std::mt19937_64 gen(33);
  const TermMatcher m(toy_lexicon());
  for (int round = 0; round < 50; ++round) {
    const auto pool = random_pool(gen, 120, 40);
    const ShotSet base = sample_lexicon_first(pool, m, cfg(SamplingMethod::Lexicon, 40, gen()));
    for (ComplementMode mode : {ComplementMode::PlusL, ComplementMode::PlusR}) {
      SamplingConfig c = base.config;
      c.complement = mode;
      c.seed = gen();
      const ShotSet out = complement(base, pool, m, c);
      auto ids = out.ids();
      EXPECT_EQ(std::set<std::string>(ids.begin(), ids.end()).size(), ids.size());
      EXPECT_EQ(out.shots.size() + out.shortfall, base.shots.size() + 32);
      for (const Shot& s : base.shots) EXPECT_TRUE(std::binary_search(ids.begin(), ids.end(), s.example.id, id_less));
    }
  }
}

TEST(SampleWords, SeededSortedDistinct) {
  const std::vector<std::string> words{"c", "a", "b", "a", "d", "e"};
  const auto one = sample_words(words, 3, 4);
  EXPECT_EQ(one, sample_words(words, 3, 4));
  EXPECT_TRUE(std::is_sorted(one.begin(), one.end()));
  EXPECT_EQ(std::set<std::string>(one.begin(), one.end()).size(), 3u);
  EXPECT_THROW(sample_words(words, 6, 0), DataError);
}

TEST(ShotSetJsonl, RoundTrip) {
  std::mt19937_64 gen(34);
  const TermMatcher m(toy_lexicon());
  const auto pool = random_pool(gen, 100, 30);
  const ShotSet base = sample_lexicon_first(pool, m, cfg(SamplingMethod::Lexicon, 40, 5));
  SamplingConfig c = base.config;
  c.complement = ComplementMode::PlusL;
  const ShotSet out = complement(base, pool, m, c);
  for (const ShotSet* set : {&base, &out}) {
    const std::string text = to_jsonl(*set);
    const ShotSet back = parse_shot_set(text);
    EXPECT_EQ(to_jsonl(back), text);
    EXPECT_EQ(back.name(), set->name());
  }
  EXPECT_EQ(to_jsonl(base).substr(0, 57), R"({"method":"Lexicon","size":40,"seed":5,"complement":null})");
}

TEST(ShotSetJsonl, ErrorsCarryLines) {
  try {
    parse_shot_set("{\"method\":\"Random\",\"size\":1,\"seed\":0,\"complement\":null}\n{\"id\":\"1\"}\n", "s.jsonl");
    FAIL();
  } catch (const DataError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_shot_set(""), DataError);
}

}  // namespace
}  // namespace lexishot

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lexishot/cli.hpp"
#include "lexishot/io.hpp"

namespace lexishot {
namespace {

namespace fs = std::filesystem;
const std::string kData = LEXISHOT_TEST_DATA;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("lexishot_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(path(name), std::ios::binary) << content;
    return path(name);
  }

  fs::path dir_;
};

TEST_F(CliTest, NoSubcommandIsUsageError) { EXPECT_EQ(run({}).code, 2); }

TEST_F(CliTest, UnknownFlagIsUsageErrorNamingFlag) {
  const Result r = run({"lexicon-stats", "--lexicon", kData + "/table2_lexicon.tsv", "--bogus"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--bogus"), std::string::npos);
}

TEST_F(CliTest, MissingInputIsUsageError) {
  EXPECT_EQ(run({"lexicon-stats", "--lexicon", path("nope.tsv")}).code, 2);
}

TEST_F(CliTest, DataErrorReportsFileAndLine) {
  const std::string lex = write("bad.tsv", "a\tBrazil\tpt\tSlur\t\nb\tBrazil\tpt\tBogus\t\n");
  const Result r = run({"lexicon-stats", "--lexicon", lex});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find(lex + ":2"), std::string::npos) << r.err;
}

TEST_F(CliTest, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST_F(CliTest, LexiconStatsTextAndJson) {
  const Result t = run({"lexicon-stats", "--lexicon", kData + "/table2_lexicon.tsv"});
  EXPECT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("Total               45       49     46    113"), std::string::npos) << t.out;
  const Result j = run({"lexicon-stats", "--lexicon", kData + "/table2_lexicon.tsv", "--format", "json"});
  EXPECT_NE(j.out.find("\"total\": 253"), std::string::npos);
  EXPECT_EQ(j.out.find("generated_at"), std::string::npos);
  const Result stamped =
      run({"--timestamp", "2024-01-01", "lexicon-stats", "--lexicon", kData + "/table2_lexicon.tsv", "--format", "json"});
  EXPECT_NE(stamped.out.find("\"generated_at\": \"2024-01-01\""), std::string::npos);
}

TEST_F(CliTest, LexiconValidateReportsDiscrepancies) {
  const Result r = run({"lexicon-validate", "--lexicon", kData + "/table2_lexicon.tsv", "--declared",
                        kData + "/table2_declared.tsv"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("Germany: computed 49, declared 50"), std::string::npos);
  EXPECT_NE(r.out.find("India: computed 46, declared 50"), std::string::npos);
  EXPECT_NE(r.out.find("Kenya: computed 113, declared 116"), std::string::npos);
  EXPECT_EQ(run({"lexicon-validate", "--lexicon", kData + "/table2_lexicon.tsv"}).code, 0);
}

TEST_F(CliTest, MatchOutputStableAcrossJobs) {
  const std::vector<std::string> base{"match", "--lexicon", kData + "/sampling_lexicon.tsv", "--corpus",
                                      kData + "/hasoc_de_128.tsv"};
  const Result one = run(base);
  auto with_jobs = base;
  with_jobs.insert(with_jobs.end(), {"--jobs", "7"});
  const Result seven = run(with_jobs);
  EXPECT_EQ(one.code, 0);
  EXPECT_EQ(one.out, seven.out);
  EXPECT_EQ(std::count(one.out.begin(), one.out.end(), '\n'), 128);
  EXPECT_NE(one.out.find("\"has_slur\":true"), std::string::npos);
}

TEST_F(CliTest, SampleWritesHeaderAndIsByteIdentical) {
  const std::vector<std::string> args{"sample", "--method", "lexicon", "--size", "96", "--seed", "7", "--lexicon",
                                      kData + "/sampling_lexicon.tsv", "--corpus", kData + "/hasoc_de_128.tsv", "-o",
                                      path("shots.jsonl")};
  ASSERT_EQ(run(args).code, 0);
  const std::string first = io::read_file(path("shots.jsonl"));
  EXPECT_EQ(first.substr(0, first.find('\n')), R"({"method":"Lexicon","size":96,"seed":7,"complement":null})");
  ASSERT_EQ(run(args).code, 0);
  EXPECT_EQ(io::read_file(path("shots.jsonl")), first);
}

TEST_F(CliTest, SampleSeedsWritesOneFilePerSeed) {
  const Result r = run({"sample", "--method", "random", "--size", "32", "--seeds", "1,2,3", "--corpus",
                        kData + "/hasoc_de_128.tsv", "--lexicon", kData + "/sampling_lexicon.tsv", "-o",
                        path("r_{seed}.jsonl")});
  EXPECT_EQ(r.code, 0) << r.err;
  for (const char* s : {"1", "2", "3"}) EXPECT_TRUE(fs::exists(path(std::string("r_") + s + ".jsonl")));
  EXPECT_NE(r.out.find("mean over 3 seeds"), std::string::npos);
  EXPECT_EQ(run({"sample", "--method", "random", "--size", "32", "--seeds", "1,x", "--corpus",
                 kData + "/hasoc_de_128.tsv", "-o", path("r_{seed}.jsonl")})
                .code,
            2);
}

TEST_F(CliTest, ComplementAndDistribution) {
  ASSERT_EQ(run({"sample", "--method", "random", "--size", "32", "--seed", "4", "--corpus",
                 kData + "/hasoc_de_128.tsv", "-o", path("base.jsonl")})
                .code,
            0);
  const Result c = run({"complement", "--base", path("base.jsonl"), "--corpus", kData + "/hasoc_de_128.tsv",
                        "--lexicon", kData + "/sampling_lexicon.tsv", "--mode", "r", "-o", path("plus.jsonl")});
  EXPECT_EQ(c.code, 0) << c.err;
  const Result d = run({"distribution", "--lexicon", kData + "/sampling_lexicon.tsv", "--corpus",
                        kData + "/hasoc_de_128.tsv", "--set", path("base.jsonl"), "--set", "Plus=" + path("plus.jsonl")});
  EXPECT_EQ(d.code, 0) << d.err;
  EXPECT_NE(d.out.find("All128     128  12  10"), std::string::npos) << d.out;
  EXPECT_NE(d.out.find("Random32 "), std::string::npos) << d.out;
  EXPECT_NE(d.out.find("Plus "), std::string::npos) << d.out;
  EXPECT_EQ(d.out.find("Random32+r"), std::string::npos) << d.out;
}

TEST_F(CliTest, AnnotateWordsSummary) {
  const Result r = run({"annotate-words", "--country", "Germany", "--lexicon", kData + "/table4_lexicon.tsv",
                        "--words", kData + "/top10_germany.txt"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("Germany: 1 slur, 4 targets", 0), 0u) << r.out;
}

TEST_F(CliTest, RepShiftWithRandomGroup) {
  const Result r = run({"rep-shift", "--before", kData + "/emb_before.txt", "--after", kData + "/emb_after.txt",
                        "--group", "Slurs=" + kData + "/group_slurs.txt", "--group",
                        "Stop=" + kData + "/group_stop.txt", "--random-vocab", kData + "/random_vocab.txt",
                        "--random-count", "3", "--seed", "1", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"group\": \"Random\""), std::string::npos);
  EXPECT_NE(r.out.find("\"layer\": \"8\""), std::string::npos);
}

TEST_F(CliTest, EvalPerfectPredictions) {
  const std::string p = write("p.tsv", "id\tgold\tpred\n1\tHOF\tHOF\n2\tNOT\tNOT\n");
  const Result r = run({"eval", "--labels", "HOF,NOT", "--pred", p, "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"f1\": 1.0"), std::string::npos) << r.out;
}

TEST_F(CliTest, EvalAggregatesRepeatedSets) {
  const std::string a = write("a.tsv", "1\tHOF\tHOF\n2\tNOT\tNOT\n");
  const std::string b = write("b.tsv", "1\tHOF\tNOT\n2\tNOT\tNOT\n");
  const Result r = run({"eval", "--pred", "Lexicon96@de=" + a, "--pred", "Lexicon96@de=" + b});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Lexicon96"), std::string::npos);
  EXPECT_NE(r.out.find(" ("), std::string::npos) << r.out;
  const std::string bad = write("bad.tsv", "1\tHOF\tHOF\n2\tNOT\tMAYBE\n");
  const Result e = run({"eval", "--pred", bad});
  EXPECT_EQ(e.code, 1);
  EXPECT_NE(e.err.find(bad + ":2"), std::string::npos) << e.err;
}

TEST_F(CliTest, EvalShotsAblationTable) {
  const Result r = run({"eval-shots", "--shots", "Lexicon@de=" + kData + "/ablation/de_lexicon.jsonl", "--shots",
                        "Random@de=" + kData + "/ablation/de_random.jsonl", "--pred",
                        "de=" + kData + "/ablation/de_predictions.tsv"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Lexicon  0.61"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("Random   0.56"), std::string::npos) << r.out;
}

TEST_F(CliTest, ConfigFileSuppliesFlagsAndFlagsWin) {
  const std::string cfg = write("run.cfg",
                                "# experiment\nlexicon = " + kData + "/table4_lexicon.tsv\ncountry = Brazil\nwords = " +
                                    kData + "/top10_germany.txt\n");
  const Result r = run({"annotate-words", "--config", cfg, "--country", "Germany"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("Germany: 1 slur, 4 targets", 0), 0u) << r.out;
  EXPECT_EQ(run({"annotate-words", "--config", write("bad.cfg", "no equals\n")}).code, 2);
}

TEST_F(CliTest, DataDirectoryFallback) {
  ::setenv("LEXISHOT_DATA", kData.c_str(), 1);
  const Result r = run({"annotate-words", "--country", "India", "--lexicon", "table4_lexicon.tsv", "--words",
                        "top10_india.txt"});
  ::unsetenv("LEXISHOT_DATA");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("India: 2 slurs, 5 targets", 0), 0u) << r.out;
}

}  // namespace
}  // namespace lexishot

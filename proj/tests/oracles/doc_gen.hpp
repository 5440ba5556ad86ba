#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lexishot/lexicon.hpp"

namespace oracle {

// Random documents mixing lexicon surfaces (in random case variants) with
// filler words and assorted separators.
class DocGenerator {
 public:
  DocGenerator(const lexishot::Lexicon& lexicon, std::vector<std::string> filler, std::uint64_t seed);

  std::string next(std::size_t max_pieces = 12);

 private:
  std::string variant(const std::string& word);

  std::vector<std::string> surfaces_;
  std::vector<std::string> filler_;
  std::mt19937_64 rng_;
};

}  // namespace oracle

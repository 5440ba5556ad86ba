#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "lexishot/sampler.hpp"
#include "lexishot/text_match.hpp"

namespace lexishot {

// ShotSet JSON Lines. The first line is the header
//   {"method":…,"size":…,"seed":…,"complement":…}
// followed, for complemented sets, by "complement_size", "complement_seed"
// and "shortfall". Each further line is one shot:
//   {"id":…,"label":…,"text":…,"origin":…,"matched_terms":[…],"language":…}
std::string to_jsonl(const ShotSet& set);
ShotSet parse_shot_set(std::string_view content, const std::string& source = {});
ShotSet load_shot_set_file(const std::filesystem::path& path);

// One match-report line:
//   {"id":…,"matches":[{"term":…,"types":[…],"start":…,"end":…}],"has_slur":…,"has_target":…,"has_neutral":…}
std::string to_json_line(const MatchReport& report);

}  // namespace lexishot

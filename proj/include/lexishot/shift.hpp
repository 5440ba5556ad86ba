#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexishot/embedding.hpp"

namespace lexishot {

enum class ShiftMetric { Cosine, Distance };

std::string_view to_string(ShiftMetric metric);
std::optional<ShiftMetric> parse_shift_metric(std::string_view text);

struct TermShift {
  std::string term;
  double value = 0;
};

struct GroupShift {
  std::string name;
  double mean = 0;
  std::vector<TermShift> terms;  // sorted by term
};

struct ShiftReport {
  ShiftMetric metric = ShiftMetric::Cosine;
  std::vector<GroupShift> groups;  // sorted by name
};

// Per-term similarity (or distance) between the before and after vectors and
// the arithmetic mean per group. Groups must be non-empty and pairwise
// disjoint; duplicate members within a group collapse. Throws DataError
// listing every term absent from either table. `jobs` > 1 spreads the
// per-term work across threads without affecting the result.
ShiftReport shift_report(const EmbeddingTable& before, const EmbeddingTable& after,
                         const std::map<std::string, std::vector<std::string>>& groups,
                         ShiftMetric metric = ShiftMetric::Cosine, unsigned jobs = 1);

}  // namespace lexishot

#include "lexishot/shift.hpp"

#include <algorithm>
#include <set>
#include <thread>

namespace lexishot {

std::string_view to_string(ShiftMetric metric) { return metric == ShiftMetric::Cosine ? "cosine" : "distance"; }

std::optional<ShiftMetric> parse_shift_metric(std::string_view text) {
  if (text == "cosine") return ShiftMetric::Cosine;
  if (text == "distance") return ShiftMetric::Distance;
  return std::nullopt;
}

ShiftReport shift_report(const EmbeddingTable& before, const EmbeddingTable& after,
                         const std::map<std::string, std::vector<std::string>>& groups, ShiftMetric metric,
                         unsigned jobs) {
  if (before.dimension() != after.dimension()) {
    throw DataError("embedding dimensions differ: " + std::to_string(before.dimension()) + " vs " +
                    std::to_string(after.dimension()));
  }

  ShiftReport report;
  report.metric = metric;
  std::map<std::string, std::string> owner;
  std::vector<std::string> missing;
  for (const auto& [name, members] : groups) {
    std::set<std::string> unique(members.begin(), members.end());
    if (unique.empty()) throw DataError("group '" + name + "' is empty");
    GroupShift g;
    g.name = name;
    for (const std::string& term : unique) {
      auto [it, inserted] = owner.emplace(term, name);
      if (!inserted) throw DataError("term '" + term + "' is in both groups '" + it->second + "' and '" + name + "'");
      if (!before.find(term) || !after.find(term)) missing.push_back(term);
      g.terms.push_back({term, 0.0});
    }
    report.groups.push_back(std::move(g));
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& t : missing) list += (list.empty() ? "" : ", ") + t;
    throw DataError("terms missing from an embedding table: " + list);
  }

  std::vector<TermShift*> work;
  for (auto& g : report.groups) {
    for (auto& t : g.terms) work.push_back(&t);
  }
  std::vector<std::string> errors(work.size());
  auto compute = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto& u = *before.find(work[i]->term);
      const auto& v = *after.find(work[i]->term);
      try {
        work[i]->value = metric == ShiftMetric::Cosine ? cosine(u, v) : cosine_distance(u, v);
      } catch (const std::domain_error&) {
        errors[i] = work[i]->term;
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(work.size(), 1));
  if (threads == 1) {
    compute(0, work.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (work.size() + threads - 1) / threads;
    for (std::size_t b = 0; b < work.size(); b += chunk) pool.emplace_back(compute, b, std::min(b + chunk, work.size()));
  }
  std::string zero;
  for (const auto& e : errors) {
    if (!e.empty()) zero += (zero.empty() ? "" : ", ") + e;
  }
  if (!zero.empty()) throw DataError("zero vector, similarity undefined for: " + zero);

  for (auto& g : report.groups) {
    double sum = 0;
    for (const auto& t : g.terms) sum += t.value;
    g.mean = sum / static_cast<double>(g.terms.size());
  }
  return report;
}

}  // namespace lexishot

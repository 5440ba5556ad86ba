#include "lexishot/shotset_io.hpp"

#include <unordered_set>

#include <json.hpp>

#include "lexishot/error.hpp"
#include "lexishot/io.hpp"

namespace lexishot {
namespace {

using ojson = nlohmann::ordered_json;

template <typename T>
T required(const ojson& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) throw DataError(std::string("missing key '") + key + "'", line);
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw DataError(std::string("wrong type for key '") + key + "'", line);
  }
}

}  // namespace

std::string to_jsonl(const ShotSet& set) {
  ojson header;
  header["method"] = to_string(set.config.method);
  header["size"] = set.config.size;
  header["seed"] = set.config.seed;
  if (set.config.complement) {
    header["complement"] = to_string(*set.config.complement);
    header["complement_size"] = set.config.complement_size;
    if (set.complement_seed) header["complement_seed"] = *set.complement_seed;
    header["shortfall"] = set.shortfall;
  } else {
    header["complement"] = nullptr;
  }
  std::string out = header.dump() + '\n';
  for (const Shot& s : set.shots) {
    ojson line;
    line["id"] = s.example.id;
    line["label"] = to_string(s.example.label);
    line["text"] = s.example.text;
    line["origin"] = to_string(s.origin);
    line["matched_terms"] = s.matched_terms;
    line["language"] = s.example.language;
    out += line.dump() + '\n';
  }
  return out;
}

ShotSet parse_shot_set(std::string_view content, const std::string& source) {
  ShotSet set;
  bool have_header = false;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  try {
    for (std::string_view raw : io::split_lines(content)) {
      ++line_no;
      if (raw.empty()) continue;
      ojson obj;
      try {
        obj = ojson::parse(raw);
      } catch (const nlohmann::json::parse_error& e) {
        throw DataError(std::string("invalid JSON: ") + e.what(), line_no);
      }
      if (!obj.is_object()) throw DataError("expected a JSON object", line_no);

      if (!have_header) {
        have_header = true;
        auto method = parse_sampling_method(required<std::string>(obj, "method", line_no));
        if (!method) throw DataError("unknown sampling method", line_no);
        set.config.method = *method;
        set.config.size = required<std::size_t>(obj, "size", line_no);
        set.config.seed = required<std::uint64_t>(obj, "seed", line_no);
        auto comp = obj.find("complement");
        if (comp != obj.end() && !comp->is_null()) {
          if (!comp->is_string()) throw DataError("wrong type for key 'complement'", line_no);
          auto mode = parse_complement_mode(comp->get<std::string>());
          if (!mode) throw DataError("unknown complement mode", line_no);
          set.config.complement = mode;
          if (obj.contains("complement_size")) set.config.complement_size = required<std::size_t>(obj, "complement_size", line_no);
          if (obj.contains("complement_seed")) set.complement_seed = required<std::uint64_t>(obj, "complement_seed", line_no);
          if (obj.contains("shortfall")) set.shortfall = required<std::size_t>(obj, "shortfall", line_no);
        }
        continue;
      }

      Shot shot;
      shot.example.id = required<std::string>(obj, "id", line_no);
      auto label = parse_label(required<std::string>(obj, "label", line_no));
      if (!label) throw DataError("unknown label", line_no);
      shot.example.label = *label;
      shot.example.text = required<std::string>(obj, "text", line_no);
      auto origin = parse_origin(required<std::string>(obj, "origin", line_no));
      if (!origin) throw DataError("unknown origin", line_no);
      shot.origin = *origin;
      shot.matched_terms = required<std::vector<std::string>>(obj, "matched_terms", line_no);
      if (obj.contains("language")) shot.example.language = required<std::string>(obj, "language", line_no);
      if (!seen.insert(shot.example.id).second) throw DataError("duplicate id '" + shot.example.id + "'", line_no);
      set.shots.push_back(std::move(shot));
    }
    if (!have_header) throw DataError("missing header line");
  } catch (const DataError& e) {
    if (source.empty()) throw;
    throw e.in(source);
  }
  return set;
}

ShotSet load_shot_set_file(const std::filesystem::path& path) {
  return parse_shot_set(io::read_file(path), path.string());
}

std::string to_json_line(const MatchReport& report) {
  ojson obj;
  obj["id"] = report.example_id;
  ojson matches = ojson::array();
  for (const TermMatch& m : report.matches) {
    ojson types = ojson::array();
    for (TermType t : m.term->types.members()) types.push_back(to_string(t));
    ojson jm;
    jm["term"] = m.term->surface;
    jm["types"] = std::move(types);
    jm["start"] = m.start;
    jm["end"] = m.end;
    matches.push_back(std::move(jm));
  }
  obj["matches"] = std::move(matches);
  obj["has_slur"] = report.has_slur;
  obj["has_target"] = report.has_target;
  obj["has_neutral"] = report.has_neutral;
  return obj.dump();
}

}  // namespace lexishot

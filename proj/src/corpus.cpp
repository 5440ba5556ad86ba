#include "lexishot/corpus.hpp"

#include <algorithm>
#include <set>

#include "lexishot/error.hpp"
#include "lexishot/io.hpp"
#include "lexishot/unicode.hpp"

namespace lexishot {

std::string_view to_string(Label label) { return label == Label::Hof ? "HOF" : "NOT"; }

std::optional<Label> parse_label(std::string_view text) {
  if (text == "HOF") return Label::Hof;
  if (text == "NOT") return Label::Not;
  return std::nullopt;
}

std::vector<Example> load_corpus(std::string_view content, const std::string& source) {
  std::vector<Example> out;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  for (std::string_view raw : io::split_lines(content)) {
    ++line_no;
    if (raw.empty()) continue;
    if (!unicode::is_valid_utf8(raw)) throw DataError("invalid UTF-8", line_no, source);
    if (line_no == 1 && raw == "id\tlabel\tlanguage\ttext") continue;

    std::string_view rest = raw;
    std::string_view fields[3];
    for (auto& f : fields) {
      const std::size_t tab = rest.find('\t');
      if (tab == std::string_view::npos) throw DataError("expected 4 tab-separated columns", line_no, source);
      f = rest.substr(0, tab);
      rest.remove_prefix(tab + 1);
    }
    Example ex;
    ex.id = unicode::trim(fields[0]);
    if (ex.id.empty()) throw DataError("empty id", line_no, source);
    auto label = parse_label(unicode::trim(fields[1]));
    if (!label) throw DataError("unknown label '" + std::string(fields[1]) + "' (expected HOF or NOT)", line_no, source);
    ex.label = *label;
    ex.language = unicode::trim(fields[2]);
    ex.text = std::string(rest);
    if (!seen.insert(ex.id).second) throw DataError("duplicate id '" + ex.id + "'", line_no, source);
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<Example> load_corpus_file(const std::filesystem::path& path) {
  return load_corpus(io::read_file(path), path.string());
}

bool id_less(std::string_view a, std::string_view b) {
  auto all_digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  const bool da = all_digits(a);
  const bool db = all_digits(b);
  if (da && db) {
    auto strip = [](std::string_view s) {
      const std::size_t nz = s.find_first_not_of('0');
      return nz == std::string_view::npos ? std::string_view{} : s.substr(nz);
    };
    const std::string_view sa = strip(a);
    const std::string_view sb = strip(b);
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    if (sa != sb) return sa < sb;
    return a < b;
  }
  if (da != db) return da;
  return a < b;
}

}  // namespace lexishot

#include <charconv>
#include <cstdio>

#include "lexishot/embedding.hpp"
#include "lexishot/io.hpp"
#include "lexishot/unicode.hpp"

namespace lexishot {
namespace {

std::string_view trim_ascii(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

EmbeddingTable parse_embedding_table(std::string_view content, const std::string& source) {
  const auto lines = io::split_lines(content);
  std::size_t line_no = 0;
  try {
    // First non-blank line must be the dimension.
    std::size_t i = 0;
    while (i < lines.size() && trim_ascii(lines[i]).empty()) ++i;
    if (i == lines.size()) throw DataError("missing DIM line", 1);
    line_no = i + 1;
    const std::string_view dim_line = trim_ascii(lines[i]);
    if (!dim_line.starts_with("DIM ")) throw DataError("expected 'DIM <d>'", line_no);
    const std::string_view dim_text = trim_ascii(dim_line.substr(4));
    long dim = 0;
    auto [p, ec] = std::from_chars(dim_text.data(), dim_text.data() + dim_text.size(), dim);
    if (ec != std::errc{} || p != dim_text.data() + dim_text.size() || dim <= 0) {
      throw DataError("invalid dimension '" + std::string(dim_text) + "'", line_no);
    }
    EmbeddingTable table(static_cast<Eigen::Index>(dim));

    for (++i; i < lines.size(); ++i) {
      line_no = i + 1;
      const std::string_view raw = lines[i];
      if (trim_ascii(raw).empty()) continue;
      if (!unicode::is_valid_utf8(raw)) throw DataError("invalid UTF-8", line_no);
      if (raw.starts_with("META ")) {
        std::string_view rest = trim_ascii(raw.substr(5));
        const auto sp = rest.find_first_of(" \t");
        if (sp == std::string_view::npos) throw DataError("expected 'META <key> <value>'", line_no);
        table.set_meta(std::string(rest.substr(0, sp)), std::string(trim_ascii(rest.substr(sp + 1))));
        continue;
      }
      const auto tab = raw.find('\t');
      if (tab == std::string_view::npos) throw DataError("expected '<key><TAB><values>'", line_no);
      std::string key = unicode::nfc(raw.substr(0, tab));
      if (key.empty()) throw DataError("empty key", line_no);

      std::vector<double> values;
      values.reserve(static_cast<std::size_t>(dim));
      std::string_view rest = raw.substr(tab + 1);
      while (true) {
        rest = trim_ascii(rest);
        if (rest.empty()) break;
        const auto end = rest.find_first_of(" \t");
        const std::string_view tok = rest.substr(0, end);
        double v = 0;
        auto [q, ec2] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec2 != std::errc{} || q != tok.data() + tok.size()) {
          throw DataError("invalid number '" + std::string(tok) + "'", line_no);
        }
        values.push_back(v);
        if (end == std::string_view::npos) break;
        rest.remove_prefix(end);
      }
      try {
        table.insert(std::move(key), Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())));
      } catch (const DataError& e) {
        throw DataError(e.message(), line_no);
      }
    }
    return table;
  } catch (const DataError& e) {
    if (source.empty()) throw;
    throw e.in(source);
  }
}

EmbeddingTable load_embedding_file(const std::filesystem::path& path) {
  return parse_embedding_table(io::read_file(path), path.string());
}

std::string to_text(const EmbeddingTable& table) {
  std::string out = "DIM " + std::to_string(table.dimension()) + "\n";
  for (const auto& [k, v] : table.meta()) out += "META " + k + " " + v + "\n";
  char buf[32];
  for (const auto& [key, vec] : table.entries()) {
    out += key;
    out += '\t';
    for (Eigen::Index i = 0; i < vec.size(); ++i) {
      if (i) out += ' ';
      std::snprintf(buf, sizeof buf, "%.17g", vec[i]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace lexishot

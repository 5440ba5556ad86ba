#include "lexishot/io.hpp"

#include <fstream>
#include <sstream>

#include "lexishot/error.hpp"
#include "lexishot/unicode.hpp"

namespace lexishot::io {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file", 0, path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string_view> split_lines(std::string_view content) {
  if (content.starts_with("\xEF\xBB\xBF")) content.remove_prefix(3);
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(pos, nl - pos);
    if (line.ends_with('\r')) line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = line.find(sep, pos);
    if (next == std::string_view::npos) {
      parts.push_back(line.substr(pos));
      return parts;
    }
    parts.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
}

std::vector<std::string> read_word_list(std::string_view content) {
  std::vector<std::string> words;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(content)) {
    ++line_no;
    if (!unicode::is_valid_utf8(line)) throw DataError("invalid UTF-8", line_no);
    std::string word = unicode::trim(line);
    if (!word.empty()) words.push_back(unicode::nfc(word));
  }
  return words;
}

}  // namespace lexishot::io

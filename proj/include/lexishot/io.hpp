#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace lexishot::io {

// Whole file as bytes. Throws DataError naming the path when unreadable.
std::string read_file(const std::filesystem::path& path);

// Splits on '\n', dropping a trailing '\r' from each line, a leading UTF-8
// BOM, and the empty segment after a final newline.
std::vector<std::string_view> split_lines(std::string_view content);

std::vector<std::string_view> split(std::string_view line, char sep);

// Plain-text list, one entry per line; blank lines are skipped.
std::vector<std::string> read_word_list(std::string_view content);

}  // namespace lexishot::io

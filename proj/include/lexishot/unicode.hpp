#pragma once

// UTF-8 text primitives backed by ICU: validation, NFC normalization, full
// case folding and default word segmentation. All offsets exposed here count
// Unicode scalar values (code points), not bytes.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lexishot::unicode {

bool is_valid_utf8(std::string_view text);

// Throws DataError on invalid UTF-8.
std::string nfc(std::string_view text);

// Full (not simple) case folding followed by NFC.
std::string fold(std::string_view text);

// Strips leading and trailing White_Space code points.
std::string trim(std::string_view text);

std::size_t length(std::string_view text);

struct WordToken {
  std::string text;
  std::size_t start = 0;  // code points, inclusive
  std::size_t end = 0;    // code points, exclusive
  std::size_t byte_begin = 0;
  std::size_t byte_end = 0;
};

// Word-like segments (letters, numbers, ideographs) under the default Unicode
// word-boundary rules. Whitespace, punctuation and symbols are dropped.
std::vector<WordToken> word_tokens(std::string_view text);

}  // namespace lexishot::unicode

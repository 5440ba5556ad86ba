#include "lexishot/unicode.hpp"

#include <memory>

#include <unicode/brkiter.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "lexishot/error.hpp"

namespace lexishot::unicode {
namespace {

void require_valid(std::string_view text) {
  if (!is_valid_utf8(text)) throw DataError("invalid UTF-8");
}

icu::UnicodeString to_icu(std::string_view text) {
  return icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
}

std::string to_utf8(const icu::UnicodeString& s) {
  std::string out;
  s.toUTF8String(out);
  return out;
}

const icu::Normalizer2& nfc_normalizer() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalizer unavailable");
  return *n;
}

icu::UnicodeString normalize(const icu::UnicodeString& s) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = nfc_normalizer().normalize(s, status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU normalization failed");
  return out;
}

// BreakIterator instances are not thread-safe; one per thread.
icu::BreakIterator& word_breaker() {
  thread_local std::unique_ptr<icu::BreakIterator> it = [] {
    UErrorCode status = U_ZERO_ERROR;
    std::unique_ptr<icu::BreakIterator> b(icu::BreakIterator::createWordInstance(icu::Locale::getRoot(), status));
    if (U_FAILURE(status)) throw std::runtime_error("ICU word break iterator unavailable");
    return b;
  }();
  return *it;
}

}  // namespace

bool is_valid_utf8(std::string_view text) {
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto n = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < n) {
    UChar32 c;
    U8_NEXT(s, i, n, c);
    if (c < 0) return false;
  }
  return true;
}

std::string nfc(std::string_view text) {
  require_valid(text);
  return to_utf8(normalize(to_icu(text)));
}

std::string fold(std::string_view text) {
  require_valid(text);
  icu::UnicodeString s = normalize(to_icu(text));
  s.foldCase(U_FOLD_CASE_DEFAULT);
  return to_utf8(normalize(s));
}

std::string trim(std::string_view text) {
  require_valid(text);
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto n = static_cast<int32_t>(text.size());
  int32_t begin = 0;
  while (begin < n) {
    int32_t next = begin;
    UChar32 c;
    U8_NEXT(s, next, n, c);
    if (!u_isUWhiteSpace(c)) break;
    begin = next;
  }
  int32_t end = n;
  while (end > begin) {
    int32_t prev = end;
    UChar32 c;
    U8_PREV(s, 0, prev, c);
    if (!u_isUWhiteSpace(c)) break;
    end = prev;
  }
  return std::string(text.substr(static_cast<std::size_t>(begin), static_cast<std::size_t>(end - begin)));
}

std::size_t length(std::string_view text) {
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto n = static_cast<int32_t>(text.size());
  std::size_t count = 0;
  int32_t i = 0;
  while (i < n) {
    UChar32 c;
    U8_NEXT(s, i, n, c);
    ++count;
  }
  return count;
}

std::vector<WordToken> word_tokens(std::string_view text) {
  require_valid(text);
  std::vector<WordToken> tokens;
  if (text.empty()) return tokens;

  // Offset tables: UTF-16 unit -> code point index, code point -> byte offset.
  std::vector<std::size_t> u16_to_cp;
  std::vector<std::size_t> cp_to_byte;
  {
    const auto* s = reinterpret_cast<const uint8_t*>(text.data());
    const auto n = static_cast<int32_t>(text.size());
    int32_t i = 0;
    std::size_t cp = 0;
    while (i < n) {
      cp_to_byte.push_back(static_cast<std::size_t>(i));
      UChar32 c;
      U8_NEXT(s, i, n, c);
      u16_to_cp.push_back(cp);
      if (U16_LENGTH(c) == 2) u16_to_cp.push_back(cp);
      ++cp;
    }
    cp_to_byte.push_back(text.size());
    u16_to_cp.push_back(cp);
  }

  const icu::UnicodeString u = to_icu(text);
  icu::BreakIterator& it = word_breaker();
  it.setText(u);
  int32_t start = it.first();
  for (int32_t end = it.next(); end != icu::BreakIterator::DONE; start = end, end = it.next()) {
    if (it.getRuleStatus() < UBRK_WORD_NONE_LIMIT) continue;
    WordToken tok;
    tok.start = u16_to_cp[static_cast<std::size_t>(start)];
    tok.end = u16_to_cp[static_cast<std::size_t>(end)];
    tok.byte_begin = cp_to_byte[tok.start];
    tok.byte_end = cp_to_byte[tok.end];
    tok.text = std::string(text.substr(tok.byte_begin, tok.byte_end - tok.byte_begin));
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

}  // namespace lexishot::unicode

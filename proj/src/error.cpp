#include "lexishot/error.hpp"

#include <utility>

namespace lexishot {
namespace {

std::string format(const std::string& message, std::size_t line, const std::string& source) {
  std::string out;
  if (!source.empty()) out += source + ":";
  if (line != 0) out += std::to_string(line) + ":";
  if (!out.empty()) out += " ";
  return out + message;
}

}  // namespace

DataError::DataError(const std::string& message, std::size_t line, std::string source)
    : std::runtime_error(format(message, line, source)),
      message_(message),
      line_(line),
      source_(std::move(source)) {}

DataError DataError::in(std::string source) const { return DataError(message_, line_, std::move(source)); }

}  // namespace lexishot

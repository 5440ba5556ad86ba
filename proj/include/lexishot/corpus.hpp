#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexishot {

// Binary label of the training corpus: hateful/offensive or not.
enum class Label { Hof, Not };

std::string_view to_string(Label label);
std::optional<Label> parse_label(std::string_view text);

struct Example {
  std::string id;
  Label label = Label::Not;
  std::string language;
  std::string text;

  friend bool operator==(const Example&, const Example&) = default;
};

// Corpus TSV: id<TAB>label<TAB>language<TAB>text, label in {HOF, NOT}.
// Text may itself contain tabs. An optional "id\tlabel\tlanguage\ttext" header
// row and blank lines are skipped. Duplicate ids are an error.
std::vector<Example> load_corpus(std::string_view content, const std::string& source = {});
std::vector<Example> load_corpus_file(const std::filesystem::path& path);

// Ordering of example ids: two all-digit ids compare numerically, anything
// else compares bytewise, with digit-only ids first.
bool id_less(std::string_view a, std::string_view b);

}  // namespace lexishot

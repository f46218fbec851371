#ifndef MODWAVE_DSL_CORPUS_H_
#define MODWAVE_DSL_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace modwave::dsl {

// One row of a formula corpus file (CSV, header `id,name,formula`).
struct CorpusEntry {
  std::string id;
  std::string name;
  std::string formula;
  std::size_t line = 0;  // 1-based physical line of the record
};

// Throws csv::CsvError (with line number) on malformed rows and
// std::runtime_error when the file cannot be opened.
std::vector<CorpusEntry> read_corpus(std::istream& in);
std::vector<CorpusEntry> read_corpus(const std::filesystem::path& path);

void write_corpus(std::ostream& out, const std::vector<CorpusEntry>& entries);

const CorpusEntry* find_entry(const std::vector<CorpusEntry>& entries, std::string_view id);

}  // namespace modwave::dsl

#endif  // MODWAVE_DSL_CORPUS_H_

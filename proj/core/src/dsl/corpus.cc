#include "modwave/dsl/corpus.h"

#include <fstream>
#include <set>
#include <stdexcept>

#include "modwave/csv.h"

namespace modwave::dsl {

std::vector<CorpusEntry> read_corpus(std::istream& in) {
  std::size_t line = 0;
  auto header = csv::read_record(in, line);
  if (!header) throw csv::CsvError(1, "empty corpus file");
  if (*header != std::vector<std::string>{"id", "name", "formula"}) {
    throw csv::CsvError(line, "header must be exactly id,name,formula");
  }
  std::vector<CorpusEntry> entries;
  std::set<std::string> seen;
  while (true) {
    const std::size_t start = line + 1;
    auto record = csv::read_record(in, line);
    if (!record) break;
    if (record->size() == 1 && record->front().empty()) continue;
    if (record->size() != 3) {
      throw csv::CsvError(start, "expected 3 fields, found " + std::to_string(record->size()));
    }
    if ((*record)[0].empty()) throw csv::CsvError(start, "empty id");
    if (!seen.insert((*record)[0]).second) {
      throw csv::CsvError(start, "duplicate id '" + (*record)[0] + "'");
    }
    entries.push_back({(*record)[0], (*record)[1], (*record)[2], start});
  }
  return entries;
}

std::vector<CorpusEntry> read_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file '" + path.string() + "'");
  return read_corpus(in);
}

void write_corpus(std::ostream& out, const std::vector<CorpusEntry>& entries) {
  out << "id,name,formula\n";
  for (const auto& e : entries) out << csv::join({e.id, e.name, e.formula}) << '\n';
}

const CorpusEntry* find_entry(const std::vector<CorpusEntry>& entries, std::string_view id) {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

}  // namespace modwave::dsl

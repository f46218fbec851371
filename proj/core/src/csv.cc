#include "modwave/csv.h"

namespace modwave::csv {

CsvError::CsvError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

std::optional<std::vector<std::string>> read_record(std::istream& in, std::size_t& line) {
  std::string physical;
  if (!std::getline(in, physical)) return std::nullopt;
  ++line;
  const std::size_t first_line = line;

  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool field_was_quoted = false;
  std::size_t i = 0;
  while (true) {
    if (i >= physical.size()) {
      if (quoted) {
        // Quoted field continues on the next physical line.
        if (!std::getline(in, physical)) {
          throw CsvError(first_line, "unterminated quoted field");
        }
        ++line;
        field += '\n';
        i = 0;
        continue;
      }
      break;
    }
    const char c = physical[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < physical.size() && physical[i + 1] == '"') {
          field += '"';
          i += 2;
          continue;
        }
        quoted = false;
        ++i;
        continue;
      }
      field += c;
      ++i;
      continue;
    }
    if (c == '"') {
      if (!field.empty() || field_was_quoted) {
        throw CsvError(line, "stray quote inside unquoted field");
      }
      quoted = true;
      field_was_quoted = true;
      ++i;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      field_was_quoted = false;
      ++i;
    } else if (c == '\r' && i + 1 == physical.size()) {
      ++i;
    } else {
      if (field_was_quoted) throw CsvError(line, "text after closing quote");
      field += c;
      ++i;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += escape(fields[i]);
  }
  return out;
}

}  // namespace modwave::csv

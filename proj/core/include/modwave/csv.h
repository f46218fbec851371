#ifndef MODWAVE_CSV_H_
#define MODWAVE_CSV_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace modwave::csv {

class CsvError : public std::runtime_error {
 public:
  CsvError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Reads one RFC 4180 record (quoted fields may contain commas, doubled
// quotes and newlines). Returns nullopt at end of input. `line` is advanced
// past every physical line consumed.
std::optional<std::vector<std::string>> read_record(std::istream& in, std::size_t& line);

// Quotes a field when it contains a comma, quote or line break.
std::string escape(std::string_view field);

std::string join(const std::vector<std::string>& fields);

}  // namespace modwave::csv

#endif  // MODWAVE_CSV_H_

#include "csv.hpp"

#include <ostream>

namespace fockdecay::cli {

CsvBuffer::CsvBuffer(std::string metadata, std::vector<std::string> columns)
    : text_(std::move(metadata)) {
  text_ += '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) text_ += ',';
    text_ += columns[i];
  }
  text_ += '\n';
}

void CsvBuffer::add_row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) text_ += ',';
    text_ += fields[i];
  }
  text_ += '\n';
  ++rows_;
}

bool CsvBuffer::flush(const std::string& path, std::ostream& fallback, std::ostream& err) const {
  if (path.empty() || path == "-") {
    fallback << text_;
    return static_cast<bool>(fallback);
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open " << path << " for writing\n";
    return false;
  }
  file << text_;
  if (!file) {
    err << "error: write to " << path << " failed\n";
    return false;
  }
  return true;
}

}  // namespace fockdecay::cli

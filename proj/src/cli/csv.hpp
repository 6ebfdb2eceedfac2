#pragma once

#include <fstream>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace fockdecay::cli {

/// Collects CSV text in memory and writes it in one go, to a file or to the
/// fallback stream when no path is given.
class CsvBuffer {
 public:
  CsvBuffer(std::string metadata, std::vector<std::string> columns);

  void add_row(const std::vector<std::string>& fields);
  std::size_t rows() const { return rows_; }

  /// Returns false (after reporting on err) when the file cannot be written.
  bool flush(const std::string& path, std::ostream& fallback, std::ostream& err) const;

 private:
  std::string text_;
  std::size_t rows_ = 0;
};

}  // namespace fockdecay::cli

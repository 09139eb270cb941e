#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace puc::cli {

// Comma-separated, optional double-quote quoting, first row is the header.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // each padded to header.size()
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::filesystem::path& path);

void write_csv(std::ostream& out, const CsvTable& table);

}  // namespace puc::cli

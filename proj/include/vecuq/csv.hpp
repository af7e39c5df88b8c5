#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vecuq/types.hpp"

namespace vecuq {

// Numeric CSV with a header row. values may have zero rows.
struct CsvTable {
    std::vector<std::string> header;
    Matrix values;

    // Index of a named column, or -1.
    long column_index(const std::string& name) const;
};

// Errors carry the file name and the 1-based line number of the problem.
CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(const std::string& text, const std::string& source_name);

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header, const Matrix& values);
std::string to_csv(const std::vector<std::string>& header, const Matrix& values);

// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

}  // namespace vecuq

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace amsim::experiment {

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

std::vector<std::string> split_csv_line(std::string_view line);

/// Rows of a comma-separated file, header included. Blank lines are skipped.
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path);

/// Writes `contents` to `<path>.tmp` and renames it over `path`, so readers
/// never see a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace amsim::experiment

#pragma once

#include "json.hpp"

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace casimir::cli {

using Cell = std::variant<double, bool, long, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

/// Scientific notation with 17 significant digits, so every double
/// round-trips and identical values print identically.
std::string format_number(double x);

/// RFC 4180: CRLF line ends, fields quoted when they hold a comma, quote,
/// CR or LF, quotes doubled.
std::string to_csv(const Table& t);

/// Inverse of to_csv at the text level (quoted fields, doubled quotes).
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

/// Writes through a temporary file in the same directory and renames it into
/// place. Throws std::runtime_error on any I/O failure.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Writes both files only after both temporaries are complete.
void write_outputs(const std::filesystem::path& dir, const std::string& stem, const Table& table,
                   const nlohmann::json& sidecar);

} // namespace casimir::cli

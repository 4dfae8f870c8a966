#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace bhp {

// Shortest round-trip decimal, '.' separator regardless of locale.
std::string format_double(double value);

// Strict full-string parse; throws std::invalid_argument on garbage.
double parse_double(std::string_view text);

std::string sha256_hex(std::string_view data);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

// Leading comment line carried by every CSV this library writes.
std::string config_hash_line(std::string_view config_hash);

// Writes `# config_hash=...`, the header, then one row per entry.
std::string format_csv(std::string_view config_hash, std::string_view header,
                       const std::vector<std::vector<double>>& rows);

}  // namespace bhp

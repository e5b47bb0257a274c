#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace binomials {

std::string_view trim(std::string_view s);
std::string to_lower_ascii(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char delim);

/// Reads a whole file; throws IoError when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Writes `content` to `path`, creating parent directories.
void write_file(const std::filesystem::path& path, std::string_view content);

/// Non-comment, non-blank lines of a config-style text file (`#` starts a comment).
std::vector<std::string> read_config_lines(const std::filesystem::path& path);

/// Fixed six-decimal rendering used by every CSV writer.
std::string format_real(double value);
/// As format_real, but renders `null` for an empty optional or a NaN.
std::string format_optional(const std::optional<double>& value);

/// RFC 4180 quoting when the field contains a comma, quote, or newline.
std::string csv_field(std::string_view field);

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

std::optional<long long> parse_integer(std::string_view s);
std::optional<double> parse_real(std::string_view s);

}  // namespace binomials

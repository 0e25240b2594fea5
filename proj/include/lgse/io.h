#ifndef LGSE_IO_H_
#define LGSE_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace lgse::io {

// Whole-file read. Throws IoError when the file cannot be opened.
std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temp file and renames it over `path`, so readers never
// observe a partially written output.
void atomic_write(const std::filesystem::path& path, std::string_view bytes);

// Splits on '\n', dropping one trailing '\r' per line. A final empty line
// after a trailing newline is not reported.
std::vector<std::string_view> split_lines(std::string_view text);

std::vector<std::string_view> split(std::string_view text, char sep);

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

double parse_double(std::string_view s, std::size_t line);

}  // namespace lgse::io

#endif  // LGSE_IO_H_

#pragma once

#include <string>

namespace fc {

// Shortest text that round-trips the double exactly ("%.17g").
std::string fmt_g17(double v);
// Fixed 17-significant-digit scientific ("%.17e") used in CSV output.
std::string fmt_e17(double v);

// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace fc

#pragma once

#include <string>
#include <vector>

namespace qwalk::io {

/// %.17g -- round-trip exact for doubles.
std::string format_g17(double x);

/// Writes via a temp file in the same directory plus rename, so readers never
/// observe a partial file.
void write_text_atomic(const std::string& path, const std::string& content);

/// '#'-prefixed header comment lines followed by a CSV header row.
std::string csv_header(const std::vector<std::string>& comment_lines,
                       const std::vector<std::string>& columns);

std::string read_text(const std::string& path);

}  // namespace qwalk::io

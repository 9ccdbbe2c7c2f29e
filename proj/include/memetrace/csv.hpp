#pragma once

#include <string>
#include <vector>

namespace memetrace::csv {

// Minimal RFC-4180 CSV support. Meme keys can contain commas and quotes
// (URL query strings), so both sides of the pipeline need real quoting.

std::string escape_field(const std::string& field);

std::string join_row(const std::vector<std::string>& fields);

// Splits one CSV line into fields, honoring quotes. Throws
// Error(malformed_line) on an unterminated quote.
std::vector<std::string> split_row(const std::string& line);

} // namespace memetrace::csv

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace incistat::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// RFC 4180 style: quoted fields, embedded commas/quotes/newlines, CRLF.
/// Throws SchemaError when the input has no header row.
Table parse(std::string_view text);

std::string escape_field(std::string_view field);
std::string write_row(const std::vector<std::string>& fields);

}  // namespace incistat::csv

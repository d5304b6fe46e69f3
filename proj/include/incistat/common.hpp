#pragma once

#include <charconv>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace incistat {

/// Input data violates a contract (bad value, empty design, impossible request).
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A table is missing a mandatory header column or is otherwise unreadable.
class SchemaError : public DataError {
  public:
    using DataError::DataError;
};

/// An iterative fit failed to converge within its iteration budget.
class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Date {
    int year = 0;
    int month = 0;  // 1..12
    int day = 0;    // 1..31
};

bool is_valid_date(const Date& d);

/// Accepts ISO (YYYY-MM-DD) and US (M/D/YYYY) forms. Two-digit years are
/// rejected; the data spans several decades and century inference is unsafe.
std::optional<Date> parse_date(std::string_view text);

/// Lowercase, trim, and collapse internal whitespace. All free-text category
/// matching goes through this.
std::string norm_text(std::string_view text);

std::string trim(std::string_view text);

std::optional<long long> parse_integer(std::string_view text);
std::optional<double> parse_real(std::string_view text);

/// Shortest decimal form that round-trips the exact double value.
std::string format_double(double value);

/// FNV-1a 64-bit, hex encoded. Used for manifest content hashes.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace incistat

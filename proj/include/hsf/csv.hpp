#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hsf {

/// 17 significant digits, dot decimal; "inf"/"-inf"/"nan" for non-finite.
std::string format_real(double v);

std::string format_bool(bool b);

/// RFC-4180 quoting when the field holds a comma, quote or line break.
std::string csv_field(const std::string& s);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

/// Trailing "# seed=<s> version=<v>" line.
void write_csv_metadata(std::ostream& out, std::uint64_t seed);

}  // namespace hsf

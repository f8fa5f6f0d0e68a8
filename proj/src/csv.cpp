#include "hsf/csv.hpp"

#include "hsf/version.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace hsf {

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_bool(bool b) { return b ? "true" : "false"; }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << csv_field(fields[i]);
    }
    out << '\n';
}

void write_csv_metadata(std::ostream& out, std::uint64_t seed) {
    out << "# seed=" << seed << " version=" << kVersion << '\n';
}

}  // namespace hsf

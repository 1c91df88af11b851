#pragma once

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "../vector.hpp"

namespace sipmink::harness {

/// 17 significant digits, '.' separator.
inline std::string format_real(double v) {
    if (v == 0.0) v = 0.0; // drop the sign of -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// "(1;2);(3;4)" so that witnesses fit in one CSV field.
inline std::string format_vectors(const std::vector<Vector>& vs) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += ';';
        out += '(';
        for (std::size_t j = 0; j < vs[i].size(); ++j) {
            if (j) out += ';';
            out += format_real(vs[i][j]);
        }
        out += ')';
    }
    return out;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

class CsvWriter {
public:
    CsvWriter(std::ostream& out, const std::vector<std::string>& header) : out_(out), width_(header.size()) {
        row(header);
    }

    void row(const std::vector<std::string>& fields) {
        if (fields.size() != width_) throw std::logic_error("csv: row width does not match header");
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ',';
            out_ << csv_field(fields[i]);
        }
        out_ << '\n';
    }

private:
    std::ostream& out_;
    std::size_t width_;
};

} // namespace sipmink::harness

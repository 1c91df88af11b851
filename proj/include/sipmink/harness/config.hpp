#pragma once

// Run configuration: flat key = value text with dotted sections.
//
//   # comment
//   seed = 42
//   space.s.norm = "pnorm"     # euclidean | pnorm | max
//   space.s.p = 3
//   space.s.dim = 2
//   space.t.dim = 1
//
// Strings may be quoted or bare. Unknown keys are rejected with their
// line and column.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "../error.hpp"
#include "../minkowski.hpp"
#include "../norms.hpp"
#include "../numerics.hpp"
#include "../vector.hpp"

namespace sipmink::harness {

struct BlockConfig {
    std::string norm = "euclidean";
    double p = 2.0;
    bool has_p = false;
    std::size_t dim = 1;
};

struct RunConfig {
    BlockConfig s{"euclidean", 2.0, false, 2};
    BlockConfig t{"euclidean", 2.0, false, 1};
    SipMode sip_mode = SipMode::ClosedForm;
    Tolerances tol;
    Seed seed{42};
    int trials = 100;
    int pairs = 3;
    int nodes = 32;
    std::string out;

    SipSpace block_space(const BlockConfig& b) const {
        if (b.norm == "euclidean") return {NormSpec::euclidean(b.dim), sip_mode};
        if (b.norm == "max") return {NormSpec::max_norm(b.dim), sip_mode};
        if (b.norm == "pnorm") {
            if (!b.has_p) throw UsageError("pnorm block needs a value for p");
            return {NormSpec::pnorm(b.dim, b.p), sip_mode};
        }
        throw UsageError("unknown norm '" + b.norm + "'");
    }

    SipSpace s_space() const { return block_space(s); }
    SipSpace t_space() const { return block_space(t); }
    GeneralizedMinkowskiSpace space() const { return {s_space(), t_space()}; }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_real(std::string_view text, std::size_t line, std::size_t col) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ParseError("expected a real number, got '" + std::string(text) + "'", line, col);
    return v;
}

inline long long parse_int(std::string_view text, std::size_t line, std::size_t col) {
    long long v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ParseError("expected an integer, got '" + std::string(text) + "'", line, col);
    return v;
}

} // namespace detail

inline RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (detail::trim(line).empty()) continue;

        const auto eq = line.find('=');
        const std::size_t key_col = line.find_first_not_of(" \t") + 1;
        if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no, key_col);
        const std::string key(detail::trim(line.substr(0, eq)));
        std::string_view value = detail::trim(line.substr(eq + 1));
        const std::size_t value_col = eq + 2 + (line.substr(eq + 1).find_first_not_of(" \t") == std::string_view::npos
                                                    ? 0
                                                    : line.substr(eq + 1).find_first_not_of(" \t"));
        if (value.empty()) throw ParseError("missing value for '" + key + "'", line_no, value_col);
        if (value.size() >= 2 && value.front() == '"') {
            if (value.back() != '"') throw ParseError("unterminated string", line_no, value_col);
            value = value.substr(1, value.size() - 2);
        }

        auto real = [&] { return detail::parse_real(value, line_no, value_col); };
        auto positive_int = [&] {
            const long long v = detail::parse_int(value, line_no, value_col);
            if (v < 1) throw ParseError("expected a positive integer", line_no, value_col);
            return v;
        };
        auto norm_name = [&] {
            const std::string v(value);
            if (v != "euclidean" && v != "pnorm" && v != "max")
                throw ParseError("norm must be one of euclidean, pnorm, max", line_no, value_col);
            return v;
        };

        if (key == "seed") {
            const long long v = detail::parse_int(value, line_no, value_col);
            if (v < 0) throw ParseError("seed must be non-negative", line_no, value_col);
            cfg.seed = Seed{static_cast<std::uint64_t>(v)};
        } else if (key == "space.s.norm") cfg.s.norm = norm_name();
        else if (key == "space.s.p") cfg.s.p = real(), cfg.s.has_p = true;
        else if (key == "space.s.dim") cfg.s.dim = static_cast<std::size_t>(positive_int());
        else if (key == "space.t.norm") cfg.t.norm = norm_name();
        else if (key == "space.t.p") cfg.t.p = real(), cfg.t.has_p = true;
        else if (key == "space.t.dim") cfg.t.dim = static_cast<std::size_t>(positive_int());
        else if (key == "space.sip_mode") {
            if (value == "closed") cfg.sip_mode = SipMode::ClosedForm;
            else if (value == "derivative") cfg.sip_mode = SipMode::NormDerivative;
            else throw ParseError("sip_mode must be closed or derivative", line_no, value_col);
        } else if (key == "tol.eq") cfg.tol.eq_tol = real();
        else if (key == "tol.fd") cfg.tol.fd_tol = real();
        else if (key == "tol.opt") cfg.tol.opt_tol = real();
        else if (key == "tol.class") cfg.tol.class_tol = real();
        else if (key == "trials") cfg.trials = static_cast<int>(positive_int());
        else if (key == "pairs") cfg.pairs = static_cast<int>(positive_int());
        else if (key == "nodes") cfg.nodes = static_cast<int>(positive_int());
        else if (key == "out") cfg.out = std::string(value);
        else throw ParseError("unknown key '" + key + "'", line_no, key_col);
    }
    try {
        cfg.tol.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

inline RunConfig parse_config(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

/// SIPMINK_TOL_EQ, when set, replaces eq_tol.
inline void apply_environment(RunConfig& cfg) {
    if (const char* v = std::getenv("SIPMINK_TOL_EQ"); v && *v) {
        const std::string_view text(v);
        try {
            cfg.tol.eq_tol = detail::parse_real(text, 1, 1);
        } catch (const ParseError&) {
            throw UsageError("SIPMINK_TOL_EQ: expected a real number, got '" + std::string(text) + "'");
        }
        try {
            cfg.tol.validate();
        } catch (const DomainError& e) {
            throw UsageError(std::string("SIPMINK_TOL_EQ: ") + e.what());
        }
    }
}

/// "1, 2.5, -3" -> {1, 2.5, -3}
inline Vector parse_vector(std::string_view text) {
    Vector v;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = detail::trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
        if (piece.empty()) throw UsageError("malformed vector '" + std::string(text) + "'");
        double x = 0.0;
        auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), x);
        if (ec != std::errc() || ptr != piece.data() + piece.size())
            throw UsageError("malformed vector '" + std::string(text) + "'");
        v.push_back(x);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return v;
}

} // namespace sipmink::harness

#pragma once

// Command implementations behind the CLI verbs. Each returns a record; the
// write_* helpers print records as CSV.

#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "../sipmink.hpp"
#include "config.hpp"
#include "csv.hpp"
#include "suites.hpp"

namespace sipmink::harness {

struct ClassifyRow {
    Vector v;
    double square = 0.0; // [v,v]^+
    VectorClass cls = VectorClass::SpaceLike;
    std::optional<ConePart> cone; // absent unless dim T = 1
};

inline std::vector<ClassifyRow> cmd_classify(const RunConfig& cfg, const std::vector<Vector>& vectors) {
    const auto M = cfg.space();
    std::vector<ClassifyRow> rows;
    for (const auto& v : vectors) {
        require_dim(v, M.n(), "classify");
        ClassifyRow r{v, product_plus(M, v, v), classify(M, v, cfg.tol.class_tol), std::nullopt};
        if (M.space_time_model()) r.cone = cone_part(M, v, cfg.tol.class_tol);
        rows.push_back(std::move(r));
    }
    return rows;
}

inline void write_classify_csv(std::ostream& out, const std::vector<ClassifyRow>& rows) {
    const std::size_t n = rows.empty() ? 0 : rows.front().v.size();
    std::vector<std::string> header;
    for (std::size_t i = 0; i < n; ++i) header.push_back("x" + std::to_string(i));
    header.insert(header.end(), {"square", "class", "cone"});
    CsvWriter w(out, header);
    for (const auto& r : rows) {
        std::vector<std::string> f;
        for (double x : r.v) f.push_back(format_real(x));
        f.push_back(format_real(r.square));
        f.push_back(to_string(r.cls));
        f.push_back(r.cone ? to_string(*r.cone) : "");
        w.row(f);
    }
}

struct ProductRecord {
    double minus = 0.0;
    double plus = 0.0;
};

inline ProductRecord cmd_product(const RunConfig& cfg, const Vector& u, const Vector& v) {
    const auto M = cfg.space();
    return {product_minus(M, u, v), product_plus(M, u, v)};
}

/// Orthogonality of x and y in the S block.
inline OrthoResult cmd_ortho(const RunConfig& cfg, const std::string& relation, const Vector& x, const Vector& y) {
    return ortho_test(cfg.s_space(), parse_relation(relation), x, y, cfg.tol.eq_tol, cfg.tol.opt_tol);
}

inline MinkowskiAuerbach cmd_auerbach(const RunConfig& cfg) {
    return minkowski_auerbach(cfg.space(), cfg.seed, cfg.trials, cfg.tol);
}

struct TangentRow {
    Vector u;
    double orthogonality = 0.0; // |[u,v]^+|
    double ds2 = 0.0;           // ds^2(u,u)
    VectorClass cls = VectorClass::SpaceLike;
};

inline std::vector<TangentRow> cmd_tangent(const RunConfig& cfg, const Vector& s) {
    const auto M = cfg.space();
    const HPoint v = lift(M, s);
    std::vector<TangentRow> rows;
    for (const auto& u : tangent_frame(M, v, cfg.tol).vectors)
        rows.push_back({u, std::abs(product_plus(M, u, v.vector())), ds2(M, v, u, u, cfg.tol),
                        classify(M, u, cfg.tol.class_tol)});
    return rows;
}

inline void write_tangent_csv(std::ostream& out, const std::vector<TangentRow>& rows) {
    const std::size_t n = rows.empty() ? 0 : rows.front().u.size();
    std::vector<std::string> header{"j"};
    for (std::size_t i = 0; i < n; ++i) header.push_back("u" + std::to_string(i));
    header.insert(header.end(), {"orthogonality", "ds2", "class"});
    CsvWriter w(out, header);
    for (std::size_t j = 0; j < rows.size(); ++j) {
        std::vector<std::string> f{std::to_string(j)};
        for (double x : rows[j].u) f.push_back(format_real(x));
        f.push_back(format_real(rows[j].orthogonality));
        f.push_back(format_real(rows[j].ds2));
        f.push_back(to_string(rows[j].cls));
        w.row(f);
    }
}

struct DistanceRecord {
    Geodesic geodesic;
    double plus = 0.0;     // [a,b]^+
    double residual = 0.0; // |[a,b]^+ + cosh d|
    bool exploratory = false;
    int nodes = 0;
};

/// Throws ConvergenceError if the minimizer does not settle.
inline DistanceRecord cmd_distance(const RunConfig& cfg, const Vector& a_s, const Vector& b_s, int m) {
    const auto M = cfg.space();
    const HPoint a = lift(M, a_s), b = lift(M, b_s);
    DistanceRecord r;
    r.geodesic = geodesic(M, a, b, m, cfg.tol);
    r.plus = product_plus(M, a.vector(), b.vector());
    r.residual = std::abs(r.plus + std::cosh(r.geodesic.distance));
    r.exploratory = !M.pseudo_euclidean();
    r.nodes = m;
    return r;
}

/// One row per path node: t in [0,1], S coordinates, tau.
inline void write_path_csv(std::ostream& out, const Path& path) {
    const std::size_t k = path.nodes.empty() ? 0 : path.nodes.front().s.size();
    std::vector<std::string> header{"t"};
    for (std::size_t i = 0; i < k; ++i) header.push_back("s" + std::to_string(i));
    header.push_back("tau");
    CsvWriter w(out, header);
    const double m = static_cast<double>(path.segments());
    for (std::size_t i = 0; i < path.nodes.size(); ++i) {
        std::vector<std::string> f{format_real(m > 0 ? static_cast<double>(i) / m : 0.0)};
        for (double x : path.nodes[i].s) f.push_back(format_real(x));
        f.push_back(format_real(path.nodes[i].tau));
        w.row(f);
    }
}

inline std::vector<SuiteResult> cmd_verify(const RunConfig& cfg, const std::string& suite) {
    return run_suites(suite, cfg);
}

struct CounterexampleRecord {
    std::string name;
    bool found = false;
    Vector u;
    Vector v;
    double margin = 0.0; // [u,v]^2 - [u,u][v,v]
};

/// "example4": the planar product violating Cauchy-Schwarz.
/// "remark1": the plane x3 = x2 / 2 of the max-norm space-time.
inline CounterexampleRecord cmd_counterexample(const RunConfig& cfg, const std::string& name) {
    std::optional<CauchySchwarzWitness> w;
    if (name == "example4") {
        w = cauchy_schwarz_witness(SiipSpace::example4(), {{1, 0}, {0, 1}}, cfg.seed, 2000, cfg.tol);
    } else if (name == "remark1") {
        const auto R = remark1_space();
        auto plus = [&](const Vector& a, const Vector& b) { return product_plus(R, a, b); };
        w = cauchy_schwarz_witness(plus, {{1, 0, 0}, {0, 1, 0.5}}, cfg.seed, 2000, cfg.tol);
    } else {
        throw UsageError("unknown counterexample '" + name + "' (expected example4 or remark1)");
    }
    CounterexampleRecord r{name, w.has_value(), {}, {}, 0.0};
    if (w) r.u = w->u, r.v = w->v, r.margin = w->margin;
    return r;
}

/// Square matrix, one row per line, entries separated by commas. Blank lines
/// and '#' comments are ignored.
inline LinearMap read_matrix_csv(std::istream& in) {
    std::vector<Vector> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (detail::trim(line).empty()) continue;
        rows.push_back(parse_vector(line));
    }
    const std::size_t n = rows.size();
    if (n == 0) throw UsageError("matrix: no rows");
    std::vector<double> entries;
    for (const auto& r : rows) {
        if (r.size() != n) throw UsageError("matrix: expected " + std::to_string(n) + " columns per row");
        entries.insert(entries.end(), r.begin(), r.end());
    }
    return LinearMap(n, entries);
}

inline IsometryReport cmd_isometry(const RunConfig& cfg, const LinearMap& F) {
    return isometry_report(cfg.space(), F, cfg.seed, cfg.trials, cfg.tol);
}

} // namespace sipmink::harness

#pragma once

// Seeded property suites. Each suite turns library reports into rows; a
// suite passes when none of its rows failed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "../sipmink.hpp"
#include "config.hpp"
#include "csv.hpp"

namespace sipmink::harness {

enum class Status { Pass, Fail, Skipped, Exploratory };

inline const char* to_string(Status s) {
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
    case Status::Exploratory: return "exploratory";
    }
    return "?";
}

struct Row {
    std::string check;
    Status status = Status::Pass;
    double worst = 0.0;
    double threshold = 0.0;
    std::size_t trials = 0;
    std::size_t violations = 0;
    std::string witness;
    std::string note;
};

struct SuiteResult {
    std::string name;
    std::vector<Row> rows;
    double seconds = 0.0;

    bool pass() const {
        return std::none_of(rows.begin(), rows.end(), [](const Row& r) { return r.status == Status::Fail; });
    }

    double worst() const {
        double w = 0.0;
        for (const auto& r : rows)
            if (r.status == Status::Pass || r.status == Status::Fail) w = std::max(w, r.worst);
        return w;
    }

    /// Witness of the first failing row, empty when the suite passed.
    std::string witness() const {
        for (const auto& r : rows)
            if (r.status == Status::Fail) return r.check + ": " + r.witness;
        return {};
    }

    void add(Row r) {
        if (r.status == Status::Fail && r.witness.empty()) r.witness = "(no sample)";
        rows.push_back(std::move(r));
    }

    /// `ok` is the status given to a passing check. Exploratory checks are
    /// never marked failed.
    void add(const Check& c, const std::string& prefix = {}, Status ok = Status::Pass) {
        const bool exploratory = ok == Status::Exploratory;
        Row r{prefix + c.name, c.pass() || exploratory ? ok : Status::Fail, c.worst, c.threshold, c.trials,
              c.violations, {}, {}};
        if (!c.pass() || exploratory) r.witness = format_vectors(c.witness);
        add(std::move(r));
    }

    void add(const AxiomReport& rep, const std::string& prefix = {}) {
        for (const auto& c : rep.checks) add(c, prefix);
    }

    void skip(const std::string& check, const std::string& note) {
        add(Row{check, Status::Skipped, 0.0, 0.0, 0, 0, {}, note});
    }

    /// Single yes/no outcome.
    void expect(const std::string& check, bool ok, const std::string& witness, const std::string& note = {}) {
        add(Row{check, ok ? Status::Pass : Status::Fail, ok ? 0.0 : 1.0, 0.0, 1, ok ? 0u : 1u, ok ? std::string() : witness,
                note});
    }
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"sip-axioms", "siip-axioms", "theorem2",   "lemma2",        "cone",
                                                "tangent",    "lemma3",      "lemma4",     "theorem10",     "geodesic-cosh",
                                                "isometry",   "orthogonality", "counterexamples"};
    return names;
}

namespace detail {

inline bool inner_product_norm(const SipSpace& s) {
    if (s.norm.is_euclidean()) return true;
    const auto* p = std::get_if<PNorm>(&s.norm.variant());
    return p && p->p == 2.0;
}

/// Euclidean distance from w to span(vs).
inline double span_distance(std::vector<Vector> vs, Vector w) {
    for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) vs[i] = axpy(vs[i], -dot(vs[i], vs[j]), vs[j]);
        const double len = norm2(vs[i]);
        if (len == 0.0) continue;
        vs[i] = (1.0 / len) * vs[i];
        w = axpy(w, -dot(w, vs[i]), vs[i]);
    }
    return norm2(w);
}

/// Point of S whose two largest coordinate magnitudes differ by more than 1e-3.
inline Vector tie_free(Rng& rng, std::size_t k, double radius) {
    for (;;) {
        Vector s = rng.vector(k, radius);
        Vector a(k);
        for (std::size_t i = 0; i < k; ++i) a[i] = std::abs(s[i]);
        std::sort(a.begin(), a.end());
        if (k < 2 || a[k - 1] - a[k - 2] > 1e-3) return s;
    }
}

inline Vector sample_point(const GeneralizedMinkowskiSpace& M, Rng& rng, double radius) {
    return M.s_space().norm.smooth() ? rng.vector(M.k(), radius) : tie_free(rng, M.k(), radius);
}

inline Vector unit_in(const SipSpace& S, Rng& rng) {
    const Vector e = rng.vector(S.dim(), 1.0);
    return (1.0 / norm(S, e)) * e;
}

inline double hyperbolic(const GeneralizedMinkowskiSpace& M, const HPoint& a, const HPoint& b) {
    return std::acosh(std::max(1.0, -product_plus(M, a.vector(), b.vector())));
}

inline Check new_check(const std::string& name, double threshold) { return Check{name, 0.0, threshold, 0, 0, {}}; }

inline double threshold_for(const SipSpace& s, const Tolerances& tol) {
    return s.uses_differences() ? tol.fd_tol : tol.eq_tol;
}

} // namespace detail

// ---------------------------------------------------------------------------

inline void suite_sip_axioms(const RunConfig& cfg, SuiteResult& out) {
    const auto S = cfg.s_space(), T = cfg.t_space();
    out.add(sip_axiom_report(S, cfg.seed, cfg.trials, cfg.tol), "s.");
    out.add(sip_axiom_report(T, Seed{cfg.seed.value + 1}, cfg.trials, cfg.tol), "t.");

    if (!S.norm.smooth()) {
        out.skip("s.derivative_identity", "norm is not smooth");
        return;
    }
    Check c = detail::new_check("s.derivative_identity", cfg.tol.fd_tol);
    Rng rng(Seed{cfg.seed.value + 2});
    for (int i = 0; i < cfg.trials; ++i) {
        const Vector x = rng.vector(S.dim(), 2.0), y = rng.vector(S.dim(), 2.0);
        if (norm(S, y) < 0.1) continue;
        const double gap = std::abs(sip(S, x, y) - norm(S, y) * norm_first_derivative(S, x, y));
        c.record(gap / std::max(1.0, norm(S, x) * norm(S, y)), {x, y});
    }
    out.add(c);
}

inline void suite_siip_axioms(const RunConfig& cfg, SuiteResult& out) {
    const auto M = cfg.space();
    const std::size_t n = M.n();
    Check add = detail::new_check("plus.additivity_first", detail::threshold_for(M.s_space(), cfg.tol));
    Check hom1 = detail::new_check("plus.homogeneity_first", add.threshold);
    Check hom2 = detail::new_check("plus.homogeneity_second", add.threshold);
    Rng rng(cfg.seed);
    for (int t = 0; t < cfg.trials; ++t) {
        const Vector x = rng.vector(n, 2.0), y = rng.vector(n, 2.0), z = rng.vector(n, 2.0);
        const double lambda = rng.signed_magnitude(0.1, 3.0);
        const double scale = std::max(1.0, (norm2(x) + norm2(z)) * norm2(y));
        const double xy = product_plus(M, x, y);
        add.record(std::abs(product_plus(M, x + z, y) - xy - product_plus(M, z, y)) / scale, {x, z, y});
        hom1.record(std::abs(product_plus(M, lambda * x, y) - lambda * xy) / scale, {x, y, {lambda}});
        hom2.record(std::abs(product_plus(M, x, lambda * y) - lambda * xy) / scale, {x, y, {lambda}});
    }
    out.add(add);
    out.add(hom1);
    out.add(hom2);

    std::vector<int> signature(M.k(), 1);
    signature.resize(n, -1);
    out.add(siip_axiom_report(SiipSpace::diagonal(signature), cfg.seed, cfg.trials, cfg.tol), "diagonal.");
    out.add(siip_axiom_report(SiipSpace::cross_polytope(n), cfg.seed, cfg.trials, cfg.tol), "cross_polytope.");
}

inline void suite_theorem2(const RunConfig& cfg, SuiteResult& out) {
    const auto S = cfg.s_space();
    if (!S.norm.twice_smooth()) {
        out.skip("theorem2_identity", "norm is not twice differentiable");
        return;
    }
    Check c = detail::new_check("theorem2_identity", 1e-3);
    Rng rng(cfg.seed);
    for (int i = 0; i < cfg.trials; ++i) {
        const Vector x = rng.vector(S.dim(), 1.0), z = rng.vector(S.dim(), 1.0);
        Vector y = rng.vector(S.dim(), 1.0);
        y = (rng.uniform(0.5, 2.0) / norm(S, y)) * y;
        c.record(theorem2_residual(S, x, y, z), {x, y, z});
    }
    out.add(c);
}

inline void suite_lemma2(const RunConfig& cfg, SuiteResult& out) {
    const auto M = cfg.space();
    const double threshold = M.pseudo_euclidean() ? cfg.tol.eq_tol : cfg.tol.fd_tol;
    auto minus = [&](const Vector& a, const Vector& b) { return product_minus(M, a, b); };
    out.add(sip_axiom_report_for(minus, M.n(), cfg.seed, cfg.trials, threshold), "minus.");
}

inline void suite_cone(const RunConfig& cfg, SuiteResult& out) {
    const auto M = cfg.space();
    if (!M.space_time_model()) {
        out.skip("convexity", "needs dim T = 1");
        return;
    }
    out.add(cone_convexity_check(M, cfg.seed, cfg.trials, cfg.tol));
}

inline void suite_tangent(const RunConfig& cfg, SuiteResult& out) {
    const auto M = cfg.space();
    if (!M.space_time_model()) {
        out.skip("frame", "needs dim T = 1");
        return;
    }
    Check ortho = detail::new_check("frame_orthogonality", 1e-8);
    Check spacelike = detail::new_check("frame_spacelike", 0.0);
    Check metric = detail::new_check("ds2_positive", 0.0);
    Rng rng(cfg.seed);
    for (int i = 0; i < cfg.trials; ++i) {
        const HPoint v = lift(M, detail::sample_point(M, rng, 1.5));
        for (const auto& u : tangent_frame(M, v, cfg.tol).vectors) {
            ortho.record(std::abs(product_plus(M, u, v.vector())), {v.vector(), u});
            spacelike.record(classify(M, u, cfg.tol.class_tol) == VectorClass::SpaceLike ? 0.0 : 1.0, {v.vector(), u});
            metric.record(ds2(M, v, u, u, cfg.tol) > 0.0 ? 0.0 : 1.0, {v.vector(), u});
        }
    }
    out.add(ortho);
    out.add(spacelike);
    out.add(metric);
}

inline void suite_lemma3(const RunConfig& cfg, SuiteResult& out) {
    const auto M = cfg.space();
    if (!M.space_time_model()) {
        out.skip("directional_derivative", "needs dim T = 1");
        return;
    }
    Check c = detail::new_check("directional_derivative", cfg.tol.fd_tol);
    Rng rng(cfg.seed);
    for (int i = 0; i < cfg.trials; ++i) {
        const Vector s = detail::sample_point(M, rng, 1.5);
        const Vector e = detail::unit_in(M.s_space(), rng);
        c.record(lemma3_residual(M, s, e), {s, e});
    }
    out.add(c);
    if (!M.s_space().norm.smooth()) out.rows.back().note = "points with coordinate ties resampled";
}

inline void suite_lemma4(const RunConfig& cfg, SuiteResult& out) {
    const auto M = cfg.space();
    if (!M.space_time_model()) {
        out.skip("tangent_companion", "needs dim T = 1");
        return;
    }
    auto plus = [&](const Vector& a, const Vector& b) { return product_plus(M, a, b); };
    Check forward = detail::new_check("frame_in_companion", 10.0 * cfg.tol.eq_tol);
    Check backward = detail::new_check("companion_in_frame_span", 1e-8);
    Rng rng(cfg.seed);
    for (int i = 0; i < cfg.trials; ++i) {
        const HPoint v = lift(M, detail::sample_point(M, rng, 1.5));
        const auto frame = tangent_frame(M, v, cfg.tol);
        for (const auto& u : frame.vectors)
            forward.record(std::abs(plus(u, v.vector())) / std::max(1.0, norm2(u) * norm2(v.vector())),
                           {v.vector(), u});
        for (const auto& w : orthogonal_companion_basis(plus, v.vector(), cfg.tol.eq_tol))
            backward.record(detail::span_distance(frame.vectors, w) / std::max(1.0, norm2(w)), {v.vector(), w});
    }
    out.add(forward);
    out.add(backward);
}

inline void suite_theorem10(const RunConfig& cfg, SuiteResult& out) {
    const auto M = cfg.space();
    if (!M.space_time_model()) {
        out.skip("companion_positive", "needs dim T = 1");
        return;
    }
    auto plus = [&](const Vector& a, const Vector& b) { return product_plus(M, a, b); };
    Check c = detail::new_check("companion_positive", 0.0);
    Rng rng(cfg.seed);
    for (int i = 0; i < cfg.trials; ++i) {
        const HPoint v = lift(M, detail::sample_point(M, rng, 1.5));
        const auto basis = orthogonal_companion_basis(plus, v.vector(), cfg.tol.eq_tol);
        Vector w = zeros(M.n());
        for (const auto& b : basis) w = axpy(w, rng.uniform(-1.0, 1.0), b);
        if (is_zero(w)) continue;
        c.record(plus(w, w) > 0.0 ? 0.0 : 1.0, {v.vector(), w});
    }
    out.add(c);
}

inline void suite_geodesic_cosh(const RunConfig& cfg, SuiteResult& out) {
    const auto M = cfg.space();
    if (!M.space_time_model()) {
        out.skip("cosh_law", "needs dim T = 1");
        return;
    }
    const bool asserted = M.pseudo_euclidean();
    const Status ok = asserted ? Status::Pass : Status::Exploratory;
    Check cosh_law = detail::new_check("cosh_residual", 5e-3);
    Check arccosh = detail::new_check("distance_vs_arccosh", 5e-3);

    std::vector<std::pair<HPoint, HPoint>> pairs;
    Vector b1 = zeros(M.k());
    b1[0] = std::sinh(1.0);
    pairs.emplace_back(lift(M, zeros(M.k())), lift(M, b1));
    Rng rng(cfg.seed);
    while (static_cast<int>(pairs.size()) < cfg.pairs + 1) {
        const HPoint a = lift(M, detail::sample_point(M, rng, 1.0));
        const HPoint b = lift(M, detail::sample_point(M, rng, 1.0));
        if (asserted && detail::hyperbolic(M, a, b) > 3.0) continue;
        pairs.emplace_back(a, b);
    }
    for (const auto& [a, b] : pairs) {
        const double d = geodesic_distance(M, a, b, cfg.nodes, cfg.tol);
        const double plus = product_plus(M, a.vector(), b.vector());
        cosh_law.record(std::abs(plus + std::cosh(d)), {a.vector(), b.vector(), {d}});
        if (asserted) arccosh.record(std::abs(d - detail::hyperbolic(M, a, b)), {a.vector(), b.vector(), {d}});
    }
    out.add(cosh_law, {}, ok);
    if (asserted) out.add(arccosh);
    else out.rows.back().note = "transitivity of the isometry group is open for this S";
}

inline void suite_isometry(const RunConfig& cfg, SuiteResult& out) {
    const auto M = cfg.space();
    if (!M.space_time_model()) {
        out.skip("isometry", "needs dim T = 1");
        return;
    }
    const auto id = isometry_report(M, LinearMap::identity(M.n()), cfg.seed, cfg.trials, cfg.tol);
    out.add(id.checks, "identity.");

    const auto& S = M.s_space();
    const bool strictly_convex = !std::holds_alternative<MaxNorm>(S.norm.variant());
    const auto flat = strict_convexity_witness(S, cfg.seed, cfg.trials);
    out.expect("s.strict_convexity", flat.has_value() != strictly_convex,
               flat ? format_vectors({flat->first, flat->second}) : std::string("none found"),
               strictly_convex ? "no segment on the unit sphere expected" : "segment on the unit sphere expected");
    if (!M.pseudo_euclidean()) {
        out.skip("boost", "boosts need Euclidean S");
        return;
    }
    const double tol = 1e-10;
    for (double phi : {0.3, 1.2}) {
        const LinearMap B = lorentz_boost(M, 0, phi);
        const std::string tag = phi == 0.3 ? "boost_0.3." : "boost_1.2.";
        const auto rep = isometry_report(M, B, cfg.seed, cfg.trials, cfg.tol, tol);
        out.add(rep.checks, tag);
        out.expect(tag + "upper_sheet", rep.maps_upper_sheet(tol), format_vectors({B.apply(unit(M.n(), M.n() - 1))}));

        LinearMap J = LinearMap::identity(M.n());
        J(M.n() - 1, M.n() - 1) = -1;
        const double adj = (J * B.transpose() * J * B).max_abs_diff(LinearMap::identity(M.n()));
        Check c = detail::new_check("adjoint_matrix", 1e-8);
        c.record(adj, {B.entries()});
        out.add(c, tag);
    }
    out.add(distance_preservation_check(M, lorentz_boost(M, 0, 0.6), cfg.seed, cfg.pairs, cfg.nodes, cfg.tol),
            "boost_0.6.");

    LinearMap R = LinearMap::identity(M.n());
    R(M.n() - 1, M.n() - 1) = -1;
    const auto ref = isometry_report(M, R, cfg.seed, cfg.trials, cfg.tol);
    out.expect("reflection.fails_only_upper_sheet", ref.preserves_product() && !ref.maps_upper_sheet(1e-9),
               format_vectors({R.apply(unit(M.n(), M.n() - 1))}));
}

inline void suite_orthogonality(const RunConfig& cfg, SuiteResult& out) {
    const auto M = cfg.space();
    const auto S = cfg.s_space();
    Rng rng(cfg.seed);

    auto sip_s = [&](const Vector& a, const Vector& b) { return sip(S, a, b); };
    Check implied = detail::new_check("sip_implies_birkhoff", 10.0 * cfg.tol.opt_tol);
    for (int i = 0; i < cfg.trials && S.dim() >= 2; ++i) {
        const Vector x = rng.vector(S.dim(), 1.0);
        for (const auto& y : orthogonal_companion_basis(sip_s, x, cfg.tol.eq_tol))
            implied.record(std::max(0.0, 1.0 - birkhoff_minimum(S, x, y).min_value), {x, y});
    }
    if (implied.trials) out.add(implied);

    if (M.pseudo_euclidean() && M.n() >= 2) {
        auto plus = [&](const Vector& a, const Vector& b) { return product_plus(M, a, b); };
        Check pairwise = detail::new_check("gram_schmidt_pairwise", 1e-9);
        Check span = detail::new_check("gram_schmidt_span", 1e-9);
        const std::size_t n = M.n();
        int done = 0;
        for (int attempt = 0; done < cfg.trials && attempt < 100 * cfg.trials; ++attempt) {
            std::vector<Vector> v;
            for (std::size_t i = 0; i < n; ++i) v.push_back(rng.vector(n, 1.0));
            bool ok = true;
            for (std::size_t m = 1; m <= n; ++m)
                ok &= std::abs(gram_determinant(plus, std::vector<Vector>(v.begin(), v.begin() + m))) > 1e-3;
            if (!ok) continue;
            const auto o = regular_orthogonalization(plus, v, cfg.tol.eq_tol);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < i; ++j)
                    pairwise.record(std::abs(plus(o.vectors[i], o.vectors[j])), {o.vectors[i], o.vectors[j]});
            span.record(span_residual(o, v), v);
            ++done;
        }
        out.add(pairwise);
        out.add(span);
    } else {
        out.skip("gram_schmidt", "needs a pseudo-Euclidean space");
    }

    if (S.dim() <= 2 && M.t_space().dim() <= 2) {
        const auto a = minkowski_auerbach(M, cfg.seed, cfg.trials, cfg.tol);
        out.add(a.verification);
    } else {
        out.skip("auerbach_orthogonality", "blocks larger than 2 are not supported");
    }

    if (S.dim() == 2) {
        const auto [e1, e2] = auerbach_basis_2d(S, cfg.tol.opt_tol);
        out.expect("auerbach_mutual_birkhoff", sipmink::detail::mutually_birkhoff(S, e1, e2, 1e-5, cfg.tol.opt_tol),
                   format_vectors({e1, e2}));
        const auto found = pythagorean_subspace_scan(S, 360);
        const bool expected = detail::inner_product_norm(S);
        out.expect("pythagorean_scan", found.has_value() == expected,
                   found ? format_vectors({found->first, found->second}) : std::string("none found"),
                   expected ? "inner-product norm: pair expected" : "non-inner-product norm: no pair expected");
    } else {
        out.skip("auerbach_mutual_birkhoff", "needs dim S = 2");
        out.skip("pythagorean_scan", "needs dim S = 2");
    }
}

/// Inverted expectations: a row passes when the violation is found.
inline void suite_counterexamples(const RunConfig& cfg, SuiteResult& out) {
    const auto E4 = SiipSpace::example4();
    const double uv = siip(E4, {1, 2}, {1, 1}, cfg.tol);
    const double margin = uv * uv - siip(E4, {1, 2}, {1, 2}, cfg.tol) * siip(E4, {1, 1}, {1, 1}, cfg.tol);
    out.expect("example4.instance", std::abs(uv - 10.0 / 3.0) <= 1e-12 && std::abs(margin - 10.0 / 9.0) <= 1e-9,
               format_vectors({{1, 2}, {1, 1}, {uv, margin}}), "cauchy-schwarz violation expected");
    const auto w4 = cauchy_schwarz_witness(E4, {{1, 0}, {0, 1}}, cfg.seed, 2000, cfg.tol);
    out.expect("example4.search", w4.has_value(), "none found", "cauchy-schwarz violation expected");

    const auto R = remark1_space();
    auto plus = [&](const Vector& a, const Vector& b) { return product_plus(R, a, b); };
    const auto w1 = cauchy_schwarz_witness(plus, {{1, 0, 0}, {0, 1, 0.5}}, cfg.seed, 2000, cfg.tol);
    out.expect("remark1.search", w1.has_value(), "none found", "cauchy-schwarz violation expected");
}

inline void run_suite(const std::string& name, const RunConfig& cfg, SuiteResult& out) {
    static const std::vector<std::pair<std::string, void (*)(const RunConfig&, SuiteResult&)>> table{
        {"sip-axioms", suite_sip_axioms},   {"siip-axioms", suite_siip_axioms},
        {"theorem2", suite_theorem2},       {"lemma2", suite_lemma2},
        {"cone", suite_cone},               {"tangent", suite_tangent},
        {"lemma3", suite_lemma3},           {"lemma4", suite_lemma4},
        {"theorem10", suite_theorem10},     {"geodesic-cosh", suite_geodesic_cosh},
        {"isometry", suite_isometry},       {"orthogonality", suite_orthogonality},
        {"counterexamples", suite_counterexamples}};
    for (const auto& [n, fn] : table)
        if (n == name) return fn(cfg, out);
    throw UsageError("unknown suite '" + name + "'");
}

/// Runs `name` (or every suite for "all") in a fixed order.
inline std::vector<SuiteResult> run_suites(const std::string& name, const RunConfig& cfg) {
    std::vector<std::string> names;
    if (name == "all") names = suite_names();
    else if (std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end()) names = {name};
    else throw UsageError("unknown suite '" + name + "'");

    std::vector<SuiteResult> results;
    for (const auto& n : names) {
        SuiteResult r{n, {}, 0.0};
        const auto t0 = std::chrono::steady_clock::now();
        run_suite(n, cfg, r);
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        results.push_back(std::move(r));
    }
    return results;
}

/// Report rows. Durations are left out so reruns compare byte for byte.
inline void write_suite_csv(std::ostream& out, const std::vector<SuiteResult>& results) {
    CsvWriter w(out, {"suite", "check", "status", "worst", "threshold", "trials", "violations", "witness", "note"});
    for (const auto& s : results)
        for (const auto& r : s.rows)
            w.row({s.name, r.check, to_string(r.status), format_real(r.worst), format_real(r.threshold),
                   std::to_string(r.trials), std::to_string(r.violations), r.witness, r.note});
}

} // namespace sipmink::harness

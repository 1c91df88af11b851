#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include <sipmink/harness/commands.hpp>

using namespace sipmink;
using namespace sipmink::harness;

namespace {

RunConfig pnorm3() { return parse_config("space.s.norm = \"pnorm\"\nspace.s.p = 3\n"); }

std::string suite_csv(const std::string& suite, const RunConfig& cfg) {
    std::ostringstream out;
    write_suite_csv(out, run_suites(suite, cfg));
    return out.str();
}

} // namespace

TEST(Config, Defaults) {
    const RunConfig cfg = parse_config("");
    EXPECT_EQ(cfg.seed.value, 42u);
    EXPECT_EQ(cfg.space().k(), 2u);
    EXPECT_EQ(cfg.space().n(), 3u);
    EXPECT_TRUE(cfg.space().pseudo_euclidean());
    EXPECT_EQ(cfg.trials, 100);
    EXPECT_EQ(cfg.nodes, 32);
}

TEST(Config, FullExample) {
    const RunConfig cfg = parse_config(R"(# a comment
seed = 7
space.s.norm = "pnorm"   # trailing comment
space.s.p = 3
space.s.dim = 3
space.t.dim = 1
space.sip_mode = derivative
tol.eq = 1e-10
tol.fd = 1e-6
trials = 20
pairs = 2
nodes = 16
out = report.csv
)");
    EXPECT_EQ(cfg.seed.value, 7u);
    const auto M = cfg.space();
    EXPECT_EQ(M.k(), 3u);
    EXPECT_TRUE(M.s_space().uses_differences());
    EXPECT_FALSE(M.pseudo_euclidean());
    EXPECT_NEAR(norm(M.s_space(), {1, 1, 1}), std::cbrt(3.0), 1e-15);
    EXPECT_EQ(cfg.tol.eq_tol, 1e-10);
    EXPECT_EQ(cfg.tol.fd_tol, 1e-6);
    EXPECT_EQ(cfg.trials, 20);
    EXPECT_EQ(cfg.pairs, 2);
    EXPECT_EQ(cfg.nodes, 16);
    EXPECT_EQ(cfg.out, "report.csv");
}

TEST(Config, UnknownKeyReportsLineAndColumn) {
    try {
        parse_config("seed = 1\n\n  space.q.dim = 2\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_EQ(e.column(), 3u);
    }
}

TEST(Config, BadValueReportsValueColumn) {
    try {
        parse_config("seed = abc\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1u);
        EXPECT_EQ(e.column(), 8u);
    }
    EXPECT_THROW(parse_config("space.s.norm = taxicab\n"), ParseError);
    EXPECT_THROW(parse_config("trials = 0\n"), ParseError);
    EXPECT_THROW(parse_config("seed\n"), ParseError);
    EXPECT_THROW(parse_config("seed =\n"), ParseError);
    EXPECT_THROW(parse_config("space.s.norm = \"pnorm\n"), ParseError);
    EXPECT_THROW(parse_config("space.sip_mode = exact\n"), ParseError);
}

TEST(Config, SemanticErrorsAreUsageErrors) {
    EXPECT_THROW(parse_config("space.s.norm = pnorm\n").space(), UsageError);
    EXPECT_THROW(parse_config("tol.eq = 1e-3\ntol.fd = 1e-4\n"), UsageError);
    EXPECT_THROW(parse_config("tol.opt = -1\n"), UsageError);
    EXPECT_THROW(parse_config("space.s.p = 0.5\nspace.s.norm = pnorm\n").space(), Error);
}

TEST(Config, EnvironmentOverridesEqTol) {
    RunConfig cfg = parse_config("tol.eq = 1e-9\n");
    ::setenv("SIPMINK_TOL_EQ", "1e-11", 1);
    apply_environment(cfg);
    EXPECT_EQ(cfg.tol.eq_tol, 1e-11);
    ::setenv("SIPMINK_TOL_EQ", "nope", 1);
    EXPECT_THROW(apply_environment(cfg), UsageError);
    ::setenv("SIPMINK_TOL_EQ", "1", 1);
    EXPECT_THROW(apply_environment(cfg), UsageError);
    ::unsetenv("SIPMINK_TOL_EQ");
    RunConfig untouched;
    apply_environment(untouched);
    EXPECT_EQ(untouched.tol.eq_tol, 1e-9);
}

TEST(Config, ParseVector) {
    EXPECT_EQ(parse_vector("1, 2.5,-3"), (Vector{1, 2.5, -3}));
    EXPECT_EQ(parse_vector("4"), (Vector{4}));
    EXPECT_THROW(parse_vector(""), UsageError);
    EXPECT_THROW(parse_vector("1,,2"), UsageError);
    EXPECT_THROW(parse_vector("1,x"), UsageError);
    EXPECT_THROW(parse_vector("1,"), UsageError);
}

TEST(Csv, RealsRoundTrip) {
    Rng rng(Seed{5});
    for (int i = 0; i < 1000; ++i) {
        const double x = rng.uniform(-1, 1) * std::pow(10.0, rng.uniform(-300, 300));
        EXPECT_EQ(std::strtod(format_real(x).c_str(), nullptr), x);
    }
    EXPECT_EQ(format_real(-0.0), "0");
    EXPECT_EQ(format_real(0.5), "0.5");
    EXPECT_EQ(format_vectors({{1, 2}, {3}}), "(1;2);(3)");
}

TEST(Csv, QuotesAndWidth) {
    EXPECT_EQ(csv_field("plain"), "plain");
    EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    std::ostringstream out;
    CsvWriter w(out, {"a", "b"});
    w.row({"1", "2"});
    EXPECT_EQ(out.str(), "a,b\n1,2\n");
    EXPECT_THROW(w.row({"1"}), std::logic_error);
}

TEST(Suites, SameSeedSameBytes) {
    RunConfig cfg = pnorm3();
    cfg.trials = 30;
    for (const char* suite : {"sip-axioms", "lemma3", "orthogonality", "counterexamples"})
        EXPECT_EQ(suite_csv(suite, cfg), suite_csv(suite, cfg)) << suite;
    RunConfig other = cfg;
    other.seed = Seed{43};
    EXPECT_NE(suite_csv("lemma3", cfg), suite_csv("lemma3", other));
}

TEST(Suites, DerivativeIdentityOnPNorm3) {
    const auto rs = run_suites("theorem2", pnorm3());
    ASSERT_EQ(rs.size(), 1u);
    EXPECT_TRUE(rs[0].pass());
    EXPECT_LE(rs[0].worst(), 1e-3);
    EXPECT_EQ(rs[0].rows.front().trials, 100u);
}

TEST(Suites, SkipsOutsideHypotheses) {
    const auto max = parse_config("space.s.norm = max\n");
    const auto rs = run_suites("theorem2", max);
    EXPECT_TRUE(rs[0].pass());
    EXPECT_EQ(rs[0].rows.front().status, Status::Skipped);
    const auto t2 = run_suites("cone", parse_config("space.t.dim = 2\n"));
    EXPECT_EQ(t2[0].rows.front().status, Status::Skipped);
    EXPECT_FALSE(t2[0].rows.front().note.empty());
}

TEST(Suites, NonEuclideanCoshIsExploratory) {
    RunConfig cfg = parse_config("space.s.norm = max\npairs = 1\nnodes = 8\n");
    const auto rs = run_suites("geodesic-cosh", cfg);
    ASSERT_EQ(rs[0].rows.size(), 1u);
    EXPECT_EQ(rs[0].rows[0].status, Status::Exploratory);
    EXPECT_TRUE(rs[0].pass());
    EXPECT_FALSE(rs[0].rows[0].witness.empty());
}

TEST(Suites, CounterexamplesInverted) {
    const auto rs = run_suites("counterexamples", RunConfig{});
    EXPECT_TRUE(rs[0].pass());
    EXPECT_EQ(rs[0].rows.size(), 3u);
}

TEST(Suites, FailingRowsCarryWitness) {
    SuiteResult r{"demo", {}, 0.0};
    Check c{"c", 0.0, 1e-9, 0, 0, {}};
    c.record(1.0, {{1, 2}});
    r.add(c);
    r.expect("flag", false, "");
    EXPECT_FALSE(r.pass());
    EXPECT_EQ(r.rows[0].witness, "(1;2)");
    EXPECT_EQ(r.rows[1].witness, "(no sample)");
    EXPECT_EQ(r.witness(), "c: (1;2)");
    EXPECT_EQ(r.worst(), 1.0);
}

TEST(Suites, UnknownName) {
    EXPECT_THROW(run_suites("everything", RunConfig{}), UsageError);
    EXPECT_EQ(suite_names().size(), 13u);
}

TEST(Commands, Classify) {
    const auto rows = cmd_classify(RunConfig{}, {{0, 0, 1}, {1, 0, 1}});
    EXPECT_EQ(rows[0].cls, VectorClass::TimeLike);
    EXPECT_EQ(*rows[0].cone, ConePart::TPlus);
    EXPECT_EQ(rows[1].cls, VectorClass::LightLike);
    const auto r1 = cmd_classify(parse_config("space.s.norm = max\n"), {{1, 1, 0.5}});
    EXPECT_EQ(r1[0].cls, VectorClass::SpaceLike);
    EXPECT_DOUBLE_EQ(r1[0].square, 0.75);
    EXPECT_THROW(cmd_classify(RunConfig{}, {{1, 0}}), DimensionError);
    EXPECT_FALSE(cmd_classify(parse_config("space.t.dim = 2\n"), {{1, 0, 0, 1}})[0].cone.has_value());

    std::ostringstream out;
    write_classify_csv(out, rows);
    EXPECT_EQ(out.str(), "x0,x1,x2,square,class,cone\n0,0,1,-1,TimeLike,TPlus\n1,0,1,0,LightLike,NotTimeLike\n");
}

TEST(Commands, Product) {
    const auto r = cmd_product(RunConfig{}, {1, 2, 3}, {1, 1, 1});
    EXPECT_EQ(r.minus, 6.0);
    EXPECT_EQ(r.plus, 0.0);
}

TEST(Commands, Ortho) {
    const auto p = cmd_ortho(RunConfig{}, "pythagorean", {3, 0}, {0, 4});
    EXPECT_TRUE(p.related);
    EXPECT_EQ(p.residual, 0.0);
    EXPECT_TRUE(cmd_ortho(parse_config("space.s.norm = max\n"), "birkhoff", {1, 0}, {0, 1}).related);
    const auto s = cmd_ortho(RunConfig{}, "sip", {1, 0}, {1, 1});
    EXPECT_FALSE(s.related);
    EXPECT_EQ(s.residual, 1.0);
    EXPECT_THROW(cmd_ortho(RunConfig{}, "diminnie", {1, 0}, {0, 1}), UsageError);
}

TEST(Commands, DistanceUnitHyperbola) {
    const auto r = cmd_distance(RunConfig{}, {0, 0}, {std::sinh(1.0), 0}, 32);
    EXPECT_NEAR(r.geodesic.distance, 1.0, 1e-3);
    EXPECT_LE(r.residual, 1e-3);
    EXPECT_NEAR(r.plus, -std::cosh(1.0), 1e-15);
    EXPECT_FALSE(r.exploratory);
    EXPECT_EQ(cmd_distance(RunConfig{}, {0.3, 0.1}, {0.3, 0.1}, 8).geodesic.distance, 0.0);

    std::ostringstream out;
    write_path_csv(out, r.geodesic.path);
    const std::string csv = out.str();
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,s0,s1,tau");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 34);
}

TEST(Commands, DistanceMaxNormIsExploratory) {
    const auto r = cmd_distance(parse_config("space.s.norm = max\n"), {0, 0}, {0.5, 0.2}, 8);
    EXPECT_TRUE(r.exploratory);
    EXPECT_GT(r.geodesic.distance, 0.0);
}

TEST(Commands, Counterexamples) {
    const auto e4 = cmd_counterexample(RunConfig{}, "example4");
    EXPECT_TRUE(e4.found);
    EXPECT_GE(e4.margin, 10.0 / 9.0 - 1e-9);
    EXPECT_TRUE(cmd_counterexample(RunConfig{}, "remark1").found);
    EXPECT_THROW(cmd_counterexample(RunConfig{}, "example5"), UsageError);
}

TEST(Commands, TangentAndAuerbach) {
    const auto rows = cmd_tangent(RunConfig{}, {std::sinh(1.0), 0});
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_NEAR(rows[0].u[2], std::tanh(1.0), 1e-15);
    EXPECT_LE(rows[0].orthogonality, 1e-15);
    const auto a = cmd_auerbach(parse_config("space.s.norm = max\n"));
    EXPECT_EQ(a.basis.size(), 3u);
    EXPECT_TRUE(a.verification.pass());
}

TEST(Commands, IsometryFromCsv) {
    std::istringstream in("# reflection\n1, 0, 0\n0, 1, 0\n\n0, 0, -1\n");
    const LinearMap R = read_matrix_csv(in);
    const auto r = cmd_isometry(RunConfig{}, R);
    EXPECT_TRUE(r.preserves_product());
    EXPECT_FALSE(r.maps_upper_sheet(1e-9));
    std::istringstream ragged("1,0\n0\n");
    EXPECT_THROW(read_matrix_csv(ragged), UsageError);
    std::istringstream empty("");
    EXPECT_THROW(read_matrix_csv(empty), UsageError);
}

#include <gtest/gtest.h>

#include <cmath>

#include <sipmink/norms.hpp>

using namespace sipmink;

namespace {

// Direct Lp norm, no rescaling.
double lp(const Vector& x, double p) {
    double s = 0;
    for (double c : x) s += std::pow(std::abs(c), p);
    return std::pow(s, 1.0 / p);
}

} // namespace

TEST(Norm, Examples) {
    EXPECT_DOUBLE_EQ(norm(pnorm_space(2, 2.0), {3, 4}), 5.0);
    EXPECT_DOUBLE_EQ(norm(max_space(2), {-2, 1}), 2.0);
    EXPECT_NEAR(norm(pnorm_space(2, 3.0), {1, 1}), std::cbrt(2.0), 1e-12);
    EXPECT_THROW(norm(euclidean_space(2), {1, 2, 3}), DimensionError);
}

TEST(Norm, PNormMatchesDirectFormula) {
    Rng rng(Seed{2});
    for (double p : {1.5, 3.0, 4.0, 7.5}) {
        const auto S = pnorm_space(4, p);
        for (int i = 0; i < 50; ++i) {
            const Vector x = rng.vector(4, 3.0);
            EXPECT_NEAR(norm(S, x), lp(x, p), 1e-12 * lp(x, p));
        }
    }
}

TEST(NormSpec, Validation) {
    EXPECT_THROW(NormSpec::pnorm(2, 1.0), DomainError);
    EXPECT_THROW(NormSpec::pnorm(2, 0.5), DomainError);
    EXPECT_THROW(NormSpec::pnorm(0, 2.0), DimensionError);
    EXPECT_THROW(NormSpec::custom(2, [](const Vector& x) { return dot(x, x); }), DomainError);
    EXPECT_THROW(NormSpec::custom(2, [](const Vector& x) { return x[0]; }), DomainError);
    EXPECT_NO_THROW(NormSpec::custom(2, [](const Vector& x) { return std::hypot(2 * x[0], x[1]); }));
}

TEST(NormSpec, Flags) {
    EXPECT_TRUE(NormSpec::euclidean(2).twice_smooth());
    EXPECT_TRUE(NormSpec::pnorm(2, 3).twice_smooth());
    EXPECT_FALSE(NormSpec::pnorm(2, 1.5).twice_smooth());
    EXPECT_TRUE(NormSpec::pnorm(2, 1.5).smooth());
    EXPECT_FALSE(NormSpec::max_norm(2).smooth());
    EXPECT_FALSE(NormSpec::max_norm(2).strictly_convex());
    EXPECT_FALSE(NormSpec::custom(2, [](const Vector& x) { return norm_inf(x); }, false).smooth());
    EXPECT_TRUE(SipSpace({NormSpec::custom(2, [](const Vector& x) { return norm2(x); }), SipMode::ClosedForm})
                    .uses_differences());
}

TEST(Sip, Examples) {
    EXPECT_DOUBLE_EQ(sip(euclidean_space(2), {1, 2}, {3, 4}), 11.0);
    EXPECT_DOUBLE_EQ(sip(max_space(2), {3, 5}, {2, 1}), 6.0);
    EXPECT_NEAR(sip(pnorm_space(2, 4.0), {1, 0}, {1, 1}), 1.0 / std::sqrt(2.0), 1e-9);
    EXPECT_THROW(sip(euclidean_space(2), {1, 2}, {1, 2, 3}), DimensionError);
}

TEST(Sip, MaxNormAgreesWithOneSidedDerivativeOracle) {
    const auto S = max_space(2);
    const Vector x{3, 5}, y{2, 1};
    const double h = 1e-6;
    const double fd = (norm_inf(y + h * x) - norm_inf(y - h * x)) / (2 * h);
    EXPECT_NEAR(sip(S, x, y), norm_inf(y) * fd, 1e-6);
}

TEST(Sip, MaxNormTieUsesFirstIndex) {
    EXPECT_DOUBLE_EQ(sip(max_space(3), {7, 11, 13}, {2, -2, 2}), 14.0);
    EXPECT_DOUBLE_EQ(sip(max_space(3), {7, 11, 13}, {1, -2, 2}), -22.0);
}

TEST(Sip, ZeroSecondArgument) {
    for (const auto& S : {euclidean_space(2), pnorm_space(2, 3), max_space(2)}) EXPECT_EQ(sip(S, {1, 2}, {0, 0}), 0.0);
    EXPECT_EQ(sip(pnorm_space(2, 3, SipMode::NormDerivative), {1, 2}, {0, 0}), 0.0);
}

TEST(Sip, PNormClosedFormMatchesUnscaledFormula) {
    Rng rng(Seed{21});
    for (double p : {1.5, 3.0, 4.0}) {
        const auto S = pnorm_space(3, p);
        for (int i = 0; i < 50; ++i) {
            const Vector x = rng.vector(3, 2.0), y = rng.vector(3, 2.0);
            double acc = 0;
            for (int j = 0; j < 3; ++j) acc += x[j] * std::pow(std::abs(y[j]), p - 1) * (y[j] < 0 ? -1 : 1);
            const double expect = std::pow(lp(y, p), 2 - p) * acc;
            EXPECT_NEAR(sip(S, x, y), expect, 1e-12 * std::max(1.0, std::abs(expect)));
        }
    }
}

TEST(Sip, ModesAgree) {
    Rng rng(Seed{8});
    for (double p : {2.0, 3.0, 4.0}) {
        const auto closed = pnorm_space(3, p);
        const auto deriv = pnorm_space(3, p, SipMode::NormDerivative);
        for (int i = 0; i < 100; ++i) {
            const Vector x = rng.vector(3, 1.0), y = rng.vector(3, 1.0);
            EXPECT_NEAR(sip(closed, x, y), sip(deriv, x, y), 1e-5);
        }
    }
    const SipSpace e_deriv{NormSpec::euclidean(3), SipMode::NormDerivative};
    for (int i = 0; i < 100; ++i) {
        const Vector x = rng.vector(3, 1.0), y = rng.vector(3, 1.0);
        EXPECT_NEAR(sip(e_deriv, x, y), dot(x, y), 1e-5);
    }
}

TEST(Sip, CustomGaugeMatchesWeightedInnerProduct) {
    // ||x|| = sqrt(4 x0^2 + x1^2): s.i.p. is 4 x0 y0 + x1 y1.
    const SipSpace S{NormSpec::custom(2, [](const Vector& x) { return std::hypot(2 * x[0], x[1]); }),
                     SipMode::ClosedForm};
    Rng rng(Seed{13});
    for (int i = 0; i < 50; ++i) {
        const Vector x = rng.vector(2, 2.0), y = rng.vector(2, 2.0);
        EXPECT_NEAR(sip(S, x, y), 4 * x[0] * y[0] + x[1] * y[1], 1e-6);
    }
}

TEST(Sip, PToTwoLimit) {
    const auto S = pnorm_space(3, 2.0 + 1e-9);
    Rng rng(Seed{17});
    for (int i = 0; i < 200; ++i) {
        Vector x = rng.vector(3, 1.0), y = rng.vector(3, 1.0);
        x = (1.0 / std::max(1.0, norm2(x))) * x;
        y = (1.0 / std::max(1.0, norm2(y))) * y;
        EXPECT_NEAR(sip(S, x, y), dot(x, y), 1e-6);
    }
}

TEST(Sip, Homogeneity) {
    Rng rng(Seed{23});
    for (const auto& S : {euclidean_space(3), pnorm_space(3, 3), pnorm_space(3, 1.5), max_space(3)}) {
        for (int i = 0; i < 100; ++i) {
            const Vector x = rng.vector(3, 2.0), y = rng.vector(3, 2.0);
            const double l = rng.signed_magnitude(0.1, 3), m = rng.signed_magnitude(0.1, 3);
            const double base = sip(S, x, y);
            EXPECT_NEAR(sip(S, l * x, m * y), l * m * base, 1e-9 * std::max(1.0, std::abs(l * m * base)));
        }
    }
}

TEST(SipAxioms, Euclidean) {
    const auto r = sip_axiom_report(euclidean_space(3), Seed{1}, 200);
    EXPECT_TRUE(r.all_pass());
    EXPECT_LE(r.worst(), 1e-12);
}

TEST(SipAxioms, PNorm3) {
    const auto r = sip_axiom_report(pnorm_space(3, 3), Seed{7}, 200);
    EXPECT_TRUE(r.all_pass());
    EXPECT_LE(r.worst(), 1e-5);
    const auto d = sip_axiom_report(pnorm_space(3, 3, SipMode::NormDerivative), Seed{7}, 200);
    EXPECT_TRUE(d.all_pass());
}

TEST(SipAxioms, MaxNorm) {
    const auto r = sip_axiom_report(max_space(3), Seed{7}, 200);
    EXPECT_LE(r.at("additivity_first").worst, 1e-12);
    EXPECT_LE(r.at("homogeneity_first").worst, 1e-12);
    EXPECT_LE(r.at("homogeneity_second").worst, 1e-12);
    EXPECT_LE(r.at("cauchy_schwarz").worst, 1e-12);
    EXPECT_TRUE(r.all_pass());
}

TEST(SipAxioms, DetectsBrokenProduct) {
    // Not homogeneous in the second argument.
    auto bad = [](const Vector& x, const Vector& y) { return dot(x, y) * norm2(y); };
    const auto r = sip_axiom_report_for(bad, 2, Seed{1}, 50, 1e-9);
    EXPECT_FALSE(r.all_pass());
    EXPECT_FALSE(r.at("homogeneity_second").pass());
    EXPECT_FALSE(r.at("homogeneity_second").witness.empty());
    EXPECT_THROW(sip_axiom_report(euclidean_space(2), Seed{1}, 0), DomainError);
}

TEST(NormFirstDerivative, Examples) {
    EXPECT_NEAR(norm_first_derivative(euclidean_space(2), {1, 0}, {1, 0}), 1.0, 1e-9);
    EXPECT_NEAR(norm_first_derivative(euclidean_space(2), {0, 1}, {1, 0}), 0.0, 1e-9);
    EXPECT_NEAR(norm_first_derivative(pnorm_space(2, 3), {1, 1}, {1, 0}), 1.0, 1e-6);
    EXPECT_THROW(norm_first_derivative(euclidean_space(2), {1, 0}, {0, 0}), DomainError);
}

TEST(NormFirstDerivative, SipIsNormTimesDerivative) {
    Rng rng(Seed{31});
    for (double p : {2.0, 3.0, 4.0, 1.5}) {
        const auto S = pnorm_space(3, p);
        for (int i = 0; i < 100; ++i) {
            const Vector x = rng.vector(3, 2.0);
            Vector y = rng.vector(3, 2.0);
            if (norm(S, y) < 0.1) continue;
            const double gap = std::abs(sip(S, x, y) - norm(S, y) * norm_first_derivative(S, x, y));
            EXPECT_LE(gap, 1e-5 * std::max(1.0, norm(S, x) * norm(S, y)));
        }
    }
}

TEST(NormSecondDerivative, Examples) {
    const auto E = euclidean_space(2);
    EXPECT_NEAR(norm_second_derivative(E, {0, 1}, {0, 1}, {1, 0}), 1.0, 1e-4);
    const Vector y{0.6, -1.3};
    for (const auto& S : {E, pnorm_space(2, 3), pnorm_space(2, 4)}) {
        const Vector u = (1.0 / norm(S, y)) * y;
        EXPECT_NEAR(norm_second_derivative(S, u, u, y), 0.0, 1e-4);
    }
    EXPECT_THROW(norm_second_derivative(E, {0, 1}, {0, 1}, {0, 0}), DomainError);
}

TEST(NormSecondDerivative, StepHalvingConsistency) {
    const auto S = pnorm_space(2, 4);
    const Vector x{0, 1}, y{1, 0};
    const double h = second_step(1.0);
    const double a = norm_second_derivative(S, x, x, y, h);
    const double b = norm_second_derivative(S, x, x, y, h / 2);
    EXPECT_LE(std::abs(a - b), 1e-3);
}

TEST(NormSecondDerivative, EuclideanAnalyticHessian) {
    // d^2 ||y|| [x, z] = (x.z - (x.y)(z.y)/|y|^2)/|y|
    Rng rng(Seed{41});
    const auto E = euclidean_space(3);
    for (int i = 0; i < 30; ++i) {
        const Vector x = rng.vector(3, 1.0), z = rng.vector(3, 1.0);
        Vector y = rng.vector(3, 1.0);
        if (norm2(y) < 0.3) continue;
        const double ny = norm2(y);
        const double expect = (dot(x, z) - dot(x, y) * dot(z, y) / (ny * ny)) / ny;
        EXPECT_NEAR(norm_second_derivative(E, x, z, y), expect, 1e-4);
    }
}

TEST(SipSecondArgDerivative, Examples) {
    Rng rng(Seed{43});
    const auto E = euclidean_space(3);
    for (int i = 0; i < 20; ++i) {
        const Vector x = rng.vector(3, 1.0), y = rng.vector(3, 1.0), z = rng.vector(3, 1.0);
        EXPECT_NEAR(sip_second_arg_derivative(E, x, y, z), dot(x, z), 1e-6);
    }
    EXPECT_EQ(sip_second_arg_derivative(E, {1, 0, 0}, {1, 0, 0}, {0, 0, 0}), 0.0);
    EXPECT_LE(theorem2_residual(pnorm_space(2, 3), {1, 0}, {1, 0}, {1, 0}), 1e-4);
    EXPECT_THROW(sip_second_arg_derivative(E, {1, 0, 0}, {0, 0, 0}, {1, 0, 0}), DomainError);
}

TEST(SecondArgIdentity, Examples) {
    EXPECT_LE(theorem2_residual(euclidean_space(2), {1, 2}, {1, 0}, {0, 1}), 1e-4);
    const Vector y{0.7, -0.4, 1.1}, z{0.2, 0.5, -0.9};
    for (const auto& S : {euclidean_space(3), pnorm_space(3, 3), pnorm_space(3, 4)})
        EXPECT_LE(theorem2_residual(S, y, y, z), 1e-4);
    EXPECT_THROW(theorem2_residual(euclidean_space(2), {1, 2}, {0, 0}, {0, 1}), DomainError);
}

TEST(SecondArgIdentity, SeededTriples) {
    for (double p : {2.0, 3.0, 4.0}) {
        const auto S = pnorm_space(3, p);
        Rng rng(Seed{11});
        double worst = 0;
        for (int i = 0; i < 100; ++i) {
            const Vector x = rng.vector(3, 1.0), z = rng.vector(3, 1.0);
            Vector y = rng.vector(3, 1.0);
            y = (rng.uniform(0.5, 2.0) / norm(S, y)) * y;
            worst = std::max(worst, theorem2_residual(S, x, y, z));
        }
        EXPECT_LE(worst, 1e-3) << "p=" << p;
    }
}

TEST(NathTransform, Examples) {
    const auto S = pnorm_space(3, 3);
    const Vector x{1, -2, 0.5}, y{0.3, 0.9, -1.2};
    EXPECT_DOUBLE_EQ(nath_transform(S, 2.0, x, y), sip(S, x, y));
    EXPECT_DOUBLE_EQ(nath_transform(euclidean_space(2), 4.0, {2, 0}, {2, 0}), 8.0);
    EXPECT_EQ(nath_transform(S, 3.0, x, {0, 0, 0}), 0.0);
    EXPECT_THROW(nath_transform(S, 0.5, x, y), DomainError);
}

// [y,y]^((p-2)/p) scales as |l|^(2(p-2)/p) under y -> l y.
TEST(NathTransform, HomogeneityInSecondArgument) {
    Rng rng(Seed{19});
    const auto S = pnorm_space(3, 3);
    for (double p : {1.5, 3.0, 4.0}) {
        for (int i = 0; i < 50; ++i) {
            const Vector x = rng.vector(3, 1.0), y = rng.vector(3, 1.0);
            const double l = rng.signed_magnitude(0.2, 2.0);
            const double expect = l * std::pow(std::abs(l), 2 * (p - 2) / p) * nath_transform(S, p, x, y);
            EXPECT_NEAR(nath_transform(S, p, x, l * y), expect, 1e-9 * std::max(1.0, std::abs(expect)));
        }
    }
}

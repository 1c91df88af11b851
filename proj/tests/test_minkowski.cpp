#include <gtest/gtest.h>

#include <cmath>

#include <sipmink/minkowski.hpp>

using namespace sipmink;

namespace {

GeneralizedMinkowskiSpace pnorm3_line() { return {pnorm_space(2, 3), euclidean_space(1)}; }

} // namespace

TEST(Split, Examples) {
    const auto M = pseudo_euclidean(2);
    const auto [s, t] = split(M, {1, 2, 3});
    EXPECT_EQ(s, (Vector{1, 2}));
    EXPECT_EQ(t, (Vector{3}));
    const auto [s0, t0] = split(M, {0, 0, 0});
    EXPECT_EQ(s0, (Vector{0, 0}));
    EXPECT_EQ(t0, (Vector{0}));
    const Vector v{4, -1, 2.5};
    const auto [a, b] = split(M, v);
    EXPECT_EQ(concat(a, b), v);
    EXPECT_THROW(split(M, {1, 2}), DimensionError);
}

TEST(SpaceShape, Predicates) {
    EXPECT_TRUE(pseudo_euclidean(3).space_time_model());
    EXPECT_FALSE(pseudo_euclidean(2, 2).space_time_model());
    EXPECT_TRUE(pseudo_euclidean(2, 2).pseudo_euclidean());
    EXPECT_FALSE(remark1_space().pseudo_euclidean());
    EXPECT_EQ(remark1_space().n(), 3u);
    EXPECT_EQ(remark1_space().k(), 2u);
}

TEST(ProductMinus, Examples) {
    const auto M = pseudo_euclidean(3);
    Rng rng(Seed{1});
    for (int i = 0; i < 20; ++i) {
        const Vector u = rng.vector(4, 2.0), v = rng.vector(4, 2.0);
        EXPECT_NEAR(product_minus(M, u, v), dot(u, v), 1e-12);
    }
    EXPECT_DOUBLE_EQ(product_minus(M, {0, 0, 0, 1}, {0, 0, 0, 1}), 1.0);
    const auto R = remark1_space();
    for (int i = 0; i < 20; ++i) {
        const Vector v = rng.vector(3, 2.0);
        const double m = std::max(std::abs(v[0]), std::abs(v[1]));
        EXPECT_NEAR(product_minus(R, v, v), m * m + v[2] * v[2], 1e-12);
    }
    EXPECT_THROW(product_minus(M, {1, 0, 0, 0}, {1, 0, 0}), DimensionError);
}

TEST(ProductPlus, Examples) {
    const auto M = pseudo_euclidean(3);
    EXPECT_DOUBLE_EQ(product_plus(M, {0, 0, 0, 1}, {0, 0, 0, 1}), -1.0);
    EXPECT_DOUBLE_EQ(product_plus(M, {1, 0, 0, 0}, {0, 0, 0, 1}), 0.0);
    const auto R = remark1_space();
    Rng rng(Seed{2});
    for (int i = 0; i < 20; ++i) {
        const Vector v = rng.vector(3, 2.0);
        const double m = std::max(std::abs(v[0]), std::abs(v[1]));
        EXPECT_NEAR(product_plus(R, v, v), m * m - v[2] * v[2], 1e-12);
    }
    EXPECT_DOUBLE_EQ(product_plus(R, {1, 1, 0}, {1, 1, 0}), 1.0);
    EXPECT_DOUBLE_EQ(product_plus(R, {0, 0, 1}, {0, 0, 1}), -1.0);
}

TEST(JOperator, Examples) {
    const auto M = pseudo_euclidean(2);
    EXPECT_EQ(j_operator(M, {1, 2, 3}), (Vector{1, 2, -3}));
    const Vector v{0.3, -4, 7};
    EXPECT_EQ(j_operator(M, j_operator(M, v)), v);
    EXPECT_THROW(j_operator(M, {1, 2}), DimensionError);
}

TEST(JOperator, SwapsProducts) {
    Rng rng(Seed{3});
    for (const auto& M : {pseudo_euclidean(2), remark1_space(), pnorm3_line(),
                          GeneralizedMinkowskiSpace(pnorm_space(2, 3), pnorm_space(2, 4))}) {
        for (int i = 0; i < 100; ++i) {
            const Vector v = rng.vector(M.n(), 2.0), w = rng.vector(M.n(), 2.0);
            EXPECT_NEAR(product_plus(M, v, w), product_minus(M, v, j_operator(M, w)), 1e-9);
            EXPECT_NEAR(product_minus(M, v, w), product_plus(M, v, j_operator(M, w)), 1e-9);
        }
    }
}

TEST(ProductMinus, IsASemiInnerProduct) {
    for (const auto& M : {pseudo_euclidean(2), remark1_space(), pnorm3_line()}) {
        const auto r = sip_axiom_report_for([&](const Vector& a, const Vector& b) { return product_minus(M, a, b); },
                                            M.n(), Seed{4}, 300, 1e-9);
        for (const auto& c : r.checks) EXPECT_TRUE(c.pass()) << M.describe() << " " << c.name << " " << c.worst;
    }
}

TEST(ProductPlus, SAndTArePythagoreanOrthogonal) {
    Rng rng(Seed{5});
    for (const auto& M : {pseudo_euclidean(2), remark1_space(), pnorm3_line()}) {
        for (int i = 0; i < 100; ++i) {
            const Vector s = concat(rng.vector(M.k(), 2.0), zeros(M.n() - M.k()));
            const Vector t = concat(zeros(M.k()), rng.vector(M.n() - M.k(), 2.0));
            EXPECT_NEAR(product_plus(M, s - t, s - t), product_plus(M, s, s) + product_plus(M, t, t), 1e-9);
        }
    }
}

TEST(Classify, Examples) {
    const auto M = pseudo_euclidean(2);
    EXPECT_EQ(classify(M, {1, 0, 0}), VectorClass::SpaceLike);
    EXPECT_EQ(classify(M, {1, 0, 1}), VectorClass::LightLike);
    EXPECT_EQ(classify(M, {0, 0, 1}), VectorClass::TimeLike);
    EXPECT_EQ(classify(remark1_space(), {1, 1, 0.5}), VectorClass::SpaceLike);
    EXPECT_THROW(classify(M, {1, 0}), DimensionError);
}

TEST(Classify, ScaleInvariant) {
    Rng rng(Seed{6});
    for (const auto& M : {pseudo_euclidean(3), remark1_space(), pnorm3_line()}) {
        for (int i = 0; i < 200; ++i) {
            const Vector v = rng.vector(M.n(), 1.0);
            const double l = rng.signed_magnitude(0.1, 10.0);
            EXPECT_EQ(classify(M, l * v), classify(M, v));
        }
        // A light-like vector stays light-like at every scale.
        Vector light = concat(unit(M.k(), 0), Vector{1.0});
        for (double l : {1e-3, 0.5, 2.0, 1e3}) EXPECT_EQ(classify(M, l * light), VectorClass::LightLike);
    }
}

TEST(Classify, LightLikeIsBoundaryOfTimeLike) {
    const auto M = remark1_space();
    Rng rng(Seed{7});
    for (int i = 0; i < 30; ++i) {
        const Vector s = rng.vector(2, 1.0);
        const Vector v = concat(s, Vector{norm_inf(s)});
        ASSERT_EQ(classify(M, v), VectorClass::LightLike);
        bool time = false, space = false;
        for (int j = 0; j < 400 && !(time && space); ++j) {
            const auto c = classify(M, v + rng.vector(3, 1e-3));
            time |= c == VectorClass::TimeLike;
            space |= c == VectorClass::SpaceLike;
        }
        EXPECT_TRUE(time && space);
    }
}

TEST(ConePart, Examples) {
    const auto M = pseudo_euclidean(1);
    EXPECT_EQ(cone_part(M, {0, 1}), ConePart::TPlus);
    EXPECT_EQ(cone_part(M, {0, -1}), ConePart::TMinus);
    EXPECT_EQ(cone_part(M, {1, 0}), ConePart::NotTimeLike);
    EXPECT_EQ(cone_part(M, {1, 1}), ConePart::NotTimeLike);
    EXPECT_THROW(cone_part(pseudo_euclidean(1, 2), {0, 1, 0}), UnsupportedError);
    EXPECT_STREQ(to_string(ConePart::TPlus), "TPlus");
    EXPECT_STREQ(to_string(VectorClass::LightLike), "LightLike");
}

TEST(ConeConvexity, NoViolations) {
    for (const auto& M : {pseudo_euclidean(2), remark1_space(), pnorm3_line()}) {
        const auto r = cone_convexity_check(M, Seed{42}, 500);
        EXPECT_EQ(r.at("convexity").violations, 0u);
        EXPECT_EQ(r.at("convexity").trials, 500u);
        EXPECT_EQ(r.at("scale_invariance").violations, 0u);
    }
    EXPECT_THROW(cone_convexity_check(pseudo_euclidean(2, 2), Seed{1}, 10), UnsupportedError);
}

TEST(ConeConvexity, DetectsNonConvexFutureSet) {
    // Oracle: in diag(1,1,-1) the union T+ u T- is not convex; mixing a future
    // and a past vector leaves the cone.
    const auto M = pseudo_euclidean(2);
    const Vector a{0, 0, 1}, b{0.1, 0, -1};
    EXPECT_EQ(cone_part(M, 0.5 * a + 0.5 * b), ConePart::NotTimeLike);
}

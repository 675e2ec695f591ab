#include <gtest/gtest.h>

#include <random>

#include "sixvertex/monodromy.hpp"
#include "sixvertex/vertex.hpp"

using namespace sixvertex;

TEST(Weights, Validation) {
    EXPECT_NO_THROW(VertexWeights{}.validate());
    EXPECT_THROW((VertexWeights{0, 0, 0, 0, 0, 0}.validate()), DomainError);
    EXPECT_THROW((VertexWeights{1, -0.1, 1, 1, 1, 1}.validate()), DomainError);
    EXPECT_THROW((VertexWeights{1, NAN, 1, 1, 1, 1}.validate()), DomainError);
}

TEST(Weights, FromFields) {
    const auto w = weights_from_fields(1, 1, 1, {});
    for (double x : w.as_array()) EXPECT_EQ(x, 1.0);
    const auto w2 = weights_from_fields(2, 1, 1, {1.0, 0.0, 1.0});
    EXPECT_DOUBLE_EQ(w2.a1, 2 * std::exp(1.0));
    EXPECT_DOUBLE_EQ(w2.a2, 2 * std::exp(-1.0));
    EXPECT_NEAR(w2.a1 * w2.a2, 4.0, 1e-14);
    std::mt19937_64 g(5);
    std::uniform_real_distribution<double> d(-1, 1), pos(0.2, 2);
    for (int t = 0; t < 20; ++t) {
        const double a = pos(g), b = pos(g), c = pos(g);
        const auto w3 = weights_from_fields(a, b, c, {d(g), d(g), pos(g)});
        EXPECT_NEAR(w3.a1 * w3.a2, a * a, 1e-12);
        EXPECT_NEAR(w3.b1 * w3.b2, b * b, 1e-12);
        EXPECT_NEAR(w3.c1 * w3.c2, c * c, 1e-12);
    }
    EXPECT_THROW(weights_from_fields(-1, 1, 1, {}), DomainError);
    EXPECT_FALSE(field_warnings({0, 0, 0.5}).empty());
    EXPECT_TRUE(field_warnings({0, 0, 1.5}).empty());
}

TEST(Weights, DisorderDelta) {
    EXPECT_DOUBLE_EQ(disorder_delta(VertexWeights{}), 0.5);
    const auto ff = weights_from_fields(1, 1, std::sqrt(2.0), {});
    EXPECT_NEAR(disorder_delta(ff), 0.0, 1e-15);
    const double eta = 0.9;
    double lo = 1e9, hi = -1e9;
    for (int i = 1; i < 20; ++i) {
        const double u = eta * i / 20.0;
        const auto bw = baxter_weights({u, eta, Convention::Hyperbolic});
        const auto w = weights_from_fields(bw.a.real(), bw.b.real(), bw.c.real(), {});
        const double x = disorder_delta(w);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    EXPECT_LT(hi - lo, 1e-10);
    EXPECT_NEAR(lo, -std::cosh(eta), 1e-12);
    EXPECT_THROW(disorder_delta(VertexWeights{0, 1, 1, 1, 1, 1}), DomainError);
}

TEST(Weights, BaxterSpecialPoints) {
    const double eta = 0.7;
    for (auto conv : {Convention::Trigonometric, Convention::Hyperbolic}) {
        const auto w0 = baxter_weights({0.0, eta, conv});
        EXPECT_EQ(w0.b, cplx(0));
        EXPECT_EQ(w0.a, sfun(conv, eta));
        EXPECT_EQ(w0.c, sfun(conv, eta));
        const auto wh = baxter_weights({eta / 2, eta, conv});
        EXPECT_NEAR(std::abs(wh.a - wh.b), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(wh.a - sfun(conv, eta / 2)), 0.0, 1e-15);
    }
    EXPECT_FALSE(spectral_warnings({0.9, 0.7, Convention::Trigonometric}).empty());
    EXPECT_TRUE(spectral_warnings({0.3, 0.7, Convention::Trigonometric}).empty());
}

TEST(RMatrix, Structure) {
    const auto r = build_r_matrix(BaseWeights{2.0, 3.0, 0.0});
    EXPECT_EQ(max_abs_diff(r, ComplexMatrix::diagonal({2.0, 3.0, 3.0, 2.0})), 0.0);
    const auto s = build_r_matrix(BaseWeights{2.0, 3.0, 5.0});
    EXPECT_EQ(s(1, 2), cplx(5));
    EXPECT_EQ(s(2, 1), cplx(5));
    const auto v = vertex_matrix({1, 2, 3, 4, 5, 6});
    EXPECT_EQ(v(0, 0), cplx(1));
    EXPECT_EQ(v(3, 3), cplx(2));
    EXPECT_EQ(v(1, 1), cplx(3));
    EXPECT_EQ(v(2, 2), cplx(4));
    EXPECT_EQ(v(2, 1), cplx(5));
    EXPECT_EQ(v(1, 2), cplx(6));
}

TEST(RMatrix, FieldDressing) {
    std::mt19937_64 g(6);
    std::uniform_real_distribution<double> d(-1, 1);
    auto dh = [](double h) { return ComplexMatrix::diagonal({std::exp(h / 2), std::exp(-h / 2)}); };
    for (auto conv : {Convention::Trigonometric, Convention::Hyperbolic})
        for (int t = 0; t < 10; ++t) {
            const SpectralParams p{{d(g), d(g)}, 0.7, conv};
            const FieldParams f{d(g), d(g), 1.0};
            const auto lhs = build_r_matrix(p, f);
            const auto dd = kron(dh(f.H), dh(f.V));
            EXPECT_LT(max_abs_diff(lhs, dd * build_r_matrix(p) * dd), 1e-13);
        }
}

TEST(Ybe, BothSignsOnRandomGrid) {
    std::mt19937_64 g(7);
    std::uniform_real_distribution<double> d(-1, 1);
    for (auto conv : {Convention::Trigonometric, Convention::Hyperbolic})
        for (double eta : {0.3, 0.7, 1.1}) {
            std::vector<std::pair<cplx, cplx>> grid;
            for (int i = 0; i < 5; ++i) grid.push_back({cplx(d(g), 0.2 * d(g)), cplx(d(g), 0.2 * d(g))});
            for (const auto& s : ybe_sweep(grid, eta, conv)) EXPECT_LT(s.max_residual, 1e-12);
        }
}

TEST(Ybe, DegeneratePointAndDetector) {
    EXPECT_LT(ybe_residual(0.0, 0.0, {0.0, 0.7, Convention::Trigonometric}, kCalibratedSign), 1e-13);
    auto bad = [](cplx x) {
        auto r = build_r_matrix(SpectralParams{x, 0.7, Convention::Trigonometric}, {}, kCalibratedSign);
        r(1, 1) += 0.1;
        return r;
    };
    EXPECT_GT(ybe_residual_family(bad, 0.3, 0.2), 1e-3);
}

TEST(Ybe, LegEmbedding) {
    EXPECT_EQ(max_abs_diff(swap23() * swap23(), ComplexMatrix::identity(8)), 0.0);
    const auto r = build_r_matrix(BaseWeights{1.0, 2.0, 3.0});
    EXPECT_EQ(max_abs_diff(embed_legs(r, 2, 3), kron(ComplexMatrix::identity(2), r)), 0.0);
    EXPECT_THROW(embed_legs(r, 3, 1), IndexError);
    EXPECT_THROW(embed_legs(ComplexMatrix::identity(2), 1, 2), ShapeError);
}

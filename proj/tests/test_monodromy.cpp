#include <gtest/gtest.h>

#include <random>

#include "sixvertex/lemma.hpp"
#include "sixvertex/monodromy.hpp"
#include "sixvertex/reference.hpp"

using namespace sixvertex;

namespace {

ModelParams random_params(int n, std::mt19937_64& g, Convention conv = Convention::Trigonometric, double H = 0.0) {
    std::uniform_real_distribution<double> d(-0.2, 0.2), e(0.3, 1.2);
    ModelParams p;
    p.eta = e(g);
    p.H = H;
    p.convention = conv;
    for (int k = 0; k < n; ++k) p.v.emplace_back(d(g), 0.0);
    return p;
}

cplx random_u(std::mt19937_64& g) {
    std::uniform_real_distribution<double> d(-1, 1);
    return {d(g), 0.3 * d(g)};
}

}  // namespace

TEST(LOperator, Entries) {
    ModelParams p{0.63, 0.0, 0.0, {0.12, -0.05}, Convention::Trigonometric, 1.4};
    const cplx u(0.41, 0.07);
    const auto l = local_l_operator(u, 2, p);
    const cplx x = u + 0.05;
    EXPECT_NEAR(std::abs(l.e[0][0](0, 0) - std::sin(x + 0.63)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(l.e[0][0](1, 1) - std::sin(x - 0.63)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(l.e[1][1](0, 0) - std::sin(x - 0.63)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(l.e[1][1](1, 1) - std::sin(x + 0.63)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(l.e[0][1](0, 1) - std::sin(1.26) * 1.4), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(l.e[1][0](1, 0) - std::sin(1.26) / 1.4), 0.0, 1e-15);
    EXPECT_EQ(max_abs(l.e[0][1]), std::abs(l.e[0][1](0, 1)));
    EXPECT_THROW(local_l_operator(u, 3, p), IndexError);
}

TEST(LOperator, SpecialValues) {
    ModelParams p = homogeneous(2, 0.0, Convention::Trigonometric);
    const cplx u(0.3, 0.1);
    const auto l = build_l_operator(u, 1, p);
    EXPECT_LT(max_abs_diff(l[0][0], std::sin(u) * ComplexMatrix::identity(4)), 1e-15);
    EXPECT_EQ(max_abs(l[0][1]), 0.0);
    EXPECT_EQ(max_abs(l[1][0]), 0.0);
    ModelParams q = homogeneous(1, 0.37, Convention::Trigonometric);
    const auto l1 = build_l_operator(kPi / 2, 1, q);
    EXPECT_LT(max_abs_diff(l1[0][0], std::cos(0.37) * ComplexMatrix::identity(2)), 1e-15);
}

TEST(Monodromy, SingleSiteAndVanishingEta) {
    std::mt19937_64 g(11);
    auto p = random_params(1, g);
    const cplx u = random_u(g);
    const auto t = build_monodromy(u, p);
    const auto l = build_l_operator(u, 1, p);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) EXPECT_EQ(max_abs_diff(t.at(i, j), l[i][j]), 0.0);
    auto q = random_params(4, g);
    q.eta = 0.0;
    const auto t0 = build_monodromy(u, q);
    EXPECT_EQ(max_abs(t0.B), 0.0);
    EXPECT_EQ(max_abs(t0.C), 0.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) EXPECT_EQ(t0.at(i, j).rows(), 16u);
    EXPECT_THROW(build_monodromy(u, ModelParams{}), DomainError);
}

TEST(Monodromy, TwoSiteABlock) {
    std::mt19937_64 g(12);
    const auto p = random_params(2, g);
    const cplx u = random_u(g);
    const auto s = p.space();
    const cplx s2 = std::sin(2.0 * p.eta);
    const auto expect = site_trig(u, p.v[1], p.eta, +1, 2, s, p.convention) * site_trig(u, p.v[0], p.eta, +1, 1, s, p.convention) +
                        s2 * s2 * embed_site(SiteOperator::sigma_plus(), 2, s) * embed_site(SiteOperator::sigma_minus(), 1, s);
    EXPECT_LT(max_abs_diff(build_monodromy(u, p).A, expect), 1e-14);
}

TEST(Monodromy, RecursionMatchesKroneckerOracle) {
    std::mt19937_64 g(13);
    for (auto conv : {Convention::Trigonometric, Convention::Hyperbolic})
        for (int n = 1; n <= 6; ++n) {
            auto p = random_params(n, g, conv, 0.1);
            p.lambda_c = 1.25;
            const cplx u = random_u(g);
            EXPECT_LT(reference::monodromy_deviation(build_monodromy(u, p), reference::monodromy(u, p)), 1e-12) << n;
        }
}

TEST(Monodromy, RecursionBaseCaseAndOrder) {
    std::mt19937_64 g(14);
    auto p = random_params(2, g);
    const cplx u = random_u(g);
    auto t = twist_blocks(u, p);
    t = recursion_step(t, u, 2, p);
    t = recursion_step(t, u, 1, p);
    EXPECT_LT(reference::monodromy_deviation(t, build_monodromy(u, p)), 1e-13);
    auto p3 = random_params(3, g);
    const auto a = build_monodromy(u, p3), b = build_monodromy(u, p3, ProductOrder::SiteOneLeftmost);
    EXPECT_GT(max_abs_diff(a.B, b.B), 1e-6);
    EXPECT_THROW(recursion_step(t, u, 1, p3), ShapeError);
}

TEST(Monodromy, VanishingEtaRecursionIsScalar) {
    ModelParams p = homogeneous(3, 0.0, Convention::Trigonometric);
    p.v = {0.1, -0.2, 0.3};
    const cplx u(0.4, 0.0);
    auto t = twist_blocks(u, p);
    cplx scalar = 1.0;
    for (int k = 3; k >= 1; --k) {
        t = recursion_step(t, u, k, p);
        scalar *= std::sin(u - p.v[k - 1]);
        EXPECT_EQ(max_abs(t.B), 0.0);
        EXPECT_EQ(max_abs(t.C), 0.0);
        EXPECT_LT(max_abs_diff(t.A, scalar * ComplexMatrix::identity(8)), 1e-15);
    }
}

TEST(Transfer, SingleSite) {
    ModelParams p = homogeneous(1, 0.55, Convention::Trigonometric);
    p.v = {0.2};
    const cplx u(0.7, 0.0);
    EXPECT_LT(max_abs_diff(transfer_matrix(u, p), 2.0 * std::sin(u - 0.2) * std::cos(0.55) * ComplexMatrix::identity(2)), 1e-15);
}

TEST(Transfer, MagnetizationAndTrace) {
    std::mt19937_64 g(15);
    for (int n = 2; n <= 5; ++n) {
        auto p = random_params(n, g, Convention::Trigonometric, 0.2);
        p.V = 0.3;
        const cplx u = random_u(g);
        const auto t = transfer_matrix(u, p);
        EXPECT_LT(max_abs(commutator(t, total_sigma_z(p.space()))), 1e-12);
        const auto m = build_monodromy(u, p);
        p.V = 0.0;
        const auto t0 = transfer_matrix(u, p);
        EXPECT_LT(std::abs(trace(t0) - trace(m.A) - trace(m.D)), 1e-12);
    }
}

TEST(Transfer, Commutativity) {
    std::mt19937_64 g(16);
    for (int n = 2; n <= 6; ++n) {
        auto p = random_params(n, g, Convention::Trigonometric, 0.15);
        p.lambda_c = 1.3;
        const cplx u = random_u(g), up = random_u(g);
        EXPECT_LT(transfer_commutator_residual(u, up, p), 1e-10) << n;
        EXPECT_EQ(transfer_commutator_residual(u, u, p), 0.0);
        auto q = p;
        for (auto& v : q.v) v += 0.3 * random_u(g);
        EXPECT_GT(transfer_commutator_residual(u, p, up, q), 1e-2) << n;
    }
}

TEST(Rtt, CalibratedConvention) {
    std::mt19937_64 g(17);
    for (auto conv : {Convention::Trigonometric, Convention::Hyperbolic})
        for (int n = 1; n <= 4; ++n) {
            auto p = random_params(n, g, conv, 0.1);
            const cplx u = random_u(g), up = random_u(g);
            EXPECT_LT(rtt_residual(u, up, p), 1e-10);
            EXPECT_GT(rtt_residual(u, up, p, BaxterSign::Minus), 1e-3);
        }
    auto p0 = random_params(3, g);
    p0.eta = 0.0;
    EXPECT_LT(rtt_residual(0.3, -0.4, p0), 1e-13);
}

TEST(Rtt, SignCalibration) {
    for (auto conv : {Convention::Trigonometric, Convention::Hyperbolic}) {
        const auto cal = calibrate_sign_convention(conv);
        EXPECT_EQ(cal.selected, kCalibratedSign);
        EXPECT_LT(cal.ybe_plus, 1e-12);
        EXPECT_LT(cal.ybe_minus, 1e-12);  // both variants are YBE solutions
        EXPECT_LT(cal.rtt_plus, 1e-12);
        EXPECT_GT(cal.rtt_minus, 1e-3);
    }
}

TEST(Sixteen, Report) {
    std::mt19937_64 g(18);
    for (int n = 2; n <= 5; ++n) {
        const auto p = random_params(n, g, Convention::Trigonometric, 0.1);
        const auto rows = sixteen_relations_report(random_u(g), random_u(g), p);
        ASSERT_EQ(rows.size(), 16u);
        for (std::size_t i = 0; i < 16; ++i) {
            EXPECT_EQ(rows[i].label, int(i) + 1);
            EXPECT_EQ(rows[i].x, "ABCD"[i / 4]);
            EXPECT_EQ(rows[i].y, "ABCD"[i % 4]);
            EXPECT_EQ(rows[i].predicted_vanishing, i % 5 == 0);
            if (rows[i].predicted_vanishing) EXPECT_LT(rows[i].norm, 1e-10);
            EXPECT_TRUE(rows[i].pass);
        }
        EXPECT_GT(rows[1].norm, 1e-6);  // [A, B] does not vanish
    }
}

TEST(Expansion, FactorStructure) {
    std::mt19937_64 g(19);
    const auto p = random_params(5, g);
    const cplx u = random_u(g);
    const auto f = expansion_factors(u, p, 5);
    EXPECT_EQ(max_abs_diff(f.A1, f.C1), 0.0);
    EXPECT_EQ(max_abs_diff(f.A2, f.C2), 0.0);
    EXPECT_EQ(max_abs_diff(f.B3, f.D3), 0.0);
    EXPECT_THROW(expansion_factors(u, random_params(3, g), 3), DomainError);
    EXPECT_THROW(expansion_factors(u, p, 4), ShapeError);
}

TEST(Expansion, VanishingEta) {
    ModelParams p = homogeneous(5, 0.0, Convention::Trigonometric);
    p.v = {0.1, 0.0, -0.1, 0.2, 0.05};
    const cplx u(0.3, 0.1);
    const auto f = expansion_factors(u, p, 5, IndexFloor::One);
    EXPECT_EQ(max_abs(f.A1 * std::pow(std::sin(0.0), 2)), 0.0);
    EXPECT_GT(max_abs(f.A2), 0.0);
    // the n'=1 term carries s(2 eta)^0 and survives: m = 1, n' = 1
    const auto s = p.space();
    const auto boundary = site_trig(u, p.v[0], 0.0, +1, 1, s, p.convention) * embed_site(SiteOperator::sigma_plus(), 1, s);
    EXPECT_GT(max_abs(f.A3), 0.1);
    EXPECT_LT(max_abs_diff(f.A3, boundary), 1e-15);
    EXPECT_THROW(expansion_factors(u, p, 5, IndexFloor::Zero), DomainError);
}

TEST(Expansion, AuditIsReportOnly) {
    std::mt19937_64 g(20);
    for (int n : {4, 5}) {
        const auto p = random_params(n, g);
        const auto rows = lemma_audit(random_u(g), p, n);
        ASSERT_EQ(rows.size(), 16u);
        for (const auto& r : rows) {
            EXPECT_TRUE(r.note.empty());
            EXPECT_TRUE(std::isfinite(r.discrepancy));
            EXPECT_GE(r.relative, 0.0);
        }
        // measured: no reading reproduces the product
        int agreeing = 0;
        for (const auto& r : rows) agreeing += r.agrees;
        EXPECT_EQ(agreeing, 0);
    }
}

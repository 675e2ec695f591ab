#include <gtest/gtest.h>

#include <random>

#include "sixvertex/bethe.hpp"

using namespace sixvertex;

namespace {

const cplx I(0, 1);

BetheConfig config(int N, int n, Convention conv, double H = 0.0, std::uint64_t seed = 1) {
    std::mt19937_64 g(seed);
    std::uniform_real_distribution<double> d(-0.2, 0.2);
    BetheConfig c;
    c.N = N;
    c.n = n;
    c.eta = 0.7;
    c.H = H;
    c.convention = conv;
    for (int k = 0; k < N; ++k) c.v.emplace_back(d(g), 0.0);
    return c;
}

}  // namespace

TEST(BetheFunctions, Psi) {
    const cplx a(0.3, 0.1), eta = 0.8;
    EXPECT_LT(std::abs(psi_plus(a, I * a, eta)), 1e-15);
    std::mt19937_64 g(21);
    std::uniform_real_distribution<double> d(-0.6, 0.6);
    for (int t = 0; t < 10; ++t) {
        const cplx al(d(g), d(g)), u(d(g), d(g));
        const cplx direct = std::sinh(eta / 2.0 + u - I * al) / std::sinh(eta / 2.0 - u + I * al);
        EXPECT_LT(std::abs(std::exp(psi_plus(al, u, eta)) - direct), 1e-12 * std::abs(direct));
    }
    EXPECT_THROW(psi_minus(a, eta / 2.0 + I * a, eta), DomainError);
}

TEST(BetheFunctions, Theta) {
    const cplx eta = 0.9;
    EXPECT_LT(std::abs(theta(0.4, 0.4, eta) - 1.0), 1e-15);
    std::mt19937_64 g(22);
    std::uniform_real_distribution<double> d(-1, 1);
    for (int t = 0; t < 10; ++t) {
        const cplx x(d(g), d(g));
        EXPECT_LT(std::abs(theta(x, 0.0, eta) * theta(-x, 0.0, eta) - 1.0), 1e-12);
    }
    for (int t = 0; t < 10; ++t) {
        const double a = 0.5 * d(g), b = 0.5 * d(g);
        EXPECT_LT(std::abs(theta(a, b, eta) - theta_from_momentum(a, b, eta)), 1e-10);
    }
}

TEST(BetheFunctions, Momentum) {
    const cplx eta = 0.6;
    EXPECT_EQ(momentum_p(0.0, eta), cplx(0));
    std::mt19937_64 g(23);
    std::uniform_real_distribution<double> d(-0.5, 0.5);
    for (int t = 0; t < 10; ++t) {
        const cplx a(d(g), 0.2 * d(g));
        EXPECT_LT(std::abs(momentum_p(-a, eta) + momentum_p(a, eta)), 1e-12);
    }
    EXPECT_THROW(momentum_p(-eta / (2.0 * I), eta), DomainError);  // i alpha = -eta/2
}

TEST(BetheEquations, Residuals) {
    auto c = config(2, 0, Convention::Hyperbolic);
    EXPECT_TRUE(bethe_residual({{}, c}).empty());
    auto c0 = config(2, 1, Convention::Hyperbolic);
    c0.v = {0.0, 0.0};
    EXPECT_LT(max_bethe_residual({{0.0}, c0}), 1e-15);
    const cplx a(0.2, 0.05);
    const cplx r = std::sinh(0.35 + I * a) / std::sinh(0.35 - I * a);
    EXPECT_LT(std::abs(bethe_residual({{a}, c0})[0] - (r * r - 1.0)), 1e-12);
}

TEST(BetheSolver, VacuumAndDedup) {
    const auto c = config(3, 0, Convention::Hyperbolic);
    const auto s = solve_bethe(c, default_seeds(0));
    ASSERT_EQ(s.solutions.size(), 1u);
    EXPECT_TRUE(s.solutions[0].alpha.empty());
    const auto c1 = config(2, 1, Convention::Hyperbolic, 0.1);
    const auto one = solve_bethe(c1, {{cplx(0.1, 0.0)}});
    const auto two = solve_bethe(c1, {{cplx(0.1, 0.0)}, {cplx(0.1, 0.0)}});
    ASSERT_EQ(one.solutions.size(), 1u);
    EXPECT_EQ(two.solutions.size(), 1u);
    EXPECT_THROW(solve_bethe(config(2, 3, Convention::Hyperbolic), {}), DomainError);
}

TEST(BetheSolver, ReferenceConfig) {
    for (auto conv : {Convention::Trigonometric, Convention::Hyperbolic}) {
        const auto c = reference_bethe_config(conv);
        const auto s = solve_bethe(c, default_seeds(1));
        ASSERT_FALSE(s.solutions.empty());
        for (const auto& r : s.solutions) {
            EXPECT_LT(max_bethe_residual(r), 1e-10);
            EXPECT_TRUE(roots_distinct(r));
            EXPECT_LT(eigencheck(r, cplx(0.31, 0.07)), 1e-8);
        }
    }
}

TEST(BetheRoots, Canonical) {
    const auto c = config(3, 2, Convention::Hyperbolic);
    const BetheRoots r{{cplx(0.5, 0.1), cplx(-0.2, 0.3)}, c};
    const auto k = canonicalize(r);
    EXPECT_LT(k.alpha[0].real(), k.alpha[1].real());
    EXPECT_TRUE(same_root_set(r, k));
    EXPECT_FALSE(roots_distinct(BetheRoots{{cplx(0.1), cplx(0.1)}, c}));
}

TEST(Eigenvalue, Vacuum) {
    for (auto conv : {Convention::Trigonometric, Convention::Hyperbolic}) {
        const auto c = config(3, 0, conv, 0.12);
        const BetheRoots vac{{}, c};
        const cplx u(0.23, 0.11);
        cplx l0 = std::exp(3 * c.H), second = std::exp(-3 * c.H);
        for (auto v : c.v) {
            l0 *= sfun(conv, c.eta - u + v);
            second *= sfun(conv, u - v);
        }
        l0 += second;
        EXPECT_LT(std::abs(eigenvalue_lambda(vac, u) - l0), 1e-14);
        const auto t = bethe_transfer_matrix(c, u);
        const auto psi = bethe_state(vac);
        EXPECT_EQ(psi, all_down(QuantumSpace(3)));
        EXPECT_LT(std::abs(t(7, 7) - l0), 1e-12);
        EXPECT_LT(eigencheck(vac, u), 1e-12);
    }
}

TEST(Eigenvalue, OneMagnonOnShell) {
    for (auto conv : {Convention::Trigonometric, Convention::Hyperbolic})
        for (int N : {2, 3}) {
            const auto c = config(N, 1, conv, 0.0, 30 + N);
            const auto s = solve_bethe(c, default_seeds(1));
            ASSERT_FALSE(s.solutions.empty());
            for (const auto& r : s.solutions) {
                const auto psi = bethe_state(r);
                double outside = 0;
                for (std::size_t i = 0; i < psi.size(); ++i)
                    if (down_count(i) != N - 1) outside += std::norm(psi[i]);
                EXPECT_LT(std::sqrt(outside), 1e-13);
                for (cplx u : {cplx(0.3, 0.1), cplx(-0.4, 0.02), cplx(0.8, -0.2)}) {
                    EXPECT_LT(eigencheck(r, u), 1e-8);
                    const auto tpsi = matvec(bethe_transfer_matrix(c, u), psi);
                    const cplx ray = inner(psi, tpsi) / inner(psi, psi);
                    EXPECT_LT(std::abs(eigenvalue_lambda(r, u) - ray), 1e-8 * std::abs(ray));
                }
            }
        }
}

TEST(Eigenvalue, TwoMagnonState) {
    const auto c = config(3, 2, Convention::Hyperbolic, 0.0, 40);
    const auto s = solve_bethe(c, default_seeds(2, 3));
    ASSERT_FALSE(s.solutions.empty());
    for (const auto& r : s.solutions) {
        ComplexVector psi;
        try {
            psi = bethe_state(r);
        } catch (const DegeneracyError&) {
            continue;
        }
        BetheRoots swapped = r;
        std::swap(swapped.alpha[0], swapped.alpha[1]);
        const auto phi = bethe_state(swapped);
        const double overlap = std::abs(inner(psi, phi)) / (vector_norm(psi) * vector_norm(phi));
        EXPECT_LT(std::abs(overlap - 1.0), 1e-10);
        EXPECT_LT(eigencheck(r, cplx(0.2, 0.1)), 1e-8);
    }
}

TEST(Eigenvalue, OffShellDetector) {
    const auto c = config(3, 1, Convention::Hyperbolic, 0.0, 50);
    EXPECT_GT(eigencheck({{cplx(0.37, 0.21)}, c}, cplx(0.3, 0.1)), 1e-2);
}

TEST(Eigenvalue, RootArgumentCalibration) {
    for (auto conv : {Convention::Trigonometric, Convention::Hyperbolic}) {
        const auto cal = calibrate_root_argument(conv);
        EXPECT_EQ(cal.selected, kCalibratedRootArgument);
        const auto best = cal.residual[static_cast<int>(kCalibratedRootArgument)];
        EXPECT_LT(best, 1e-8);
        for (std::size_t i = 0; i < cal.residual.size(); ++i)
            if (kRootArguments[i] != kCalibratedRootArgument) EXPECT_GT(cal.residual[i], 1e-3);
    }
}

TEST(LogDerivatives, FiniteDifference) {
    std::mt19937_64 g(24);
    std::uniform_real_distribution<double> d(-0.5, 0.5);
    const double h = 1e-5;
    for (auto conv : {Convention::Trigonometric, Convention::Hyperbolic})
        for (int t = 0; t < 10; ++t) {
            const cplx a(d(g), d(g)), v(d(g), 0.2 * d(g)), b(d(g), d(g)), eta = 0.7;
            const auto U = log_derivative_functions(a, v, b, eta, conv);
            const auto f0 = f_values(a, v, b, eta, conv);
            const auto vp = f_values(a, v + h, b, eta, conv), vm = f_values(a, v - h, b, eta, conv);
            const auto bp = f_values(a, v, b + h, eta, conv), bm = f_values(a, v, b - h, eta, conv);
            EXPECT_LT(std::abs((vp.F1 - vm.F1) / (2 * h * f0.F1) - U.U1), 1e-6);
            EXPECT_LT(std::abs((vp.F2 - vm.F2) / (2 * h * f0.F2) - U.U2), 1e-6);
            EXPECT_LT(std::abs((bp.F3 - bm.F3) / (2 * h * f0.F3) - U.U3), 1e-6);
            EXPECT_LT(std::abs((bp.F4 - bm.F4) / (2 * h * f0.F4) - U.U4), 1e-6);
            // dF1/dF2 along v
            const cplx chain = (U.U1 * f0.F1) / (U.U2 * f0.F2);
            EXPECT_LT(std::abs(chain - (vp.F1 - vm.F1) / (vp.F2 - vm.F2)), 1e-8 * std::max(1.0, std::abs(chain)));
        }
}

TEST(LogDerivatives, CoincidentRoots) {
    const cplx eta = 0.7;
    const auto U = log_derivative_functions(0.2, 0.05, 0.2, eta, Convention::Hyperbolic);
    EXPECT_LT(std::abs(U.U3 - (-I / std::tanh(eta))), 1e-14);
}

TEST(BasisCoefficients, Decompositions) {
    std::mt19937_64 g(25);
    std::uniform_real_distribution<double> d(-0.5, 0.5);
    for (auto conv : {Convention::Trigonometric, Convention::Hyperbolic})
        for (int t = 0; t < 10; ++t) {
            const cplx a(d(g), d(g)), v(d(g), 0.2 * d(g)), b(d(g), d(g)), eta = 0.7;
            const auto S = basis_coefficients(a, v, b, eta, conv);
            const auto f = f_values(a, v, b, eta, conv);
            EXPECT_LT(std::abs(S.S1 * f.F1 + S.S2 * f.F2 - f.F1 / f.F2), 1e-10 * std::max(1.0, std::abs(f.F1 / f.F2)));
            EXPECT_LT(std::abs(S.S3 * f.F3 + S.S4 * f.F4 - f.F3 / f.F4), 1e-10 * std::max(1.0, std::abs(f.F3 / f.F4)));
        }
}

TEST(BasisCoefficients, Poles) {
    const cplx eta = 0.7, v = 0.1;
    // exp(2(eta/2 + i alpha - v)) = 1
    const cplx alpha = (v - eta / 2.0) / I;
    EXPECT_THROW(basis_coefficients(alpha, v, 0.3, eta, Convention::Hyperbolic), DomainError);
}

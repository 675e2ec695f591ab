#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "monodromy.hpp"

namespace sixvertex {

struct BetheConfig {
    int N = 2;
    int n = 1;
    cplx eta = 0.6;
    double H = 0.0;
    std::vector<cplx> v;
    Convention convention = Convention::Hyperbolic;

    void validate() const {
        if (N < 1) throw DomainError("BetheConfig: N must be >= 1");
        if (n < 0 || n > N) throw DomainError("BetheConfig: need 0 <= n <= N");
        if (static_cast<int>(v.size()) != N) throw ShapeError("BetheConfig: inhomogeneity count differs from N");
    }
};

struct BetheRoots {
    std::vector<cplx> alpha;
    BetheConfig config;
};

namespace detail {

inline cplx checked_ratio(cplx num, cplx den, const std::string& what) {
    if (std::abs(den) < 1e-14) throw DomainError("pole: " + what);
    return num / den;
}

// shift alpha into the fundamental window of the period that leaves every ratio invariant
inline cplx reduce_root(cplx a, Convention conv) {
    auto wrap = [](double x) {
        double y = std::fmod(x + kPi / 2, kPi);
        if (y < 0) y += kPi;
        return y - kPi / 2;
    };
    if (conv == Convention::Hyperbolic) return {wrap(a.real()), a.imag()};
    return {a.real(), wrap(a.imag())};
}

inline double periodic_distance(cplx a, cplx b, Convention conv) {
    const cplx d = reduce_root(a - b, conv);
    return std::abs(d);
}

}  // namespace detail

inline BetheRoots canonicalize(BetheRoots r) {
    for (auto& a : r.alpha) a = detail::reduce_root(a, r.config.convention);
    std::sort(r.alpha.begin(), r.alpha.end(), [](cplx x, cplx y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    return r;
}

inline bool roots_distinct(const BetheRoots& r, double tol = 1e-8) {
    for (std::size_t i = 0; i < r.alpha.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (detail::periodic_distance(r.alpha[i], r.alpha[j], r.config.convention) < tol) return false;
    return true;
}

inline bool same_root_set(const BetheRoots& x, const BetheRoots& y, double tol = 1e-6) {
    if (x.alpha.size() != y.alpha.size()) return false;
    std::vector<bool> used(y.alpha.size(), false);
    for (auto a : x.alpha) {
        bool hit = false;
        for (std::size_t j = 0; j < y.alpha.size() && !hit; ++j)
            if (!used[j] && detail::periodic_distance(a, y.alpha[j], x.config.convention) < tol) used[j] = hit = true;
        if (!hit) return false;
    }
    return true;
}

// ---- auxiliary functions ----

inline cplx psi_plus(cplx alpha, cplx u, cplx eta, Convention conv = Convention::Hyperbolic) {
    const cplx I(0, 1);
    return std::log(detail::checked_ratio(sfun(conv, eta / 2.0 + u - I * alpha), sfun(conv, eta / 2.0 - u + I * alpha),
                                          "psi_plus denominator s(eta/2 - u + i alpha)"));
}

inline cplx psi_minus(cplx alpha, cplx u, cplx eta, Convention conv = Convention::Hyperbolic) {
    const cplx I(0, 1);
    return std::log(detail::checked_ratio(sfun(conv, 1.5 * eta - u + I * alpha), sfun(conv, u - eta / 2.0 - I * alpha),
                                          "psi_minus denominator s(u - eta/2 - i alpha)"));
}

inline cplx theta(cplx alpha, cplx beta, cplx eta, Convention conv = Convention::Hyperbolic) {
    const cplx z = cplx(0, 1) * (alpha - beta);
    return -detail::checked_ratio(sfun(conv, z + eta), sfun(conv, z - eta), "theta denominator s(i(alpha-beta) - eta)");
}

inline cplx momentum_p(cplx alpha, cplx eta, Convention conv = Convention::Hyperbolic) {
    const cplx I(0, 1);
    const cplx num = sfun(conv, eta / 2.0 + I * alpha);
    if (std::abs(num) < 1e-14) throw DomainError("momentum: log singularity at i alpha = -eta/2");
    return std::log(detail::checked_ratio(num, sfun(conv, eta / 2.0 - I * alpha), "momentum denominator s(eta/2 - i alpha)"));
}

// the p-based form of theta; Delta = -c(eta)
inline cplx theta_from_momentum(cplx alpha, cplx beta, cplx eta, Convention conv = Convention::Hyperbolic) {
    const cplx ea = std::exp(momentum_p(alpha, eta, conv)), eb = std::exp(momentum_p(beta, eta, conv));
    const cplx delta = -cfun(conv, eta);
    return detail::checked_ratio(1.0 + ea * eb - 2.0 * delta * ea, 1.0 + ea * eb - 2.0 * delta * eb,
                                 "theta (momentum form) denominator");
}

// ---- Bethe equations ----

namespace detail {

struct BetheSides {
    std::vector<cplx> lhs, rhs;  // rhs includes e^{2HN}
};

inline BetheSides bethe_sides(const std::vector<cplx>& al, const BetheConfig& c) {
    const cplx I(0, 1);
    const auto cv = c.convention;
    BetheSides s;
    for (std::size_t j = 0; j < al.size(); ++j) {
        cplx l = 1.0, r = std::exp(2.0 * c.H * c.N);
        for (int k = 0; k < c.N; ++k)
            l *= checked_ratio(sfun(cv, c.eta / 2.0 + I * al[j] - c.v[k]), sfun(cv, c.eta / 2.0 - I * al[j] + c.v[k]),
                               "F2 at (j,k)=(" + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
        for (std::size_t m = 0; m < al.size(); ++m) {
            if (m == j) continue;
            const cplx z = I * (al[j] - al[m]);
            r *= checked_ratio(sfun(cv, z + c.eta), sfun(cv, z - c.eta),
                               "F4 at (j,m)=(" + std::to_string(j + 1) + "," + std::to_string(m + 1) + ")");
        }
        s.lhs.push_back(l);
        s.rhs.push_back(r);
    }
    return s;
}

inline cplx cot_like(Convention cv, cplx x) {
    const cplx s = sfun(cv, x);
    if (std::abs(s) < 1e-14) throw DomainError("pole in logarithmic derivative");
    return cfun(cv, x) / s;
}

// Gaussian elimination with partial pivoting; small n only
inline std::optional<std::vector<cplx>> solve_linear(std::vector<std::vector<cplx>> a, std::vector<cplx> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-300) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const cplx f = a[r][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
            b[r] -= f * b[col];
        }
    }
    std::vector<cplx> x(n);
    for (std::size_t i = n; i-- > 0;) {
        cplx s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
        x[i] = s / a[i][i];
    }
    return x;
}

// G_j = log(lhs_j / rhs_j) and its Jacobian in alpha
inline std::vector<cplx> log_form(const std::vector<cplx>& al, const BetheConfig& c) {
    const auto s = bethe_sides(al, c);
    std::vector<cplx> g(al.size());
    for (std::size_t j = 0; j < al.size(); ++j) g[j] = std::log(s.lhs[j] / s.rhs[j]);
    return g;
}

inline std::vector<std::vector<cplx>> log_form_jacobian(const std::vector<cplx>& al, const BetheConfig& c) {
    const cplx I(0, 1);
    const auto cv = c.convention;
    const std::size_t n = al.size();
    std::vector<std::vector<cplx>> J(n, std::vector<cplx>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        for (int k = 0; k < c.N; ++k)
            J[j][j] += I * (cot_like(cv, c.eta / 2.0 + I * al[j] - c.v[k]) + cot_like(cv, c.eta / 2.0 - I * al[j] + c.v[k]));
        for (std::size_t m = 0; m < n; ++m) {
            if (m == j) continue;
            const cplx z = I * (al[j] - al[m]);
            const cplx d = I * (cot_like(cv, z + c.eta) - cot_like(cv, z - c.eta));
            J[j][j] -= d;
            J[j][m] += d;
        }
    }
    return J;
}

inline double norm2(const std::vector<cplx>& x) {
    double s = 0;
    for (auto v : x) s += std::norm(v);
    return std::sqrt(s);
}

}  // namespace detail

// lhs_j - e^{2HN} rhs_j, product form
inline std::vector<cplx> bethe_residual(const BetheRoots& roots) {
    roots.config.validate();
    const auto s = detail::bethe_sides(roots.alpha, roots.config);
    std::vector<cplx> r(roots.alpha.size());
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = s.lhs[j] - s.rhs[j];
    return r;
}

inline double max_bethe_residual(const BetheRoots& roots) {
    double m = 0;
    for (auto x : bethe_residual(roots)) m = std::max(m, std::abs(x));
    return m;
}

struct SolverOptions {
    int max_iterations = 200;
    double step_tol = 1e-12;
    double residual_tol = 1e-10;
    double dedup_tol = 1e-6;
    double distinct_tol = 1e-8;
};

struct SeedFailure {
    std::size_t seed_index = 0;
    std::string reason;
};

struct SolveResult {
    std::vector<BetheRoots> solutions;
    std::vector<SeedFailure> failures;
};

// deterministic seeds: a 9x9 grid over [-2,2]^2 for n = 1, random tuples from the same box otherwise
inline std::vector<std::vector<cplx>> default_seeds(int n, std::uint64_t rng_seed = 7, int count = 120) {
    std::vector<std::vector<cplx>> seeds;
    if (n == 0) return {{}};
    if (n == 1) {
        for (int i = 0; i < 9; ++i)
            for (int j = 0; j < 9; ++j) seeds.push_back({cplx(-2.0 + 0.5 * i, -2.0 + 0.5 * j)});
        return seeds;
    }
    std::mt19937_64 g(rng_seed);
    auto unit = [&g] { return double(g() >> 11) * 0x1.0p-53; };
    for (int s = 0; s < count; ++s) {
        std::vector<cplx> t;
        for (int j = 0; j < n; ++j) t.emplace_back(-2.0 + 4.0 * unit(), -2.0 + 4.0 * unit());
        seeds.push_back(t);
    }
    return seeds;
}

inline std::optional<std::vector<cplx>> newton_from(std::vector<cplx> al, const BetheConfig& c, const SolverOptions& o,
                                                    std::string& reason) {
    try {
        auto g = detail::log_form(al, c);
        double gnorm = detail::norm2(g);
        for (int it = 0; it < o.max_iterations; ++it) {
            auto J = detail::log_form_jacobian(al, c);
            std::vector<cplx> rhs(g.size());
            for (std::size_t j = 0; j < g.size(); ++j) rhs[j] = -g[j];
            auto step = detail::solve_linear(J, rhs);
            if (!step) {
                reason = "singular Jacobian";
                return std::nullopt;
            }
            double lam = 1.0;
            std::vector<cplx> trial;
            std::vector<cplx> gt;
            double gtn = 0;
            for (int h = 0; h < 40; ++h) {
                trial = al;
                for (std::size_t j = 0; j < al.size(); ++j) trial[j] += lam * (*step)[j];
                try {
                    gt = detail::log_form(trial, c);
                    gtn = detail::norm2(gt);
                    if (std::isfinite(gtn) && gtn <= gnorm) break;
                } catch (const DomainError&) {
                    gtn = INFINITY;
                }
                lam *= 0.5;
            }
            if (!std::isfinite(gtn)) {
                reason = "damping could not leave a pole";
                return std::nullopt;
            }
            const double stepn = lam * detail::norm2(*step);
            al = trial;
            g = gt;
            gnorm = gtn;
            if (stepn < o.step_tol || gnorm < 1e-15) return al;
            for (auto a : al)
                if (std::abs(a) > 1e6) {
                    reason = "diverged";
                    return std::nullopt;
                }
        }
        reason = "no convergence in " + std::to_string(o.max_iterations) + " iterations";
    } catch (const DomainError& e) {
        reason = e.what();
    }
    return std::nullopt;
}

inline SolveResult solve_bethe(const BetheConfig& c, const std::vector<std::vector<cplx>>& seeds, const SolverOptions& o = {}) {
    c.validate();
    SolveResult res;
    if (c.n == 0) {
        res.solutions.push_back(BetheRoots{{}, c});
        return res;
    }
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        if (static_cast<int>(seeds[s].size()) != c.n) {
            res.failures.push_back({s, "seed has wrong length"});
            continue;
        }
        std::string reason;
        auto al = newton_from(seeds[s], c, o, reason);
        if (!al) {
            res.failures.push_back({s, reason});
            continue;
        }
        BetheRoots r = canonicalize(BetheRoots{*al, c});
        if (!roots_distinct(r, o.distinct_tol)) {
            res.failures.push_back({s, "coinciding roots"});
            continue;
        }
        double resid = 0;
        try {
            resid = max_bethe_residual(r);
        } catch (const DomainError& e) {
            res.failures.push_back({s, e.what()});
            continue;
        }
        if (!(resid < o.residual_tol)) {
            res.failures.push_back({s, "residual " + std::to_string(resid) + " after convergence"});
            continue;
        }
        bool dup = false;
        for (const auto& q : res.solutions) dup = dup || same_root_set(q, r, o.dedup_tol);
        if (!dup) res.solutions.push_back(r);
    }
    return res;
}

// ---- eigenvalue ----

enum class SiteProduct { AllSites, FirstN };

inline cplx eigenvalue_lambda(const BetheRoots& roots, cplx u, SiteProduct variant = SiteProduct::AllSites) {
    const auto& c = roots.config;
    c.validate();
    const cplx I(0, 1);
    const auto cv = c.convention;
    cplx t1 = std::exp(c.N * c.H), t2 = std::exp(-c.N * c.H);
    for (int k = 0; k < c.N; ++k) t1 *= sfun(cv, c.eta - u + c.v[k]);
    const int second = variant == SiteProduct::AllSites ? c.N : static_cast<int>(roots.alpha.size());
    for (int k = 0; k < second; ++k) t2 *= sfun(cv, u - c.v[k]);
    for (auto a : roots.alpha) {
        t1 *= detail::checked_ratio(sfun(cv, c.eta / 2.0 + u - I * a), sfun(cv, c.eta / 2.0 - u + I * a), "psi_plus pole");
        t2 *= detail::checked_ratio(sfun(cv, 1.5 * c.eta - u + I * a), sfun(cv, u - c.eta / 2.0 - I * a), "psi_minus pole");
    }
    return t1 + t2;
}

// ---- bridge to the L-operator ----

// L-operator anisotropy is eta/2 and its spectral argument is u - eta/2
inline ModelParams bethe_model_params(const BetheConfig& c) {
    ModelParams p;
    p.eta = c.eta / 2.0;
    p.H = c.H;
    p.v = c.v;
    p.convention = c.convention;
    return p;
}

inline MonodromyBlocks bethe_monodromy(const BetheConfig& c, cplx u) { return build_monodromy(u - c.eta / 2.0, bethe_model_params(c)); }

// S (A + (-1)^N D) with S = prod_k sigma^z_k
inline ComplexMatrix bethe_transfer_matrix(const BetheConfig& c, cplx u) {
    c.validate();
    const auto t = bethe_monodromy(c, u);
    ComplexMatrix m = c.N % 2 == 0 ? t.A + t.D : t.A - t.D;
    const std::size_t dim = m.rows();
    // prod sigma^z_k = (-1)^{#down}
    for (std::size_t r = 0; r < dim; ++r)
        if (down_count(r) % 2 == 1)
            for (std::size_t col = 0; col < dim; ++col) m(r, col) = -m(r, col);
    return m;
}

enum class RootArgument { IAlpha, IAlphaHalfEta, IAlphaIHalfEta, Alpha, AlphaHalfEta, AlphaIHalfEta };

inline constexpr std::array<RootArgument, 6> kRootArguments = {RootArgument::IAlpha, RootArgument::IAlphaHalfEta,
                                                               RootArgument::IAlphaIHalfEta, RootArgument::Alpha,
                                                               RootArgument::AlphaHalfEta, RootArgument::AlphaIHalfEta};

inline std::string to_string(RootArgument a) {
    switch (a) {
        case RootArgument::IAlpha: return "i*alpha";
        case RootArgument::IAlphaHalfEta: return "i*alpha+eta/2";
        case RootArgument::IAlphaIHalfEta: return "i*alpha+i*eta/2";
        case RootArgument::Alpha: return "alpha";
        case RootArgument::AlphaHalfEta: return "alpha+eta/2";
        case RootArgument::AlphaIHalfEta: return "alpha+i*eta/2";
    }
    return "?";
}

inline cplx root_argument(RootArgument a, cplx alpha, cplx eta) {
    const cplx I(0, 1);
    switch (a) {
        case RootArgument::IAlpha: return I * alpha;
        case RootArgument::IAlphaHalfEta: return I * alpha + eta / 2.0;
        case RootArgument::IAlphaIHalfEta: return I * alpha + I * eta / 2.0;
        case RootArgument::Alpha: return alpha;
        case RootArgument::AlphaHalfEta: return alpha + eta / 2.0;
        case RootArgument::AlphaIHalfEta: return alpha + I * eta / 2.0;
    }
    return alpha;
}

inline constexpr RootArgument kCalibratedRootArgument = RootArgument::IAlphaHalfEta;

inline ComplexVector bethe_state(const BetheRoots& roots, RootArgument arg = kCalibratedRootArgument) {
    const auto& c = roots.config;
    c.validate();
    if (static_cast<int>(roots.alpha.size()) > c.N) throw DomainError("more roots than sites");
    const QuantumSpace space(c.N);
    ComplexVector psi = all_down(space);
    for (auto a : roots.alpha) psi = matvec(bethe_monodromy(c, root_argument(arg, a, c.eta)).B, psi);
    if (vector_norm(psi) < 1e-13) throw DegeneracyError("Bethe state vanishes");
    return psi;
}

inline double eigencheck(const BetheRoots& roots, cplx u, RootArgument arg = kCalibratedRootArgument) {
    const auto psi = bethe_state(roots, arg);
    const auto tpsi = matvec(bethe_transfer_matrix(roots.config, u), psi);
    const cplx lam = eigenvalue_lambda(roots, u);
    ComplexVector diff(psi.size());
    double lnorm = 0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        diff[i] = tpsi[i] - lam * psi[i];
        lnorm += std::norm(lam * psi[i]);
    }
    const double den = vector_norm(tpsi) + std::sqrt(lnorm);
    if (den == 0.0) throw DegeneracyError("eigencheck: zero state");
    return vector_norm(diff) / den;
}

struct RootArgumentCalibration {
    RootArgument selected = kCalibratedRootArgument;
    std::array<double, 6> residual{};  // worst eigencheck per candidate, 1.0 when the state vanishes
    std::size_t root_sets = 0;
};

inline BetheConfig reference_bethe_config(Convention conv) {
    BetheConfig c;
    c.N = 2;
    c.n = 1;
    c.eta = 0.6;
    c.H = 0.0;
    c.v = {0.1, -0.1};
    c.convention = conv;
    return c;
}

inline RootArgumentCalibration calibrate_root_argument(Convention conv) {
    const auto c = reference_bethe_config(conv);
    const auto sol = solve_bethe(c, default_seeds(1));
    RootArgumentCalibration cal;
    cal.root_sets = sol.solutions.size();
    const std::array<cplx, 3> us = {cplx(0.37, 0.1), cplx(-0.2, 0.05), cplx(0.9, 0.0)};
    for (std::size_t i = 0; i < kRootArguments.size(); ++i) {
        double worst = sol.solutions.empty() ? 1.0 : 0.0;
        for (const auto& r : sol.solutions)
            for (auto u : us) {
                double e = 1.0;
                try {
                    e = eigencheck(r, u, kRootArguments[i]);
                } catch (const Error&) {
                }
                worst = std::max(worst, e);
            }
        cal.residual[i] = worst;
    }
    const auto best = std::min_element(cal.residual.begin(), cal.residual.end()) - cal.residual.begin();
    cal.selected = kRootArguments[best];
    return cal;
}

// ---- F functions, log-derivatives, basis coefficients ----

struct FValues {
    cplx F1, F2, F3, F4;
};

// F1 = s(eta/2 + i alpha - v), F2 = s(eta/2 - i alpha + v), F3 = s(i(alpha-beta) + eta), F4 = s(i(alpha-beta) - eta)
inline FValues f_values(cplx alpha, cplx v, cplx beta, cplx eta, Convention conv = Convention::Hyperbolic) {
    const cplx I(0, 1);
    const cplx z = I * (alpha - beta);
    return {sfun(conv, eta / 2.0 + I * alpha - v), sfun(conv, eta / 2.0 - I * alpha + v), sfun(conv, z + eta),
            sfun(conv, z - eta)};
}

struct LogDerivatives {
    cplx U1, U2, U3, U4;  // dF1/dv / F1, dF2/dv / F2, dF3/dbeta / F3, dF4/dbeta / F4
};

inline LogDerivatives log_derivative_functions(cplx alpha, cplx v, cplx beta, cplx eta,
                                               Convention conv = Convention::Hyperbolic) {
    const cplx I(0, 1);
    const auto f = f_values(alpha, v, beta, eta, conv);
    if (std::abs(f.F1) < 1e-14 || std::abs(f.F2) < 1e-14 || std::abs(f.F3) < 1e-14 || std::abs(f.F4) < 1e-14)
        throw DomainError("log derivative at a zero of F");
    const cplx x = eta / 2.0 + I * alpha - v, y = eta / 2.0 - I * alpha + v, z = I * (alpha - beta);
    return {-cfun(conv, x) / f.F1, cfun(conv, y) / f.F2, -I * cfun(conv, z + eta) / f.F3, -I * cfun(conv, z - eta) / f.F4};
}

struct BasisCoefficients {
    cplx S1, S2, S3, S4;
};

enum class CoefficientForm { Corrected, SameDenominator };

// F1/F2 = S1 F1 + S2 F2 and F3/F4 = S3 F3 + S4 F4 from splitting s into exponentials
inline BasisCoefficients basis_coefficients(cplx alpha, cplx v, cplx beta, cplx eta,
                                            Convention conv = Convention::Hyperbolic,
                                            CoefficientForm form = CoefficientForm::Corrected) {
    const cplx I(0, 1);
    const cplx kappa = conv == Convention::Hyperbolic ? cplx(1.0) : I;
    auto E = [&](cplx t) { return std::exp(kappa * t); };
    const cplx x = eta / 2.0 + I * alpha - v, y = eta / 2.0 - I * alpha + v, z = I * (alpha - beta);
    const cplx sx = sfun(conv, x), sy = sfun(conv, y), szp = sfun(conv, z + eta), szm = sfun(conv, z - eta);
    const cplx dxy = form == CoefficientForm::Corrected ? E(y) - E(-y) : E(x) - E(-x);
    const cplx dz = E(z - eta) - E(-z + eta);
    auto guard = [](cplx d, const char* what) {
        if (std::abs(d) < 1e-14) throw DomainError(std::string("basis coefficient pole: ") + what);
    };
    guard(sx, "s(eta/2 + i alpha - v)");
    guard(sy, "s(eta/2 - i alpha + v)");
    guard(dxy, "exponential difference (F1/F2 split)");
    guard(szp, "s(i(alpha-beta) + eta)");
    guard(szm, "s(i(alpha-beta) - eta)");
    guard(dz, "exponential difference (F3/F4 split)");
    return {-E(-x) / (sx * dxy), E(x) / (sy * dxy), E(z + eta) / (szp * dz), -E(-z - eta) / (szm * dz)};
}

}  // namespace sixvertex

#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "convention.hpp"
#include "errors.hpp"
#include "tensor.hpp"

namespace sixvertex {

struct VertexWeights {
    double a1 = 1, a2 = 1, b1 = 1, b2 = 1, c1 = 1, c2 = 1;

    std::array<double, 6> as_array() const { return {a1, a2, b1, b2, c1, c2}; }

    void validate() const {
        bool any = false;
        for (double w : as_array()) {
            if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("vertex weights must be finite and nonnegative");
            any = any || w > 0.0;
        }
        if (!any) throw DomainError("vertex weights are all zero");
    }

    // global arrow reversal swaps each pair
    VertexWeights reversed() const { return {a2, a1, b2, b1, c2, c1}; }
    VertexWeights scaled(double t) const { return {t * a1, t * a2, t * b1, t * b2, t * c1, t * c2}; }
};

struct FieldParams {
    double H = 0.0;
    double V = 0.0;
    double lambda_c = 1.0;
};

inline std::vector<std::string> field_warnings(const FieldParams& f) {
    std::vector<std::string> w;
    if (f.lambda_c < 1.0) w.push_back("lambda_c < 1 (override of the documented lambda_c >= 1 default)");
    return w;
}

struct SpectralParams {
    cplx u = 0.0;
    cplx eta = 0.7;
    Convention convention = Convention::Hyperbolic;
};

inline std::vector<std::string> spectral_warnings(const SpectralParams& p) {
    std::vector<std::string> w;
    if (p.u.imag() == 0.0 && p.eta.imag() == 0.0 && !(0.0 < p.u.real() && p.u.real() < p.eta.real()))
        w.push_back("real u outside 0 < u < eta");
    return w;
}

inline VertexWeights weights_from_fields(double a, double b, double c, const FieldParams& f) {
    if (a < 0 || b < 0 || c < 0) throw DomainError("negative base weight");
    if (f.lambda_c <= 0) throw DomainError("lambda_c must be positive");
    VertexWeights w;
    w.a1 = a * std::exp(f.H + f.V);
    w.a2 = a * std::exp(-f.H - f.V);
    w.b1 = b * std::exp(f.H - f.V);
    w.b2 = b * std::exp(-f.H + f.V);
    w.c1 = c * f.lambda_c;
    w.c2 = c / f.lambda_c;
    return w;
}

inline double disorder_delta(const VertexWeights& w) {
    const double den = w.a1 * w.a2 * w.b1 * w.b2;
    if (!(den > 0.0)) throw DomainError("disorder parameter needs a1*a2*b1*b2 > 0");
    return (w.a1 * w.a2 + w.b1 * w.b2 - w.c1 * w.c2) / (2.0 * std::sqrt(den));
}

// Minus: a = s(eta - u). Plus: a = s(eta + u).
enum class BaxterSign { Minus, Plus };

inline std::string to_string(BaxterSign s) { return s == BaxterSign::Minus ? "a=s(eta-u)" : "a=s(eta+u)"; }

struct BaseWeights {
    cplx a, b, c;
};

inline BaseWeights baxter_weights(const SpectralParams& p, BaxterSign sign = BaxterSign::Minus) {
    const cplx a = sign == BaxterSign::Minus ? sfun(p.convention, p.eta - p.u) : sfun(p.convention, p.eta + p.u);
    return {a, sfun(p.convention, p.u), sfun(p.convention, p.eta)};
}

// basis e1(x)e1, e1(x)e2, e2(x)e1, e2(x)e2; first leg horizontal, second vertical
inline ComplexMatrix build_r_matrix(const BaseWeights& w, const FieldParams& f = {}) {
    ComplexMatrix r(4, 4);
    r(0, 0) = w.a * std::exp(f.H + f.V);
    r(1, 1) = w.b * std::exp(f.H - f.V);
    r(2, 2) = w.b * std::exp(-f.H + f.V);
    r(3, 3) = w.a * std::exp(-f.H - f.V);
    r(2, 1) = w.c * f.lambda_c;
    r(1, 2) = w.c / f.lambda_c;
    return r;
}

inline ComplexMatrix build_r_matrix(const SpectralParams& p, const FieldParams& f = {}, BaxterSign sign = BaxterSign::Minus) {
    return build_r_matrix(baxter_weights(p, sign), f);
}

// same layout as build_r_matrix: entry (out, in) with in = (west, south), out = (east, north)
inline ComplexMatrix vertex_matrix(const VertexWeights& w) {
    ComplexMatrix r(4, 4);
    r(0, 0) = w.a1;
    r(1, 1) = w.b1;
    r(2, 2) = w.b2;
    r(3, 3) = w.a2;
    r(2, 1) = w.c1;
    r(1, 2) = w.c2;
    return r;
}

// ---- three-leg embedding on C^2 (x) C^2 (x) C^2 ----

// permutation swapping legs 2 and 3 (1-based), P|x y z> = |x z y>
inline const ComplexMatrix& swap23() {
    static const ComplexMatrix p = [] {
        ComplexMatrix m(8, 8);
        for (std::size_t i = 0; i < 8; ++i) {
            const std::size_t x = (i >> 2) & 1, y = (i >> 1) & 1, z = i & 1;
            m((x << 2) | (z << 1) | y, i) = 1.0;
        }
        return m;
    }();
    return p;
}

// R acting on legs (i, j), i < j, of three
inline ComplexMatrix embed_legs(const ComplexMatrix& r4, int i, int j) {
    if (r4.rows() != 4 || r4.cols() != 4) throw ShapeError("embed_legs expects 4x4");
    const auto id2 = ComplexMatrix::identity(2);
    if (i == 1 && j == 2) return kron(r4, id2);
    if (i == 2 && j == 3) return kron(id2, r4);
    if (i == 1 && j == 3) return swap23() * kron(r4, id2) * swap23();
    throw IndexError("leg pair must be (1,2), (1,3) or (2,3)");
}

// R12(u) R13(u+v) R23(v) - R23(v) R13(u+v) R12(u), max-abs
template <class RFamily>
double ybe_residual_family(const RFamily& r, cplx u, cplx v) {
    const auto r12 = embed_legs(r(u), 1, 2);
    const auto r13 = embed_legs(r(u + v), 1, 3);
    const auto r23 = embed_legs(r(v), 2, 3);
    return max_abs_diff(r12 * r13 * r23, r23 * r13 * r12);
}

inline double ybe_residual(cplx u, cplx v, const SpectralParams& p, BaxterSign sign) {
    auto fam = [&](cplx x) { return build_r_matrix(SpectralParams{x, p.eta, p.convention}, {}, sign); };
    return ybe_residual_family(fam, u, v);
}

struct YbeSweep {
    BaxterSign sign;
    double max_residual = 0.0;
};

// both sign variants over a (u, v) grid
inline std::array<YbeSweep, 2> ybe_sweep(const std::vector<std::pair<cplx, cplx>>& grid, cplx eta, Convention conv) {
    std::array<YbeSweep, 2> out{YbeSweep{BaxterSign::Minus}, YbeSweep{BaxterSign::Plus}};
    for (auto& s : out)
        for (auto [u, v] : grid) s.max_residual = std::max(s.max_residual, ybe_residual(u, v, {0.0, eta, conv}, s.sign));
    return out;
}

}  // namespace sixvertex

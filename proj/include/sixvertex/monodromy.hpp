#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "convention.hpp"
#include "tensor.hpp"
#include "vertex.hpp"

namespace sixvertex {

struct ModelParams {
    cplx eta = 0.7;
    double H = 0.0;
    double V = 0.0;
    std::vector<cplx> v;  // one inhomogeneity per site, site 1 first
    Convention convention = Convention::Trigonometric;
    double lambda_c = 1.0;

    int n_sites() const { return static_cast<int>(v.size()); }
    QuantumSpace space() const { return QuantumSpace(n_sites()); }
};

inline ModelParams homogeneous(int n, cplx eta, Convention conv) {
    ModelParams p;
    p.eta = eta;
    p.v.assign(n, cplx(0.0, 0.0));
    p.convention = conv;
    return p;
}

// 2x2 array over the auxiliary space, entries act on C^{2^N}
using AuxOperator = std::array<std::array<ComplexMatrix, 2>, 2>;

struct MonodromyBlocks {
    cplx u = 0.0;
    ComplexMatrix A, B, C, D;

    std::size_t dimension() const { return A.rows(); }
    const ComplexMatrix& at(int i, int j) const { return i == 0 ? (j == 0 ? A : B) : (j == 0 ? C : D); }
    ComplexMatrix& at(int i, int j) { return i == 0 ? (j == 0 ? A : B) : (j == 0 ? C : D); }
};

enum class ProductOrder { SiteNLeftmost, SiteOneLeftmost };

namespace detail {

// M * (I (x) op (x) I), op at site k, in O(dim^2)
inline ComplexMatrix right_local(const ComplexMatrix& m, const ComplexMatrix& op, int k, int n_sites) {
    const std::size_t dim = m.cols();
    const int shift = n_sites - k;
    const std::size_t mask = std::size_t{1} << shift;
    ComplexMatrix out(m.rows(), dim);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < dim; ++c) {
            const int cb = static_cast<int>((c >> shift) & 1u);
            const std::size_t c0 = c & ~mask, c1 = c | mask;
            out(r, c) = m(r, c0) * op(0, cb) + m(r, c1) * op(1, cb);
        }
    return out;
}

// (I (x) op (x) I) * M
inline ComplexMatrix left_local(const ComplexMatrix& op, const ComplexMatrix& m, int k, int n_sites) {
    const std::size_t dim = m.rows();
    const int shift = n_sites - k;
    const std::size_t mask = std::size_t{1} << shift;
    ComplexMatrix out(dim, m.cols());
    for (std::size_t r = 0; r < dim; ++r) {
        const int rb = static_cast<int>((r >> shift) & 1u);
        const std::size_t r0 = r & ~mask, r1 = r | mask;
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = op(rb, 0) * m(r0, c) + op(rb, 1) * m(r1, c);
    }
    return out;
}

inline void check_site(int k, const ModelParams& p) {
    if (k < 1 || k > p.n_sites())
        throw IndexError("site " + std::to_string(k) + " outside 1.." + std::to_string(p.n_sites()));
}

}  // namespace detail

// site-local 2x2 pieces of L_k(u): [[a, b], [c, d]] with a, d diagonal and b ~ sigma+, c ~ sigma-
struct LocalL {
    std::array<std::array<ComplexMatrix, 2>, 2> e;
};

inline LocalL local_l_operator(cplx u, int k, const ModelParams& p) {
    detail::check_site(k, p);
    const auto& vk = p.v[k - 1];
    const Convention cv = p.convention;
    const cplx plus = sfun(cv, u - vk + p.eta), minus = sfun(cv, u - vk - p.eta);
    const cplx s2 = sfun(cv, 2.0 * p.eta);
    LocalL l;
    l.e[0][0] = ComplexMatrix{{plus, 0.0}, {0.0, minus}};
    l.e[1][1] = ComplexMatrix{{minus, 0.0}, {0.0, plus}};
    l.e[0][1] = ComplexMatrix{{0.0, s2 * p.lambda_c}, {0.0, 0.0}};
    l.e[1][0] = ComplexMatrix{{0.0, 0.0}, {s2 / p.lambda_c, 0.0}};
    return l;
}

inline AuxOperator build_l_operator(cplx u, int k, const ModelParams& p) {
    const auto space = p.space();
    const auto l = local_l_operator(u, k, p);
    AuxOperator out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out[i][j] = embed_local(l.e[i][j], k, space);
    return out;
}

// diag(e^{NH}, e^{-NH}) on the auxiliary space, identity on the quantum space
inline MonodromyBlocks twist_blocks(cplx u, const ModelParams& p) {
    const std::size_t dim = p.space().dimension();
    const double nh = p.n_sites() * p.H;
    MonodromyBlocks t;
    t.u = u;
    t.A = ComplexMatrix::identity(dim) * cplx(std::exp(nh));
    t.D = ComplexMatrix::identity(dim) * cplx(std::exp(-nh));
    t.B = ComplexMatrix(dim, dim);
    t.C = ComplexMatrix(dim, dim);
    return t;
}

// prev * L_k(u)
inline MonodromyBlocks recursion_step(const MonodromyBlocks& prev, cplx u, int k, const ModelParams& p) {
    const int n = p.n_sites();
    if (prev.dimension() != p.space().dimension())
        throw ShapeError("recursion_step: blocks of dimension " + std::to_string(prev.dimension()) + " on a " +
                         std::to_string(p.space().dimension()) + "-dim space");
    const auto l = local_l_operator(u, k, p);
    MonodromyBlocks out;
    out.u = u;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.at(i, j) = detail::right_local(prev.at(i, 0), l.e[0][j], k, n) +
                           detail::right_local(prev.at(i, 1), l.e[1][j], k, n);
    return out;
}

// L_k(u) * prev, only used to show the order matters
inline MonodromyBlocks recursion_step_left(const MonodromyBlocks& prev, cplx u, int k, const ModelParams& p) {
    const int n = p.n_sites();
    if (prev.dimension() != p.space().dimension()) throw ShapeError("recursion_step_left: dimension mismatch");
    const auto l = local_l_operator(u, k, p);
    MonodromyBlocks out;
    out.u = u;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.at(i, j) = detail::left_local(l.e[i][0], prev.at(0, j), k, n) +
                           detail::left_local(l.e[i][1], prev.at(1, j), k, n);
    return out;
}

inline MonodromyBlocks multiply_blocks(const MonodromyBlocks& x, const MonodromyBlocks& y) {
    MonodromyBlocks out;
    out.u = x.u;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.at(i, j) = x.at(i, 0) * y.at(0, j) + x.at(i, 1) * y.at(1, j);
    return out;
}

// twist * L_N(u) ... L_1(u)
inline MonodromyBlocks build_monodromy(cplx u, const ModelParams& p, ProductOrder order = ProductOrder::SiteNLeftmost) {
    if (p.n_sites() < 1) throw DomainError("monodromy needs N >= 1");
    const std::size_t dim = p.space().dimension();
    if (order == ProductOrder::SiteNLeftmost) {
        MonodromyBlocks t = twist_blocks(u, p);
        for (int k = p.n_sites(); k >= 1; --k) t = recursion_step(t, u, k, p);
        return t;
    }
    MonodromyBlocks t;
    t.u = u;
    t.A = ComplexMatrix::identity(dim);
    t.D = ComplexMatrix::identity(dim);
    t.B = ComplexMatrix(dim, dim);
    t.C = ComplexMatrix(dim, dim);
    for (int k = 1; k <= p.n_sites(); ++k) t = recursion_step(t, u, k, p);  // L_1 ... L_N
    return multiply_blocks(twist_blocks(u, p), t);
}

// [[A, B], [C, D]] with the auxiliary space as the leftmost factor
inline ComplexMatrix full_operator(const MonodromyBlocks& t) {
    const std::size_t d = t.dimension();
    ComplexMatrix out(2 * d, 2 * d);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const auto& b = t.at(i, j);
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) out(i * d + r, j * d + c) = b(r, c);
        }
    return out;
}

// prod_k diag(e^V, e^-V)_k
inline ComplexMatrix vertical_field_factor(double V, const QuantumSpace& space) {
    const std::size_t dim = space.dimension();
    ComplexMatrix out(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) out(i, i) = std::exp(V * (space.n_sites - 2 * down_count(i)));
    return out;
}

inline ComplexMatrix transfer_matrix(cplx u, const ModelParams& p) {
    const auto t = build_monodromy(u, p);
    ComplexMatrix tr = t.A + t.D;
    if (p.V != 0.0) tr = vertical_field_factor(p.V, p.space()) * tr;
    return tr;
}

inline double transfer_commutator_residual(cplx u, const ModelParams& pa, cplx up, const ModelParams& pb) {
    return max_abs(commutator(transfer_matrix(u, pa), transfer_matrix(up, pb)));
}

inline double transfer_commutator_residual(cplx u, cplx up, const ModelParams& p) {
    if (u == up) return 0.0;
    return transfer_commutator_residual(u, p, up, p);
}

// ---- RTT ----

inline constexpr BaxterSign kCalibratedSign = BaxterSign::Plus;

// R-matrix intertwining T(u) and T(u'): weights at x = u' - u with anisotropy 2*eta
inline ComplexMatrix rtt_r_matrix(cplx u, cplx up, const ModelParams& p, BaxterSign sign) {
    return build_r_matrix(SpectralParams{up - u, 2.0 * p.eta, p.convention}, {}, sign);
}

// R (T(u) (x)_a T(u')) - (T(u') (x)_a T(u)) R on aux1 (x) aux2 (x) quantum
inline double rtt_residual(cplx u, cplx up, const ModelParams& p, BaxterSign sign = kCalibratedSign) {
    const auto tu = build_monodromy(u, p), tp = build_monodromy(up, p);
    const std::size_t d = tu.dimension();
    const auto id2 = ComplexMatrix::identity(2);
    ComplexMatrix t1(4 * d, 4 * d);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const auto blk = kron(id2, tu.at(i, j));
            for (std::size_t r = 0; r < 2 * d; ++r)
                for (std::size_t c = 0; c < 2 * d; ++c) t1(i * 2 * d + r, j * 2 * d + c) = blk(r, c);
        }
    const auto t2 = kron(id2, full_operator(tp));
    const auto r = kron(rtt_r_matrix(u, up, p, sign), ComplexMatrix::identity(d));
    return max_abs_diff(r * t1 * t2, t2 * t1 * r);
}

struct SignCalibration {
    BaxterSign selected = kCalibratedSign;
    double ybe_minus = 0, ybe_plus = 0;
    double rtt_minus = 0, rtt_plus = 0;
};

// YBE alone does not separate the variants; RTT does
inline SignCalibration calibrate_sign_convention(Convention conv) {
    const std::vector<std::pair<cplx, cplx>> grid = {{0.31, -0.47}, {0.83, 0.12}, {-0.56, 0.29}, {0.2, 0.65}};
    SignCalibration cal;
    for (cplx eta : {cplx(0.3), cplx(0.7), cplx(1.1)}) {
        auto sw = ybe_sweep(grid, eta, conv);
        cal.ybe_minus = std::max(cal.ybe_minus, sw[0].max_residual);
        cal.ybe_plus = std::max(cal.ybe_plus, sw[1].max_residual);
    }
    ModelParams p;
    p.eta = 0.45;
    p.v = {0.1, -0.2, 0.15};
    p.convention = conv;
    for (auto [u, up] : grid) {
        cal.rtt_minus = std::max(cal.rtt_minus, rtt_residual(u, up, p, BaxterSign::Minus));
        cal.rtt_plus = std::max(cal.rtt_plus, rtt_residual(u, up, p, BaxterSign::Plus));
    }
    cal.selected = cal.ybe_plus + cal.rtt_plus <= cal.ybe_minus + cal.rtt_minus ? BaxterSign::Plus : BaxterSign::Minus;
    return cal;
}

// ---- sixteen relations ----

struct RelationRow {
    int label = 0;  // 1..16
    char x = 'A', y = 'A';
    double norm = 0.0;
    bool predicted_vanishing = false;
    bool pass = true;
};

inline std::vector<RelationRow> sixteen_relations_report(cplx u, cplx up, const ModelParams& p, double tol = 1e-10) {
    const auto tu = build_monodromy(u, p), tp = build_monodromy(up, p);
    const char names[4] = {'A', 'B', 'C', 'D'};
    std::vector<RelationRow> rows;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            RelationRow r;
            r.label = 4 * a + b + 1;
            r.x = names[a];
            r.y = names[b];
            r.norm = max_abs(commutator(tu.at(a / 2, a % 2), tp.at(b / 2, b % 2)));
            r.predicted_vanishing = a == b;
            r.pass = !r.predicted_vanishing || r.norm < tol;
            rows.push_back(r);
        }
    return rows;
}

}  // namespace sixvertex

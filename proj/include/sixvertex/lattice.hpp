#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "monodromy.hpp"
#include "parallel.hpp"
#include "vertex.hpp"

namespace sixvertex {

// Orientation: horizontal arrow +1 points east, vertical arrow +1 points north.
// Local order (west, east, south, north); ice rule is w + s == e + n.
//   a1 (+,+,+,+)   a2 (-,-,-,-)
//   b1 (+,+,-,-)   b2 (-,-,+,+)
//   c1 (+,-,-,+)   c2 (-,+,+,-)
enum class VertexType { a1, a2, b1, b2, c1, c2 };

inline std::string to_string(VertexType t) {
    static const char* names[] = {"a1", "a2", "b1", "b2", "c1", "c2"};
    return names[static_cast<int>(t)];
}

inline std::optional<VertexType> classify_vertex(const std::array<int, 4>& wesn) {
    const int w = wesn[0], e = wesn[1], s = wesn[2], n = wesn[3];
    if (w == 1 && e == 1 && s == 1 && n == 1) return VertexType::a1;
    if (w == -1 && e == -1 && s == -1 && n == -1) return VertexType::a2;
    if (w == 1 && e == 1 && s == -1 && n == -1) return VertexType::b1;
    if (w == -1 && e == -1 && s == 1 && n == 1) return VertexType::b2;
    if (w == 1 && e == -1 && s == -1 && n == 1) return VertexType::c1;
    if (w == -1 && e == 1 && s == 1 && n == -1) return VertexType::c2;
    return std::nullopt;
}

inline double weight_of(VertexType t, const VertexWeights& w) { return w.as_array()[static_cast<int>(t)]; }

inline constexpr int kBruteForceAreaCap = 12;

struct LatticeConfig {
    int n_cols = 2;  // N
    int n_rows = 2;  // M
    VertexWeights weights;

    void validate(int area_cap = kBruteForceAreaCap) const {
        if (n_cols < 1 || n_rows < 1) throw DomainError("torus needs N, M >= 1");
        if (n_cols * n_rows > area_cap)
            throw CapacityError("N*M=" + std::to_string(n_cols * n_rows) + " exceeds enumeration cap " +
                                std::to_string(area_cap));
        weights.validate();
    }
};

// Edges: h(r,c) is the west edge of vertex (r,c), v(r,c) its south edge; both periodic.
// Each of the 2^{NM} vertical assignments is an independent chunk; chunks are summed in index order.
inline double partition_brute(const LatticeConfig& lat, int area_cap = kBruteForceAreaCap) {
    lat.validate(area_cap);
    const int N = lat.n_cols, M = lat.n_rows, area = N * M;
    const std::uint64_t count = std::uint64_t{1} << area;
    const auto table = lat.weights.as_array();
    auto arrow = [](std::uint64_t bits, int i) { return ((bits >> i) & 1u) ? -1 : 1; };
    std::vector<double> partial(count, 0.0);
    parallel_for(count, [&](std::size_t vbits) {
        double acc = 0.0;
        for (std::uint64_t hbits = 0; hbits < count; ++hbits) {
            double w = 1.0;
            for (int r = 0; r < M && w != 0.0; ++r)
                for (int c = 0; c < N; ++c) {
                    const std::array<int, 4> loc = {arrow(hbits, r * N + c), arrow(hbits, r * N + (c + 1) % N),
                                                    arrow(vbits, r * N + c), arrow(vbits, ((r + 1) % M) * N + c)};
                    const auto t = classify_vertex(loc);
                    if (!t) {
                        w = 0.0;
                        break;
                    }
                    w *= table[static_cast<int>(*t)];
                }
            acc += w;
        }
        partial[vbits] = acc;
    });
    double z = 0.0;
    for (double x : partial) z += x;
    return z;
}

// arrow +1 <-> basis index 0
inline ComplexMatrix row_transfer_matrix(const VertexWeights& w, int N) {
    const QuantumSpace space(N);
    const auto vm = vertex_matrix(w);
    const std::size_t dim = space.dimension();
    MonodromyBlocks t;
    t.A = ComplexMatrix::identity(dim);
    t.D = ComplexMatrix::identity(dim);
    t.B = ComplexMatrix(dim, dim);
    t.C = ComplexMatrix(dim, dim);
    for (int c = 1; c <= N; ++c) {
        // W_c[h_out][h_in] as a 2x2 operator on vertical edge c: (north, south)
        std::array<std::array<ComplexMatrix, 2>, 2> wc;
        for (int ho = 0; ho < 2; ++ho)
            for (int hi = 0; hi < 2; ++hi) {
                ComplexMatrix op(2, 2);
                for (int no = 0; no < 2; ++no)
                    for (int si = 0; si < 2; ++si) op(no, si) = vm(ho * 2 + no, hi * 2 + si);
                wc[ho][hi] = op;
            }
        MonodromyBlocks next;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                next.at(i, j) = detail::left_local(wc[i][0], t.at(0, j), c, N) + detail::left_local(wc[i][1], t.at(1, j), c, N);
        t = next;
    }
    return t.A + t.D;
}

inline ComplexMatrix matrix_power(const ComplexMatrix& m, int p) {
    ComplexMatrix out = ComplexMatrix::identity(m.rows());
    for (int i = 0; i < p; ++i) out = out * m;
    return out;
}

inline double real_trace_checked(const ComplexMatrix& m, const char* what) {
    const cplx z = trace(m);
    if (std::abs(z.imag()) > 1e-9 * std::max(1.0, std::abs(z.real())))
        throw DomainError(std::string(what) + ": complex partition function");
    return z.real();
}

inline double partition_transfer(const LatticeConfig& lat) {
    lat.weights.validate();
    if (lat.n_cols < 1 || lat.n_rows < 1) throw DomainError("torus needs N, M >= 1");
    return real_trace_checked(matrix_power(row_transfer_matrix(lat.weights, lat.n_cols), lat.n_rows), "partition_transfer");
}

// Baxter family a = s(eta-u), b = s(u), c = s(eta) through the L-operator transfer matrix.
// With our L, t's diagonal blocks give a = s(lam - eta_L), b = s(lam + eta_L), c = s(2 eta_L),
// so eta_L = (P - eta)/2 and lam = (P + eta)/2 - u where P is the half period (i*pi or pi).
inline ModelParams baxter_l_params(int N, double eta, Convention conv) {
    ModelParams p = homogeneous(N, (half_period(conv) - eta) / 2.0, conv);
    return p;
}

inline cplx baxter_l_argument(double u, double eta, Convention conv) { return (half_period(conv) + eta) / 2.0 - u; }

inline VertexWeights baxter_vertex_weights(double u, double eta, Convention conv) {
    const auto w = baxter_weights(SpectralParams{u, eta, conv}, BaxterSign::Minus);
    VertexWeights vw{w.a.real(), w.a.real(), w.b.real(), w.b.real(), w.c.real(), w.c.real()};
    vw.validate();
    return vw;
}

inline double partition_transfer_baxter(int N, int M, double u, double eta, Convention conv) {
    const auto p = baxter_l_params(N, eta, conv);
    const auto t = transfer_matrix(baxter_l_argument(u, eta, conv), p);
    return real_trace_checked(matrix_power(t, M), "partition_transfer_baxter");
}

// Z^n: trace of t^M restricted to n down arrows
inline std::vector<double> sector_traces(const ComplexMatrix& t, int N, int M) {
    const auto p = matrix_power(t, M);
    std::vector<cplx> z(N + 1, 0.0);
    for (std::size_t i = 0; i < p.rows(); ++i) z[down_count(i)] += p(i, i);
    std::vector<double> out;
    for (auto x : z) out.push_back(x.real());
    return out;
}

struct SemigrandCheck {
    double z_direct = 0.0;   // brute force with V switched on
    double z_sectors = 0.0;  // sum_n e^{M(N-2n)V} Z^n at V = 0
    std::vector<double> sectors;
    double rel_err = 0.0;
};

inline SemigrandCheck semigrand_check(double a, double b, double c, const FieldParams& f, int N, int M) {
    SemigrandCheck out;
    out.z_direct = partition_brute(LatticeConfig{N, M, weights_from_fields(a, b, c, f)});
    FieldParams f0 = f;
    f0.V = 0.0;
    out.sectors = sector_traces(row_transfer_matrix(weights_from_fields(a, b, c, f0), N), N, M);
    for (int n = 0; n <= N; ++n) out.z_sectors += std::exp(double(M) * (N - 2 * n) * f.V) * out.sectors[n];
    out.rel_err = std::abs(out.z_direct - out.z_sectors) / std::abs(out.z_direct);
    return out;
}

inline double free_energy_density(double Z, int N, int M) {
    if (!(Z > 0.0)) throw DomainError("free energy density needs Z > 0");
    return std::log(Z) / (double(N) * M);
}

}  // namespace sixvertex

#pragma once

// Brute-force constructions that share no code path with the block recursion:
// every L is materialized on aux (x) C^{2^N} through explicit Kronecker chains.

#include "monodromy.hpp"

namespace sixvertex::reference {

inline ComplexMatrix chain(const ComplexMatrix& op, int k, int n) {
    ComplexMatrix m = ComplexMatrix::identity(1);
    for (int j = 1; j <= n; ++j) m = kron(m, j == k ? op : ComplexMatrix::identity(2));
    return m;
}

inline ComplexMatrix full_l(cplx u, int k, const ModelParams& p) {
    const int n = p.n_sites();
    const Convention cv = p.convention;
    const cplx x = u - p.v.at(k - 1);
    const cplx s2 = sfun(cv, 2.0 * p.eta);
    const ComplexMatrix e00{{1.0, 0.0}, {0.0, 0.0}}, e01{{0.0, 1.0}, {0.0, 0.0}};
    const ComplexMatrix e10{{0.0, 0.0}, {1.0, 0.0}}, e11{{0.0, 0.0}, {0.0, 1.0}};
    const ComplexMatrix a{{sfun(cv, x + p.eta), 0.0}, {0.0, sfun(cv, x - p.eta)}};
    const ComplexMatrix d{{sfun(cv, x - p.eta), 0.0}, {0.0, sfun(cv, x + p.eta)}};
    const ComplexMatrix sp{{0.0, s2 * p.lambda_c}, {0.0, 0.0}};
    const ComplexMatrix sm{{0.0, 0.0}, {s2 / p.lambda_c, 0.0}};
    return kron(e00, chain(a, k, n)) + kron(e01, chain(sp, k, n)) + kron(e10, chain(sm, k, n)) +
           kron(e11, chain(d, k, n));
}

inline MonodromyBlocks monodromy(cplx u, const ModelParams& p) {
    const int n = p.n_sites();
    const std::size_t d = std::size_t{1} << n;
    const double nh = n * p.H;
    ComplexMatrix tw(2, 2);
    tw(0, 0) = std::exp(nh);
    tw(1, 1) = std::exp(-nh);
    ComplexMatrix t = kron(tw, ComplexMatrix::identity(d));
    for (int k = n; k >= 1; --k) t = t * full_l(u, k, p);
    MonodromyBlocks out;
    out.u = u;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            ComplexMatrix b(d, d);
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) b(r, c) = t(i * d + r, j * d + c);
            out.at(i, j) = b;
        }
    return out;
}

inline double monodromy_deviation(const MonodromyBlocks& x, const MonodromyBlocks& y) {
    double m = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m = std::max(m, max_abs_diff(x.at(i, j), y.at(i, j)));
    return m;
}

}  // namespace sixvertex::reference

#pragma once

#include <cmath>
#include <vector>

#include "monodromy.hpp"

namespace sixvertex {

struct BScalar {
    cplx amplitude = 0.0;  // <k0|B(u)|all down>, k0 the first site carrying weight
    double b_abs2 = 0.0;   // ||B(u)|all down>||^2
    int site = 0;
};

inline constexpr double kAmplitudeFloor = 1e-13;

// basis index with only site k flipped up
inline std::size_t one_magnon_index(int k, int n_sites) {
    return ((std::size_t{1} << n_sites) - 1) & ~(std::size_t{1} << (n_sites - k));
}

inline BScalar b_scalarization(cplx u, const ModelParams& p) {
    if (p.n_sites() < 1) throw DomainError("b_scalarization needs N >= 1");
    const auto t = build_monodromy(u, p);
    const auto psi = matvec(t.B, all_down(p.space()));
    BScalar out;
    for (const auto& x : psi) out.b_abs2 += std::norm(x);
    if (std::sqrt(out.b_abs2) < kAmplitudeFloor) throw DegeneracyError("B(u)|all down> vanishes");
    for (int k = 1; k <= p.n_sites(); ++k) {
        const cplx a = psi[one_magnon_index(k, p.n_sites())];
        if (std::abs(a) > kAmplitudeFloor) {
            out.amplitude = a;
            out.site = k;
            return out;
        }
    }
    throw DegeneracyError("B(u)|all down> has no one-magnon component");
}

inline double phi(const BScalar& b) { return -std::arg(b.amplitude); }

inline double rho(const BScalar& b, int epsilon) {
    const double arg = 1.0 + epsilon * b.b_abs2;
    if (!(arg > 0.0)) throw DomainError("rho: 1 + epsilon*|B|^2 <= 0");
    return std::log(arg) / kPi;
}

struct ActionAngleSample {
    cplx u = 0.0;
    double b_abs2 = 0.0;
    double phi = 0.0;
    double rho = 0.0;
    int epsilon = 1;
};

inline ActionAngleSample action_angle_sample(cplx u, const ModelParams& p, int epsilon) {
    const auto b = b_scalarization(u, p);
    return {u, b.b_abs2, phi(b), rho(b, epsilon), epsilon};
}

// f(x) = log(1 + eps x)/pi; returns f'(x)(1 + eps x)
inline double conjugate_function_check(double x, int epsilon) {
    const double arg = 1.0 + epsilon * x;
    if (x < 0.0 || !(arg > 0.0)) throw DomainError("conjugate function: need x >= 0 and 1 + eps x > 0");
    const double fprime = epsilon / (kPi * arg);
    return fprime * arg;
}

struct ChargeEvidence {
    std::vector<std::vector<double>> norms;
    double max_norm = 0.0;
    bool pass = true;
};

inline ChargeEvidence commuting_charges_evidence(const std::vector<ComplexMatrix>& transfers, double tol = 1e-10) {
    ChargeEvidence ev;
    const std::size_t n = transfers.size();
    ev.norms.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double x = max_abs(commutator(transfers[i], transfers[j]));
            ev.norms[i][j] = ev.norms[j][i] = x;
            ev.max_norm = std::max(ev.max_norm, x);
        }
    ev.pass = ev.max_norm < tol;
    return ev;
}

inline ChargeEvidence commuting_charges_evidence(const ModelParams& p, const std::vector<cplx>& u_grid, double tol = 1e-10) {
    std::vector<ComplexMatrix> ts;
    for (auto u : u_grid) ts.push_back(transfer_matrix(u, p));
    return commuting_charges_evidence(ts, tol);
}

}  // namespace sixvertex

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "convention.hpp"
#include "errors.hpp"

namespace sixvertex {

// largest side we allow: 2^12 quantum states times two auxiliary legs
inline constexpr std::size_t kMaxDimension = std::size_t{1} << 14;
inline constexpr int kDefaultSiteCap = 12;

using ComplexVector = std::vector<cplx>;

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
        if (rows > kMaxDimension || cols > kMaxDimension)
            throw CapacityError("matrix " + std::to_string(rows) + "x" + std::to_string(cols) +
                                " exceeds dimension cap " + std::to_string(kMaxDimension));
        data_.assign(rows * cols, cplx(0.0, 0.0));
    }
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (auto& r : rows) {
            if (r.size() != cols_) throw ShapeError("ragged initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    static ComplexMatrix diagonal(const ComplexVector& d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    bool empty() const { return data_.empty(); }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cplx>& entries() const { return data_; }
    std::vector<cplx>& entries() { return data_; }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same(o, "add");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same(o, "subtract");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    ComplexMatrix& operator*=(cplx s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    void require_same(const ComplexMatrix& o, const char* what) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw ShapeError(std::string(what) + ": " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                             " vs " + std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> data_;
};

inline ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
inline ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
inline ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
inline ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

inline ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) { return a + b; }
inline ComplexMatrix scale(const ComplexMatrix& a, cplx s) { return a * s; }

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw ShapeError("matmul: inner dimensions " + std::to_string(a.cols()) + " and " + std::to_string(b.rows()));
    ComplexMatrix out(a.rows(), b.cols());
    const std::size_t n = b.cols();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx* orow = &out(i, 0);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0, 0.0)) continue;  // embedded site operators are very sparse
            const cplx* brow = &b(k, 0);
            for (std::size_t j = 0; j < n; ++j) orow[j] += aik * brow[j];
        }
    }
    return out;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

inline ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& x) {
    if (a.cols() != x.size()) throw ShapeError("apply: matrix/vector size mismatch");
    ComplexVector y(a.rows(), cplx(0.0, 0.0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t r = a.rows() * b.rows(), c = a.cols() * b.cols();
    if (r > kMaxDimension || c > kMaxDimension)
        throw CapacityError("kron: result " + std::to_string(r) + "x" + std::to_string(c) + " exceeds dimension cap");
    ComplexMatrix out(r, c);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

inline ComplexMatrix conjugate_transpose(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

inline ComplexMatrix transpose(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    return out;
}

inline double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& x : a.entries()) s += std::norm(x);
    return std::sqrt(s);
}

inline double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const auto& x : a.entries()) m = std::max(m, std::abs(x));
    return m;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    a.require_same(b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.square() || !b.square() || a.rows() != b.rows()) throw ShapeError("commutator needs square matrices of equal size");
    return a * b - b * a;
}

inline cplx trace(const ComplexMatrix& a) {
    if (!a.square()) throw ShapeError("trace of non-square matrix");
    cplx t = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

inline bool all_finite(const ComplexMatrix& a) {
    return std::all_of(a.entries().begin(), a.entries().end(),
                       [](const cplx& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

inline double vector_norm(const ComplexVector& x) {
    double s = 0.0;
    for (const auto& v : x) s += std::norm(v);
    return std::sqrt(s);
}

inline cplx inner(const ComplexVector& x, const ComplexVector& y) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

// ---- quantum space ----

struct QuantumSpace {
    int n_sites = 0;

    QuantumSpace() = default;
    explicit QuantumSpace(int n, int cap = kDefaultSiteCap) : n_sites(n) {
        if (n < 0) throw IndexError("negative site count");
        if (n > cap) throw CapacityError("N=" + std::to_string(n) + " exceeds dense cap " + std::to_string(cap));
    }
    std::size_t dimension() const { return std::size_t{1} << n_sites; }
};

// site k (1-based) is the (k-1)-th tensor factor from the left; bit value 0 = spin up
inline int site_bit(std::size_t index, int k, int n_sites) {
    return static_cast<int>((index >> (n_sites - k)) & 1u);
}

inline int down_count(std::size_t index) { return static_cast<int>(__builtin_popcountll(index)); }

struct SiteOperator {
    enum class Kind { Identity, SigmaZ, SigmaPlus, SigmaMinus, DiagExp };
    Kind kind = Kind::Identity;
    double h = 0.0;

    static SiteOperator identity() { return {Kind::Identity, 0.0}; }
    static SiteOperator sigma_z() { return {Kind::SigmaZ, 0.0}; }
    static SiteOperator sigma_plus() { return {Kind::SigmaPlus, 0.0}; }
    static SiteOperator sigma_minus() { return {Kind::SigmaMinus, 0.0}; }
    static SiteOperator diag_exp(double h) { return {Kind::DiagExp, h}; }

    ComplexMatrix matrix() const {
        switch (kind) {
            case Kind::Identity: return ComplexMatrix::identity(2);
            case Kind::SigmaZ: return {{1.0, 0.0}, {0.0, -1.0}};
            case Kind::SigmaPlus: return {{0.0, 1.0}, {0.0, 0.0}};
            case Kind::SigmaMinus: return {{0.0, 0.0}, {1.0, 0.0}};
            case Kind::DiagExp: return {{std::exp(h), 0.0}, {0.0, std::exp(-h)}};
        }
        return ComplexMatrix::identity(2);
    }
};

// I^{k-1} (x) op (x) I^{N-k} for an arbitrary 2x2 op
inline ComplexMatrix embed_local(const ComplexMatrix& op, int k, const QuantumSpace& space) {
    if (op.rows() != 2 || op.cols() != 2) throw ShapeError("embed_local expects a 2x2 operator");
    if (k < 1 || k > space.n_sites)
        throw IndexError("site " + std::to_string(k) + " outside 1.." + std::to_string(space.n_sites));
    const std::size_t dim = space.dimension();
    ComplexMatrix out(dim, dim);
    const int shift = space.n_sites - k;
    const std::size_t mask = std::size_t{1} << shift;
    for (std::size_t c = 0; c < dim; ++c) {
        const int cb = static_cast<int>((c >> shift) & 1u);
        for (int rb = 0; rb < 2; ++rb) {
            const cplx x = op(rb, cb);
            if (x == cplx(0.0, 0.0)) continue;
            const std::size_t r = rb ? (c | mask) : (c & ~mask);
            out(r, c) = x;
        }
    }
    return out;
}

inline ComplexMatrix embed_site(const SiteOperator& op, int k, const QuantumSpace& space) {
    return embed_local(op.matrix(), k, space);
}

// s(u - v + sign*eta*sigma^z_k), diagonal in the computational basis
inline ComplexMatrix site_trig(cplx u, cplx v, cplx eta, int sign, int k, const QuantumSpace& space, Convention conv) {
    if (k < 1 || k > space.n_sites)
        throw IndexError("site " + std::to_string(k) + " outside 1.." + std::to_string(space.n_sites));
    const double sg = sign >= 0 ? 1.0 : -1.0;
    const cplx up = sfun(conv, u - v + sg * eta), dn = sfun(conv, u - v - sg * eta);
    const std::size_t dim = space.dimension();
    ComplexMatrix out(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) out(i, i) = site_bit(i, k, space.n_sites) == 0 ? up : dn;
    return out;
}

inline ComplexVector basis_vector(std::size_t dim, std::size_t index) {
    ComplexVector e(dim, cplx(0.0, 0.0));
    e.at(index) = 1.0;
    return e;
}

// |all down> sits at the last index
inline ComplexVector all_down(const QuantumSpace& space) { return basis_vector(space.dimension(), space.dimension() - 1); }

// sum_k sigma^z_k, diagonal
inline ComplexMatrix total_sigma_z(const QuantumSpace& space) {
    const std::size_t dim = space.dimension();
    ComplexMatrix out(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) out(i, i) = double(space.n_sites - 2 * down_count(i));
    return out;
}

}  // namespace sixvertex

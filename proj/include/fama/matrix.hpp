#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "fama/errors.hpp"

namespace fama {

using cd = std::complex<double>;
using CVector = std::vector<cd>;

// Dense row-major complex matrix. Small and unclever on purpose: every
// dimension in this project is at most a few hundred.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    static CMatrix identity(int n) {
        CMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cd& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const cd& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    std::span<cd> row(int i) { return {a_.data() + size_t(i) * cols_, size_t(cols_)}; }
    std::span<const cd> row(int i) const { return {a_.data() + size_t(i) * cols_, size_t(cols_)}; }

    cd* data() { return a_.data(); }
    const cd* data() const { return a_.data(); }

    bool operator==(const CMatrix&) const = default;

    CVector col(int j) const {
        CVector c(rows_);
        for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    CMatrix adjoint() const {
        CMatrix m(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    CMatrix operator*(const CMatrix& o) const {
        assert(cols_ == o.rows_);
        CMatrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int k = 0; k < cols_; ++k) {
                const cd aik = (*this)(i, k);
                if (aik == cd{}) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
            }
        }
        return r;
    }

    CVector operator*(std::span<const cd> v) const {
        assert(int(v.size()) == cols_);
        CVector r(rows_);
        for (int i = 0; i < rows_; ++i) {
            cd acc{};
            const cd* ai = a_.data() + size_t(i) * cols_;
            for (int j = 0; j < cols_; ++j) acc += ai[j] * v[j];
            r[i] = acc;
        }
        return r;
    }

    double frobenius_norm() const {
        double s = 0;
        for (const cd& z : a_) s += std::norm(z);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0;
        for (const cd& z : a_) m = std::max(m, std::abs(z));
        return m;
    }

    // Principal submatrix with row and column `l` deleted.
    CMatrix minor_removing(int l) const {
        assert(rows_ == cols_ && l >= 0 && l < rows_);
        CMatrix m(rows_ - 1, cols_ - 1);
        for (int i = 0, ti = 0; i < rows_; ++i) {
            if (i == l) continue;
            for (int j = 0, tj = 0; j < cols_; ++j) {
                if (j == l) continue;
                m(ti, tj) = (*this)(i, j);
                ++tj;
            }
            ++ti;
        }
        return m;
    }

    CMatrix submatrix(std::span<const int> idx) const {
        assert(rows_ == cols_);
        const int m = int(idx.size());
        CMatrix r(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) r(i, j) = (*this)(idx[i], idx[j]);
        return r;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<cd> a_;
};

inline cd inner(std::span<const cd> x, std::span<const cd> y) {
    assert(x.size() == y.size());
    cd s{};
    for (size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

inline double norm2(std::span<const cd> x) {
    double s = 0;
    for (const cd& z : x) s += std::norm(z);
    return std::sqrt(s);
}

inline void scale(std::span<cd> x, cd c) {
    for (cd& z : x) z *= c;
}

inline CMatrix outer(std::span<const cd> x) {
    CMatrix m(int(x.size()), int(x.size()));
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j) m(int(i), int(j)) = x[i] * std::conj(x[j]);
    return m;
}

// Rotate a vector by a global phase so its first entry above `tol`·max|x|
// becomes real positive. Leaves the all-zero vector alone.
inline void canonicalize_phase(std::span<cd> x, double tol = 1e-12) {
    double m = 0;
    for (const cd& z : x) m = std::max(m, std::abs(z));
    if (m == 0) return;
    for (const cd& z : x) {
        if (std::abs(z) > tol * m) {
            const cd phase = std::conj(z) / std::abs(z);
            for (cd& w : x) w *= phase;
            return;
        }
    }
}

// Same, anchored on the largest-magnitude entry (first of any ties). Used for
// iteratively computed vectors whose small entries only hold iteration noise.
inline void canonicalize_phase_on_max(std::span<cd> x) {
    double m = 0;
    size_t arg = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (std::abs(x[i]) > m) {
            m = std::abs(x[i]);
            arg = i;
        }
    }
    if (m == 0) return;
    const cd phase = std::conj(x[arg]) / m;
    for (cd& w : x) w *= phase;
}

// Hermitian matrix with validated symmetry. Off-Hermitian parts beyond
// 1e-12 of the largest entry are an error; below that the matrix is
// symmetrized and the diagonal imaginary parts dropped.
class HermitianMatrix {
public:
    HermitianMatrix() = default;

    explicit HermitianMatrix(CMatrix m, double tol = 1e-12) {
        if (m.rows() != m.cols() || m.rows() == 0)
            throw ValidationError("HermitianMatrix: square nonempty matrix required");
        const int n = m.rows();
        const double scale = m.max_abs();
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                const cd d = m(i, j) - std::conj(m(j, i));
                if (std::abs(d) > tol * std::max(scale, 1e-300))
                    throw ValidationError("HermitianMatrix: entry (" + std::to_string(i) + "," +
                                          std::to_string(j) + ") breaks Hermitian symmetry");
                const cd avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
                m(i, j) = avg;
                m(j, i) = std::conj(avg);
            }
            m(i, i) = cd(m(i, i).real(), 0.0);
        }
        m_ = std::move(m);
    }

    static HermitianMatrix identity(int n) { return HermitianMatrix(CMatrix::identity(n)); }

    static HermitianMatrix diagonal(std::span<const double> d) {
        CMatrix m(int(d.size()), int(d.size()));
        for (size_t i = 0; i < d.size(); ++i) m(int(i), int(i)) = d[i];
        return HermitianMatrix(std::move(m));
    }

    int dim() const { return m_.rows(); }
    const CMatrix& matrix() const { return m_; }
    const cd& operator()(int i, int j) const { return m_(i, j); }

    HermitianMatrix minor_removing(int l) const { return HermitianMatrix(m_.minor_removing(l)); }
    HermitianMatrix submatrix(std::span<const int> idx) const {
        return HermitianMatrix(m_.submatrix(idx));
    }

    double frobenius_norm() const { return m_.frobenius_norm(); }

    // Real-valued quadratic form x^H M x.
    double quadratic_form(std::span<const cd> x) const {
        return inner(x, m_ * x).real();
    }

private:
    CMatrix m_;
};

}  // namespace fama

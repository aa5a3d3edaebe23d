#include "fama/eig.hpp"

#include <algorithm>
#include <numeric>

#include "fama/rng.hpp"

namespace fama {

namespace {

double off_diagonal_norm(const CMatrix& m) {
    double s = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

}  // namespace

EigenDecomposition hermitian_eig(const HermitianMatrix& c, long max_rotations) {
    const int n = c.dim();
    if (max_rotations < 0) max_rotations = 100L * n * n;

    CMatrix m = c.matrix();
    CMatrix v = CMatrix::identity(n);
    const double scale = std::max(m.frobenius_norm(), 1e-300);
    const double stop = 1e-15 * scale;

    long rotations = 0;
    while (true) {
        const double off = off_diagonal_norm(m);
        if (off <= stop || n == 1) break;
        if (rotations >= max_rotations)
            throw NonConvergenceError("hermitian_eig: rotation cap " + std::to_string(max_rotations) +
                                          " reached, off-diagonal residual " + std::to_string(off),
                                      off);
        // One cyclic sweep. Pivots below the per-sweep threshold are skipped
        // so late sweeps touch only what still matters.
        const double thresh = off / (n * double(n)) * 1e-2;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cd apq = m(p, q);
                const double absapq = std::abs(apq);
                if (absapq <= std::max(thresh, 1e-300 * scale)) continue;
                if (absapq <= 1e-18 * scale) {
                    m(p, q) = m(q, p) = 0.0;
                    continue;
                }
                ++rotations;

                // Phase factor that makes the pivot real, then a real Jacobi
                // rotation on the (p,q) block.
                const cd w = apq / absapq;  // e^{iφ}
                const double app = m(p, p).real();
                const double aqq = m(q, q).real();
                const double tau = (aqq - app) / (2.0 * absapq);
                const double t = (tau >= 0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                            : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * cs;

                // Column update by J, with J[:,p]=(c, −s·conj(w)), J[:,q]=(s, c·conj(w)).
                const cd wc = std::conj(w);
                for (int k = 0; k < n; ++k) {
                    const cd tp = m(k, p), tq = m(k, q);
                    m(k, p) = cs * tp - sn * wc * tq;
                    m(k, q) = sn * tp + cs * wc * tq;
                }
                // Row update by J^H.
                for (int k = 0; k < n; ++k) {
                    const cd tp = m(p, k), tq = m(q, k);
                    m(p, k) = cs * tp - sn * w * tq;
                    m(q, k) = sn * tp + cs * w * tq;
                }
                m(p, q) = m(q, p) = 0.0;
                m(p, p) = cd(m(p, p).real(), 0.0);
                m(q, q) = cd(m(q, q).real(), 0.0);

                for (int k = 0; k < n; ++k) {
                    const cd tp = v(k, p), tq = v(k, q);
                    v(k, p) = cs * tp - sn * wc * tq;
                    v(k, q) = sn * tp + cs * wc * tq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return m(i, i).real() < m(j, j).real(); });

    EigenDecomposition d;
    d.eigenvalues.resize(n);
    d.eigenvectors = CMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        d.eigenvalues[j] = m(order[j], order[j]).real();
        CVector col = v.col(order[j]);
        canonicalize_phase(col);
        for (int i = 0; i < n; ++i) d.eigenvectors(i, j) = col[i];
    }
    return d;
}

CholeskyFactor::CholeskyFactor(const HermitianMatrix& b) : l_(b.dim(), b.dim()) {
    const int n = b.dim();
    for (int j = 0; j < n; ++j) {
        double diag = b(j, j).real();
        for (int k = 0; k < j; ++k) diag -= std::norm(l_(j, k));
        if (!(diag > 0))
            throw NotPositiveDefiniteError("cholesky: not positive definite at pivot " +
                                               std::to_string(j) + " (value " + std::to_string(diag) + ")",
                                           j, diag);
        const double ljj = std::sqrt(diag);
        l_(j, j) = ljj;
        for (int i = j + 1; i < n; ++i) {
            cd s = b(i, j);
            for (int k = 0; k < j; ++k) s -= l_(i, k) * std::conj(l_(j, k));
            l_(i, j) = s / ljj;
        }
    }
}

CVector CholeskyFactor::solve(std::span<const cd> rhs) const {
    const int n = dim();
    CVector y(rhs.begin(), rhs.end());
    for (int i = 0; i < n; ++i) {
        cd s = y[i];
        for (int k = 0; k < i; ++k) s -= l_(i, k) * y[k];
        y[i] = s / l_(i, i).real();
    }
    for (int i = n - 1; i >= 0; --i) {
        cd s = y[i];
        for (int k = i + 1; k < n; ++k) s -= std::conj(l_(k, i)) * y[k];
        y[i] = s / l_(i, i).real();
    }
    return y;
}

CMatrix CholeskyFactor::inverse() const {
    const int n = dim();
    // Invert L in place (column by column), then B^{-1} = L^{-H} L^{-1}.
    CMatrix li(n, n);
    for (int j = 0; j < n; ++j) {
        li(j, j) = 1.0 / l_(j, j).real();
        for (int i = j + 1; i < n; ++i) {
            cd s{};
            for (int k = j; k < i; ++k) s -= l_(i, k) * li(k, j);
            li(i, j) = s / l_(i, i).real();
        }
    }
    CMatrix inv(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            cd s{};
            for (int k = i; k < n; ++k) s += std::conj(li(k, i)) * li(k, j);
            inv(i, j) = s;
            inv(j, i) = std::conj(s);
        }
        inv(i, i) = cd(inv(i, i).real(), 0.0);
    }
    return inv;
}

namespace {

HermitianMatrix power_of_pd(const HermitianMatrix& b, double exponent, const char* what) {
    const EigenDecomposition d = hermitian_eig(b);
    const int n = b.dim();
    for (double lam : d.eigenvalues)
        if (!(lam > 0))
            throw NotPositiveDefiniteError(std::string(what) + ": not positive definite (eigenvalue " +
                                               std::to_string(lam) + ")",
                                           -1, lam);
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            cd s{};
            for (int k = 0; k < n; ++k)
                s += d.eigenvectors(i, k) * std::pow(d.eigenvalues[k], exponent) *
                     std::conj(d.eigenvectors(j, k));
            m(i, j) = s;
            m(j, i) = std::conj(s);
        }
        m(i, i) = cd(m(i, i).real(), 0.0);
    }
    return HermitianMatrix(std::move(m), 1e-9);
}

}  // namespace

HermitianMatrix inv_sqrt_pd(const HermitianMatrix& b) { return power_of_pd(b, -0.5, "inv_sqrt_pd"); }
HermitianMatrix sqrt_pd(const HermitianMatrix& b) { return power_of_pd(b, 0.5, "sqrt_pd"); }

GeneralizedEigenPair power_method_gen(const HermitianMatrix& a, const HermitianMatrix& b,
                                      double tol, int max_iter, std::uint64_t seed) {
    const int n = a.dim();
    if (b.dim() != n) throw ValidationError("power_method_gen: dimension mismatch");
    if (a.frobenius_norm() == 0.0)
        throw Error("power_method_gen: zero matrix has zero dominant eigenvalue");

    const CholeskyFactor chol(b);

    Stream stream(seed);
    CVector t(n);
    for (int attempt = 0;; ++attempt) {
        for (cd& z : t) z = stream.next_cgauss();
        scale(t, 1.0 / norm2(t));
        if (norm2(a.matrix() * t) > 1e-14 * a.frobenius_norm()) break;
        if (attempt >= 8)
            throw Error("power_method_gen: start vector stuck in the null space of A");
    }

    double lambda = 0;
    double change = 0;
    for (int it = 1; it <= max_iter; ++it) {
        CVector y = a.matrix() * t;
        t = chol.solve(y);
        const double nt = norm2(t);
        if (nt == 0) throw Error("power_method_gen: iterate collapsed to zero");
        scale(t, 1.0 / nt);

        const double num = a.quadratic_form(t);
        const double den = b.quadratic_form(t);
        const double next = num / den;
        change = std::abs(next - lambda);
        lambda = next;
        if (it > 1 && change <= tol * std::max(std::abs(lambda), 1.0)) {
            GeneralizedEigenPair out;
            out.eigenvalue = lambda;
            out.iterations = it;
            canonicalize_phase_on_max(t);
            out.eigenvector_gen = t;
            CVector vc = sqrt_pd(b).matrix() * t;
            scale(vc, 1.0 / norm2(vc));
            canonicalize_phase_on_max(vc);
            out.eigenvector_c = std::move(vc);
            CVector r = a.matrix() * t;
            const CVector bt = b.matrix() * t;
            for (int i = 0; i < n; ++i) r[i] -= lambda * bt[i];
            out.residual = norm2(r);
            return out;
        }
    }
    throw NonConvergenceError("power_method_gen: no convergence in " + std::to_string(max_iter) +
                                  " iterations (last change " + std::to_string(change) + ")",
                              change);
}

IdentityCheck eigenvector_eigenvalue_identity_check(const HermitianMatrix& c, int i, int l) {
    const int n = c.dim();
    if (n < 2 || i < 0 || i >= n || l < 0 || l >= n)
        throw ValidationError("identity check: bad indices");

    const EigenDecomposition full = hermitian_eig(c);
    const EigenDecomposition minor = hermitian_eig(c.minor_removing(l));
    const auto& lam = full.eigenvalues;
    const auto& alpha = minor.eigenvalues;

    const double spread = lam.back() - lam.front();
    IdentityCheck out;
    for (int r = 0; r + 1 < n; ++r)
        if (lam[r + 1] - lam[r] <= 1e-9 * spread) out.degenerate_spectrum = true;

    const double vil2 = std::norm(full.eigenvectors(l, i));
    double lhs = vil2;
    double minfac_l = std::numeric_limits<double>::max();
    for (int t = 0; t < n; ++t) {
        if (t == i) continue;
        lhs *= lam[i] - lam[t];
        minfac_l = std::min(minfac_l, std::abs(lam[i] - lam[t]));
    }
    double rhs = 1.0;
    double minfac_r = std::numeric_limits<double>::max();
    for (int t = 0; t < n - 1; ++t) {
        rhs *= lam[i] - alpha[t];
        minfac_r = std::min(minfac_r, std::abs(lam[i] - alpha[t]));
    }
    out.lhs = lhs;
    out.rhs = rhs;

    // Each eigenvalue carries ~eps·‖C‖ absolute error; a product of gaps
    // amplifies that by value/min-gap. This floor is what any correct
    // implementation can promise for |lhs − rhs|.
    const double eps_abs = 64.0 * std::numeric_limits<double>::epsilon() * std::max(c.frobenius_norm(), 1.0);
    const double amp_l = (minfac_l > 0) ? std::abs(lhs) / minfac_l + vil2 : 1.0;
    const double amp_r = (minfac_r > 0) ? std::abs(rhs) / minfac_r : 1.0;
    out.noise_floor = eps_abs * (amp_l + amp_r + 1.0);
    return out;
}

bool interlacing_check(const HermitianMatrix& c, int l) {
    const int n = c.dim();
    if (n < 2 || l < 0 || l >= n) throw ValidationError("interlacing_check: bad index");
    const EigenDecomposition full = hermitian_eig(c);
    const EigenDecomposition minor = hermitian_eig(c.minor_removing(l));
    const double spread = full.eigenvalues.back() - full.eigenvalues.front();
    const double slack = 1e-10 * std::max(spread, 1e-300);
    for (int i = 0; i + 1 < n; ++i) {
        const double a = minor.eigenvalues[i];
        if (a < full.eigenvalues[i] - slack || a > full.eigenvalues[i + 1] + slack) return false;
    }
    return true;
}

}  // namespace fama

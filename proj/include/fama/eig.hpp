#pragma once

#include <cstdint>
#include <utility>

#include "fama/matrix.hpp"

namespace fama {

// Full spectrum of a Hermitian matrix. Eigenvalues ascend; eigenvector
// columns are orthonormal, phase-fixed so the first significant entry of
// each column is real positive.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    CMatrix eigenvectors;  // column i pairs with eigenvalues[i]

    CVector eigenvector(int i) const { return eigenvectors.col(i); }
};

// Cyclic complex Jacobi. Deterministic: fixed sweep order, stable ascending
// sort, canonical column phases. `max_rotations` defaults to 100·dim².
EigenDecomposition hermitian_eig(const HermitianMatrix& c, long max_rotations = -1);

// Lower-triangular factor L of a positive definite B with L·L^H = B, plus the
// solves the rest of the library needs from it.
class CholeskyFactor {
public:
    explicit CholeskyFactor(const HermitianMatrix& b);

    int dim() const { return l_.rows(); }
    const CMatrix& lower() const { return l_; }

    CVector solve(std::span<const cd> rhs) const;  // B x = rhs
    CMatrix inverse() const;                       // full B^{-1}

private:
    CMatrix l_;
};

inline CMatrix cholesky_pd(const HermitianMatrix& b) { return CholeskyFactor(b).lower(); }

// B^{-1/2} through the eigendecomposition (V·diag(λ^{-1/2})·V^H).
HermitianMatrix inv_sqrt_pd(const HermitianMatrix& b);
// B^{1/2}, same route.
HermitianMatrix sqrt_pd(const HermitianMatrix& b);

// Dominant generalized eigenpair of (A, B), A Hermitian PSD, B PD.
struct GeneralizedEigenPair {
    double eigenvalue = 0;     // dominant λ with A u = λ B u
    CVector eigenvector_c;     // unit eigenvector of C = B^{-1/2} A B^{-1/2}
    CVector eigenvector_gen;   // generalized eigenvector u, unit 2-norm
    int iterations = 0;
    double residual = 0;       // ‖A u − λ B u‖₂ at exit
};

GeneralizedEigenPair power_method_gen(const HermitianMatrix& a, const HermitianMatrix& b,
                                      double tol = 1e-10, int max_iter = 10000,
                                      std::uint64_t seed = 0x5eedu);

// Both sides of the eigenvector-eigenvalue identity for eigenvalue i of c and
// the principal minor with row/column l deleted:
//   lhs = |v_{i,l}|² ∏_{n≠i} (λ_i − λ_n),   rhs = ∏_n (λ_i − α_{l,n}).
// `degenerate_spectrum` flags pairwise λ-gaps below 1e-9·spread; the identity
// still holds there but a relative comparison of the sides loses meaning.
// `noise_floor` bounds the achievable absolute agreement of the two sides in
// floating point (forward error of the gap products).
struct IdentityCheck {
    double lhs = 0;
    double rhs = 0;
    bool degenerate_spectrum = false;
    double noise_floor = 0;
};

IdentityCheck eigenvector_eigenvalue_identity_check(const HermitianMatrix& c, int i, int l);

// Cauchy interlacing of c against its principal minor without row/column l,
// with 1e-10·spread slack.
bool interlacing_check(const HermitianMatrix& c, int l);

}  // namespace fama

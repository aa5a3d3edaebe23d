#include "fama/oracle.hpp"

#include <limits>

namespace fama {

namespace {

// C(n, k) capped so the guard comparison cannot overflow.
long binomial_capped(int n, int k, long cap) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    double v = 1;
    for (int i = 1; i <= k; ++i) {
        v *= double(n - k + i) / i;
        if (v > 2.0 * double(cap)) return 2 * cap;
    }
    return long(v + 0.5);
}

}  // namespace

OracleResult exhaustive_best_subset(const SignalMatrixPair& pair, int active_ports) {
    const int n = pair.B.dim();
    const int l = active_ports;
    if (l < 1 || l > n) throw ValidationError("exhaustive_best_subset: bad L");
    constexpr long kGuard = 1'000'000;
    const long count = binomial_capped(n, l, kGuard);
    if (count > kGuard)
        throw ValidationError("exhaustive_best_subset: C(" + std::to_string(n) + "," +
                              std::to_string(l) + ") exceeds the 1e6 subset guard");

    OracleResult out;
    std::vector<int> subset(l);
    for (int i = 0; i < l; ++i) subset[i] = i;

    while (true) {
        const CombinerResult comb = solve_combiner(pair, subset);
        ++out.evaluated_subsets;
        // Strict > keeps the lexicographically first maximizer.
        if (out.evaluated_subsets == 1 || comb.sinr > out.best_sinr) {
            out.best_sinr = comb.sinr;
            out.best_ports = subset;
        }
        // Next combination in lexicographic order.
        int i = l - 1;
        while (i >= 0 && subset[i] == n - l + i) --i;
        if (i < 0) break;
        ++subset[i];
        for (int j = i + 1; j < l; ++j) subset[j] = subset[j - 1] + 1;
    }
    return out;
}

Lemma1Sides lemma1_both_sides(const HermitianMatrix& a, const HermitianMatrix& b, int l) {
    const int n = a.dim();
    if (n < 2 || l < 0 || l >= n) throw ValidationError("lemma1_both_sides: bad index");
    if (n > 16) throw ValidationError("lemma1_both_sides: dense path limited to N <= 16");

    const HermitianMatrix bmh = inv_sqrt_pd(b);
    const HermitianMatrix c(bmh.matrix() * a.matrix() * bmh.matrix(), 1e-8);
    const EigenDecomposition full = hermitian_eig(c);
    const auto& lam = full.eigenvalues;
    const double lam_n = lam[n - 1];

    const HermitianMatrix al = a.minor_removing(l);
    const HermitianMatrix bl = b.minor_removing(l);
    const HermitianMatrix bl_mh = inv_sqrt_pd(bl);
    const HermitianMatrix cl(bl_mh.matrix() * al.matrix() * bl_mh.matrix(), 1e-8);
    const EigenDecomposition minor = hermitian_eig(cl);
    const auto& alpha = minor.eigenvalues;

    const CVector u = bmh.matrix() * full.eigenvector(n - 1);  // B-orthonormal
    const CMatrix binv = CholeskyFactor(b).inverse();
    const double weight = std::norm(u[l]) / binv(l, l).real();

    Lemma1Sides out;
    const double spread = lam.back() - lam.front();
    out.conditioning_warning = (n >= 2 && lam[n - 1] - lam[n - 2] < 1e-9 * spread);

    double product = weight * (lam_n - (n >= 2 ? lam[n - 2] : 0.0));
    double min_fac = std::numeric_limits<double>::max();
    for (int t = 0; t < n - 2; ++t) {
        product *= (lam_n - lam[t]) / (lam_n - alpha[t]);
        min_fac = std::min({min_fac, std::abs(lam_n - lam[t]), std::abs(lam_n - alpha[t])});
    }
    out.product_form = product;
    out.direct_form = lam_n - alpha[n - 2];

    // Forward-error floor: the direct form is a difference of two O(λ_N)
    // numbers, the product form a chain of gap quotients.
    const double eps = std::numeric_limits<double>::epsilon();
    const double scale = std::max({std::abs(lam_n), std::abs(lam.front()), 1e-300});
    double amp = 1.0;
    if (min_fac < std::numeric_limits<double>::max() && min_fac > 0)
        amp += std::abs(product) / min_fac / std::max(scale, 1e-300);
    out.noise_floor = 256.0 * eps * scale * amp;
    return out;
}

bool lemma1_sides_agree(const Lemma1Sides& sides, double rel_tol) {
    const double diff = std::abs(sides.product_form - sides.direct_form);
    const double denom = std::max(std::abs(sides.product_form), std::abs(sides.direct_form));
    return diff <= std::max(rel_tol * denom, sides.noise_floor);
}

}  // namespace fama

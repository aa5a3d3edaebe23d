#pragma once

#include "fama/receivers.hpp"

namespace fama {

// Deliberately naive references used to validate the fast paths.

struct OracleResult {
    std::vector<int> best_ports;
    double best_sinr = 0;
    long evaluated_subsets = 0;
};

// Exhaustive search over all C(N, L) port subsets in lexicographic order,
// each scored with the optimal combiner. Refuses when C(N, L) > 1e6.
OracleResult exhaustive_best_subset(const SignalMatrixPair& pair, int active_ports);

// Both routes to the SINR drop of Lemma-1 shape, from dense full spectra:
//   product_form: ω_l (λ_N − λ_{N−1}) ∏_{t≤N−2} (λ_N − λ_t)/(λ_N − α_{l,t})
//   direct_form:  λ_N − α_{l,N−1}
// with λ the generalized eigenvalues of (A, B), α_{l,·} those of the pair
// with row/column l deleted, and ω_l = |u_{N,l}|²/(B^{-1})_{ll}.
struct Lemma1Sides {
    double product_form = 0;
    double direct_form = 0;
    bool conditioning_warning = false;  // λ_N gap below 1e-9·spread
    double noise_floor = 0;             // attainable |product − direct| in floating point
};

Lemma1Sides lemma1_both_sides(const HermitianMatrix& a, const HermitianMatrix& b, int l);
inline Lemma1Sides lemma1_both_sides(const SignalMatrixPair& pair, int l) {
    return lemma1_both_sides(pair.A, pair.B, l);
}

// Agreement predicate shared by tests, `verify` and the acceptance suite.
bool lemma1_sides_agree(const Lemma1Sides& sides, double rel_tol);

}  // namespace fama

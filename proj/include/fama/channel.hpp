#pragma once

#include "fama/eig.hpp"
#include "fama/matrix.hpp"
#include "fama/rng.hpp"
#include "fama/topology.hpp"

namespace fama {

// Spatial correlation of the FA ports: Σ_rs = J₀(2π·d_rs) with d_rs the
// Euclidean inter-port distance in wavelengths (Jakes on a line, Clarke's
// isotropic 2D model on a grid — one kernel covers both). Carries the
// eigen-based PSD square root used to color channel draws; negative
// eigenvalues within −1e-10·λ_max are clamped to zero, anything below that
// is a model error.
struct CorrelationMatrix {
    HermitianMatrix sigma;             // exact kernel values, unit diagonal
    CMatrix sqrt_factor;               // V·diag(√λ⁺)·V^H
    std::vector<double> eigenvalues;   // clamped, ascending
};

CorrelationMatrix correlation_matrix(const PortTopology& topology);

// One Monte-Carlo draw: per-user N×M channel matrices, columns CN(0, Σ).
struct ChannelRealization {
    int ports = 0;
    int bs_antennas = 0;
    std::vector<CMatrix> users;  // users[k] is H_k (N×M)

    int user_count() const { return int(users.size()); }
};

// Column m of H_k is F·z with z i.i.d. unit-power complex Gaussians pulled
// from the (master_seed, trial, k) substream, so draws are reproducible and
// independent of scheduling.
ChannelRealization sample_channels(const CorrelationMatrix& corr, int bs_antennas, int users,
                                   const TrialStream& stream);

}  // namespace fama

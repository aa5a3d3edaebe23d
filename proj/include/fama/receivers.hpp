#pragma once

#include <optional>

#include "fama/channel.hpp"
#include "fama/eig.hpp"
#include "fama/topology.hpp"

namespace fama {

// System-level parameters. The slow-FAMA setup ties the BS antenna count to
// the user count (one canonical precoder column per user), so only `users`
// is stored; snr is the linear transmit power ratio σ_S²/σ².
struct SystemConfig {
    int users = 1;          // K = M
    int active_ports = 1;   // L
    double snr = 1.0;
    PortTopology topology;

    int bs_antennas() const { return users; }
    void validate() const;
};

// Per-user matrix pair: a = desired column H_k e_k, A = a·a^H (rank-1 PSD),
// B = Σ_{j≠k} h_j h_j^H + I/snr (positive definite).
struct SignalMatrixPair {
    CVector a;
    HermitianMatrix A;
    HermitianMatrix B;
    double snr = 1.0;
};

SignalMatrixPair build_pair(const ChannelRealization& h, int k, double snr);

// Per-port SINR of user k at port r (single active port, unit combiner).
double per_port_sinr(const ChannelRealization& h, int k, int r, double snr);
std::vector<double> per_port_sinr_all(const ChannelRealization& h, int k, double snr);

// Post-combining SINR evaluated literally from the received-signal model for
// an arbitrary (not necessarily unit-norm) combiner.
double sinr_eq4(const ChannelRealization& h, int k, std::span<const int> ports,
                std::span<const cd> w, double snr);

double spectral_efficiency(double sinr);  // log2(1 + sinr)

// A receiver design: active ports (ascending original indices), unit-norm
// combiner with real-positive leading entry, and its SINR. `degenerate`
// marks the measure-zero case of zero desired signal on the selected ports.
struct ReceiverDesign {
    std::vector<int> ports;
    CVector w;
    double achieved_sinr = 0;
    bool degenerate = false;
};

double sinr_of_design(const ChannelRealization& h, int k, const ReceiverDesign& design, double snr);

struct CombinerResult {
    CVector w;
    double sinr = 0;
    bool degenerate = false;
};

// Optimal combiner on a fixed port set: the Rayleigh quotient maximizer of
// the selected subpair. Rank-1 Ã makes it closed-form, w ∝ B̃^{-1}ã with
// sinr = ã^H B̃^{-1} ã (the dominant generalized eigenvalue).
CombinerResult solve_combiner(const SignalMatrixPair& pair, std::span<const int> ports);

// Baselines and proposed schemes. Ties in every argmax/argmin go to the
// lowest original port index.
ReceiverDesign design_slow_fama(const SignalMatrixPair& pair, const ChannelRealization& h, int k,
                                double snr);
ReceiverDesign design_dc(const SignalMatrixPair& pair, const ChannelRealization& h, int k,
                         double snr, int active_ports);
ReceiverDesign design_mrc(const SignalMatrixPair& pair, const ChannelRealization& h, int k,
                          double snr, int active_ports);

// Exact SINR drop from deactivating port l: the dominant generalized
// eigenvalue of (A, B) minus that of the pair with row/column l removed.
double sinr_drop_exact(const HermitianMatrix& a, const HermitianMatrix& b, int l);

// Interlacing-backed lower bound ω_l·(λ_N − λ_{N−1}) on the exact drop, with
// ω_l = |u_{N,l}|²/(B^{-1})_{ll} for the B-orthonormalized dominant
// generalized eigenvector u_N. Tight (equality) when A is rank-1.
double sinr_drop_bound(const HermitianMatrix& a, const HermitianMatrix& b, int l);

struct DropReport {
    int port = 0;
    double exact_drop = 0;
    double lower_bound = 0;
};

DropReport drop_report(const HermitianMatrix& a, const HermitianMatrix& b, int l);
inline DropReport drop_report(const SignalMatrixPair& pair, int l) {
    return drop_report(pair.A, pair.B, l);
}
inline double sinr_drop_exact(const SignalMatrixPair& pair, int l) {
    return sinr_drop_exact(pair.A, pair.B, l);
}
inline double sinr_drop_bound(const SignalMatrixPair& pair, int l) {
    return sinr_drop_bound(pair.A, pair.B, l);
}

// Which per-port weight drives the greedy removal.
//   exact_drop:      |x_l|²/(B̃^{-1})_{ll}, x = B̃^{-1}ã — the exact one-step
//                    SINR drop; O(n²) per removal via inverse downdating.
//   whitened:        |v_l|² of the unit dominant eigenvector of
//                    B̃^{-1/2}ÃB̃^{-1/2}; needs a fresh eigendecomposition per
//                    removal, only sensible for small N.
//   raw_generalized: |t_l|² of the unit-2-norm power-method iterate B̃^{-1}ã.
enum class GeportMetric { exact_drop, whitened, raw_generalized };

struct GeportOptions {
    GeportMetric metric = GeportMetric::exact_drop;
    // Stop deactivating once the accumulated SINR loss would exceed this
    // budget; the design then keeps more than `active_ports` ports.
    std::optional<double> loss_budget;
};

struct GeportStep {
    int removed_port = 0;       // original index
    double metric_value = 0;    // selection weight of the removed port
    double eigenvalue_after = 0;
    double accumulated_loss = 0;
};

struct GeportTrace {
    double full_eigenvalue = 0;
    std::vector<GeportStep> steps;
};

// Greedy joint port selection and combining: while more than L ports remain,
// drop the port with the smallest selection weight, then combine on the
// survivors with the optimal (generalized-eigenvector) combiner.
ReceiverDesign design_geport(const SignalMatrixPair& pair, int active_ports,
                             const GeportOptions& options = {}, GeportTrace* trace = nullptr);

// Removal order for the full run down to `min_ports` survivors (the greedy
// trajectory is independent of where it stops, so sweeps over L reuse it).
std::vector<int> geport_removal_order(const SignalMatrixPair& pair, int min_ports,
                                      const GeportOptions& options = {});

}  // namespace fama

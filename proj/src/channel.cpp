#include "fama/channel.hpp"

#include <cmath>

namespace fama {

CorrelationMatrix correlation_matrix(const PortTopology& topology) {
    const int n = topology.ports();
    CMatrix sigma(n, n);
    for (int r = 0; r < n; ++r) {
        sigma(r, r) = 1.0;
        for (int s = r + 1; s < n; ++s) {
            const double d = topology.distance(r, s);
            const double rho = std::cyl_bessel_j(0.0, 2.0 * std::numbers::pi * d);
            sigma(r, s) = rho;
            sigma(s, r) = rho;
        }
    }

    CorrelationMatrix out;
    out.sigma = HermitianMatrix(std::move(sigma));

    EigenDecomposition d = hermitian_eig(out.sigma);
    const double lam_max = std::max(d.eigenvalues.back(), 0.0);
    for (double& lam : d.eigenvalues) {
        if (lam < -1e-10 * lam_max)
            throw ModelError("correlation_matrix: eigenvalue " + std::to_string(lam) +
                             " below the PSD clamp tolerance");
        if (lam < 0) lam = 0;
    }

    CMatrix f(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            cd s{};
            for (int k = 0; k < n; ++k)
                s += d.eigenvectors(i, k) * std::sqrt(d.eigenvalues[k]) * std::conj(d.eigenvectors(j, k));
            f(i, j) = s;
            f(j, i) = std::conj(s);
        }
    }
    out.sqrt_factor = std::move(f);
    out.eigenvalues = std::move(d.eigenvalues);
    return out;
}

ChannelRealization sample_channels(const CorrelationMatrix& corr, int bs_antennas, int users,
                                   const TrialStream& stream) {
    if (bs_antennas < 1 || users < 1)
        throw ValidationError("sample_channels: M and K must be >= 1");
    const int n = corr.sigma.dim();

    ChannelRealization h;
    h.ports = n;
    h.bs_antennas = bs_antennas;
    h.users.reserve(users);

    CVector z(n);
    for (int k = 0; k < users; ++k) {
        Stream s = Stream::derive(stream.master_seed, stream.trial, std::uint64_t(k));
        CMatrix hk(n, bs_antennas);
        for (int m = 0; m < bs_antennas; ++m) {
            for (int i = 0; i < n; ++i) z[i] = s.next_cgauss();
            const CVector col = corr.sqrt_factor * z;
            for (int i = 0; i < n; ++i) hk(i, m) = col[i];
        }
        h.users.push_back(std::move(hk));
    }
    return h;
}

}  // namespace fama

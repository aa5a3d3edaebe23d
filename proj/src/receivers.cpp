#include "fama/receivers.hpp"

#include <algorithm>
#include <numeric>

namespace fama {

void SystemConfig::validate() const {
    if (users < 1) throw ValidationError("config: users must be >= 1");
    if (active_ports < 1 || active_ports > topology.ports())
        throw ValidationError("config: active_ports must be in [1, N]");
    if (!(snr > 0)) throw ValidationError("config: snr must be > 0");
    if (topology.ports() < 1) throw ValidationError("config: empty topology");
}

SignalMatrixPair build_pair(const ChannelRealization& h, int k, double snr) {
    if (k < 0 || k >= h.user_count()) throw ValidationError("build_pair: bad user index");
    if (!(snr > 0)) throw ValidationError("build_pair: snr must be > 0");
    const CMatrix& hk = h.users[k];
    const int n = hk.rows();
    const int m = hk.cols();

    SignalMatrixPair pair;
    pair.snr = snr;
    pair.a = hk.col(k);
    pair.A = HermitianMatrix(outer(pair.a));

    CMatrix b(n, n);
    for (int j = 0; j < m; ++j) {
        if (j == k) continue;
        const CVector hj = hk.col(j);
        for (int r = 0; r < n; ++r) {
            const cd hr = hj[r];
            for (int s = 0; s < n; ++s) b(r, s) += hr * std::conj(hj[s]);
        }
    }
    const double inv_snr = 1.0 / snr;
    for (int r = 0; r < n; ++r) b(r, r) += inv_snr;
    pair.B = HermitianMatrix(std::move(b), 1e-9);
    return pair;
}

double per_port_sinr(const ChannelRealization& h, int k, int r, double snr) {
    const CMatrix& hk = h.users[k];
    if (r < 0 || r >= hk.rows()) throw ValidationError("per_port_sinr: bad port index");
    double row_power = 0;
    for (int j = 0; j < hk.cols(); ++j) row_power += std::norm(hk(r, j));
    const double desired = std::norm(hk(r, k));
    return desired / (row_power - desired + 1.0 / snr);
}

std::vector<double> per_port_sinr_all(const ChannelRealization& h, int k, double snr) {
    const CMatrix& hk = h.users[k];
    std::vector<double> out(hk.rows());
    const double inv_snr = 1.0 / snr;
    for (int r = 0; r < hk.rows(); ++r) {
        double row_power = 0;
        for (int j = 0; j < hk.cols(); ++j) row_power += std::norm(hk(r, j));
        const double desired = std::norm(hk(r, k));
        out[r] = desired / (row_power - desired + inv_snr);
    }
    return out;
}

double sinr_eq4(const ChannelRealization& h, int k, std::span<const int> ports,
                std::span<const cd> w, double snr) {
    const CMatrix& hk = h.users[k];
    if (ports.size() != w.size() || ports.empty())
        throw ValidationError("sinr_eq4: ports/combiner size mismatch");
    double interference = 0;
    double desired = 0;
    for (int j = 0; j < hk.cols(); ++j) {
        cd acc{};
        for (size_t i = 0; i < ports.size(); ++i) acc += std::conj(w[i]) * hk(ports[i], j);
        if (j == k)
            desired = std::norm(acc);
        else
            interference += std::norm(acc);
    }
    const double wnorm2 = [&] {
        double s = 0;
        for (const cd& z : w) s += std::norm(z);
        return s;
    }();
    // Eq-form ratio is invariant to ‖w‖; the noise term scales with it.
    return desired / (interference + wnorm2 / snr);
}

double spectral_efficiency(double sinr) {
    if (sinr < 0) throw ValidationError("spectral_efficiency: negative sinr");
    return std::log2(1.0 + sinr);
}

double sinr_of_design(const ChannelRealization& h, int k, const ReceiverDesign& design, double snr) {
    return sinr_eq4(h, k, design.ports, design.w, snr);
}

CombinerResult solve_combiner(const SignalMatrixPair& pair, std::span<const int> ports) {
    if (ports.empty()) throw ValidationError("solve_combiner: empty port set");
    const int l = int(ports.size());
    CVector at(l);
    for (int i = 0; i < l; ++i) at[i] = pair.a[ports[i]];

    CombinerResult out;
    if (norm2(at) == 0) {
        out.w.assign(l, cd{});
        out.w[0] = 1.0;
        out.sinr = 0;
        out.degenerate = true;
        return out;
    }
    const HermitianMatrix bt = pair.B.submatrix(ports);
    const CholeskyFactor chol(bt);
    CVector y = chol.solve(at);
    out.sinr = inner(at, y).real();
    scale(y, 1.0 / norm2(y));
    canonicalize_phase(y);
    out.w = std::move(y);
    return out;
}

namespace {

// Indices of the L largest values, ties to the lowest index; result ascending.
std::vector<int> top_indices(std::span<const double> values, int l) {
    std::vector<int> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return values[a] > values[b]; });
    idx.resize(l);
    std::sort(idx.begin(), idx.end());
    return idx;
}

ReceiverDesign design_from_combiner(std::vector<int> ports, CombinerResult&& comb) {
    ReceiverDesign d;
    d.ports = std::move(ports);
    d.w = std::move(comb.w);
    d.achieved_sinr = comb.sinr;
    d.degenerate = comb.degenerate;
    return d;
}

}  // namespace

ReceiverDesign design_slow_fama(const SignalMatrixPair&, const ChannelRealization& h, int k,
                                double snr) {
    const std::vector<double> sinrs = per_port_sinr_all(h, k, snr);
    int best = 0;
    for (int r = 1; r < int(sinrs.size()); ++r)
        if (sinrs[r] > sinrs[best]) best = r;
    ReceiverDesign d;
    d.ports = {best};
    d.w = {cd(1.0, 0.0)};
    d.achieved_sinr = sinrs[best];
    return d;
}

ReceiverDesign design_dc(const SignalMatrixPair& pair, const ChannelRealization& h, int k,
                         double snr, int active_ports) {
    const int n = pair.B.dim();
    if (active_ports < 1 || active_ports > n) throw ValidationError("design_dc: bad L");
    const std::vector<double> sinrs = per_port_sinr_all(h, k, snr);
    std::vector<int> ports = top_indices(sinrs, active_ports);
    CombinerResult comb = solve_combiner(pair, ports);
    return design_from_combiner(std::move(ports), std::move(comb));
}

ReceiverDesign design_mrc(const SignalMatrixPair& pair, const ChannelRealization&, int,
                          double, int active_ports) {
    const int n = pair.B.dim();
    if (active_ports < 1 || active_ports > n) throw ValidationError("design_mrc: bad L");
    std::vector<double> mags(n);
    for (int r = 0; r < n; ++r) mags[r] = std::norm(pair.a[r]);
    std::vector<int> ports = top_indices(mags, active_ports);

    CVector at(active_ports);
    for (int i = 0; i < active_ports; ++i) at[i] = pair.a[ports[i]];
    ReceiverDesign d;
    d.ports = std::move(ports);
    const double n2 = norm2(at);
    if (n2 == 0) {
        d.w.assign(active_ports, cd{});
        d.w[0] = 1.0;
        d.achieved_sinr = 0;
        d.degenerate = true;
        return d;
    }
    CVector w = at;
    scale(w, 1.0 / n2);
    canonicalize_phase(w);
    const HermitianMatrix bt = pair.B.submatrix(d.ports);
    // Matched filter: sinr = ‖ã‖⁴ / (ã^H B̃ ã).
    d.achieved_sinr = (n2 * n2) * (n2 * n2) / bt.quadratic_form(at);
    d.w = std::move(w);
    return d;
}

namespace {

struct GenTop {
    double lambda;
    CVector v_c;   // unit eigenvector of C
    CVector u;     // B-orthonormalized generalized eigenvector
    double lambda_second;
};

GenTop dense_dominant(const HermitianMatrix& a, const HermitianMatrix& b) {
    const HermitianMatrix bmh = inv_sqrt_pd(b);
    const CMatrix c_raw = bmh.matrix() * a.matrix() * bmh.matrix();
    const HermitianMatrix c(c_raw, 1e-8);
    const EigenDecomposition d = hermitian_eig(c);
    GenTop t;
    const int n = c.dim();
    t.lambda = d.eigenvalues[n - 1];
    t.lambda_second = n >= 2 ? d.eigenvalues[n - 2] : 0.0;
    t.v_c = d.eigenvector(n - 1);
    t.u = bmh.matrix() * t.v_c;  // u^H B u = v^H v = 1
    return t;
}

double dominant_gen_eigenvalue(const HermitianMatrix& a, const HermitianMatrix& b) {
    return dense_dominant(a, b).lambda;
}

}  // namespace

double sinr_drop_exact(const HermitianMatrix& a, const HermitianMatrix& b, int l) {
    const int n = a.dim();
    if (n < 2 || l < 0 || l >= n) throw ValidationError("sinr_drop_exact: bad index");
    const double lam = dominant_gen_eigenvalue(a, b);
    const double alpha = dominant_gen_eigenvalue(a.minor_removing(l), b.minor_removing(l));
    return lam - alpha;
}

double sinr_drop_bound(const HermitianMatrix& a, const HermitianMatrix& b, int l) {
    const int n = a.dim();
    if (n < 2 || l < 0 || l >= n) throw ValidationError("sinr_drop_bound: bad index");
    const GenTop top = dense_dominant(a, b);
    const CMatrix binv = CholeskyFactor(b).inverse();
    const double weight = std::norm(top.u[l]) / binv(l, l).real();
    return weight * (top.lambda - top.lambda_second);
}

DropReport drop_report(const HermitianMatrix& a, const HermitianMatrix& b, int l) {
    DropReport r;
    r.port = l;
    r.exact_drop = sinr_drop_exact(a, b, l);
    r.lower_bound = sinr_drop_bound(a, b, l);
    return r;
}

namespace {

// Running state for the greedy removal: compact copies of ã and B̃^{-1},
// plus the alive original indices. Removing a port is a Schur-complement
// downdate of the inverse, O(n²).
class GeportState {
public:
    GeportState(const SignalMatrixPair& pair) : pair_(&pair) {
        alive_.resize(pair.B.dim());
        std::iota(alive_.begin(), alive_.end(), 0);
        rebuild();
    }

    int count() const { return int(alive_.size()); }
    const std::vector<int>& alive() const { return alive_; }
    double lambda() const { return lambda_; }

    // Exact one-step drop of the dominant eigenvalue if local port i goes.
    double exact_drop(int i) const { return std::norm(x_[i]) / binv_(i, i).real(); }

    double metric(int i, GeportMetric m) const {
        switch (m) {
            case GeportMetric::exact_drop:
                return exact_drop(i);
            case GeportMetric::raw_generalized:
                return xnorm2_ > 0 ? std::norm(x_[i]) / xnorm2_ : 0.0;
            case GeportMetric::whitened:
                return std::norm(whitened_[i]);
        }
        return 0;
    }

    int argmin_metric(GeportMetric m, double* value) {
        if (m == GeportMetric::whitened) refresh_whitened();
        int best = 0;
        double best_val = metric(0, m);
        for (int i = 1; i < count(); ++i) {
            const double v = metric(i, m);
            if (v < best_val) {
                best = i;
                best_val = v;
            }
        }
        if (value) *value = best_val;
        return best;
    }

    void remove(int i) {
        const int n = count();
        const double qii = binv_(i, i).real();
        const cd xl_over = x_[i] / qii;
        const CVector q = binv_.col(i);

        CMatrix nb(n - 1, n - 1);
        for (int r = 0, tr = 0; r < n; ++r) {
            if (r == i) continue;
            const cd qr_scaled = q[r] / qii;
            for (int c = 0, tc = 0; c < n; ++c) {
                if (c == i) continue;
                nb(tr, tc) = binv_(r, c) - qr_scaled * std::conj(q[c]);
                ++tc;
            }
            ++tr;
        }
        binv_ = std::move(nb);

        CVector nx(n - 1), na(n - 1);
        for (int r = 0, tr = 0; r < n; ++r) {
            if (r == i) continue;
            nx[tr] = x_[r] - q[r] * xl_over;
            na[tr] = a_[r];
            ++tr;
        }
        x_ = std::move(nx);
        a_ = std::move(na);
        alive_.erase(alive_.begin() + i);
        finish_update();

        // Downdates are exact algebra; if roundoff ever drives the running
        // inverse off positive-definiteness, rebuild from the survivors.
        for (int r = 0; r < count(); ++r) {
            if (!(binv_(r, r).real() > 0)) {
                rebuild();
                break;
            }
        }
    }

private:
    void rebuild() {
        const int n = count();
        a_.resize(n);
        for (int i = 0; i < n; ++i) a_[i] = pair_->a[alive_[i]];
        binv_ = CholeskyFactor(pair_->B.submatrix(alive_)).inverse();
        x_ = binv_ * a_;
        finish_update();
    }

    void finish_update() {
        lambda_ = inner(a_, x_).real();
        xnorm2_ = 0;
        for (const cd& z : x_) xnorm2_ += std::norm(z);
    }

    void refresh_whitened() {
        const HermitianMatrix bt = pair_->B.submatrix(alive_);
        whitened_ = inv_sqrt_pd(bt).matrix() * a_;
        const double n2 = norm2(whitened_);
        if (n2 > 0) scale(whitened_, 1.0 / n2);
    }

    const SignalMatrixPair* pair_;
    std::vector<int> alive_;
    CVector a_;
    CMatrix binv_;
    CVector x_;  // B̃^{-1} ã
    CVector whitened_;
    double lambda_ = 0;
    double xnorm2_ = 0;
};

}  // namespace

ReceiverDesign design_geport(const SignalMatrixPair& pair, int active_ports,
                             const GeportOptions& options, GeportTrace* trace) {
    const int n = pair.B.dim();
    if (active_ports < 1 || active_ports > n) throw ValidationError("design_geport: bad L");

    GeportState st(pair);
    if (trace) {
        trace->full_eigenvalue = st.lambda();
        trace->steps.clear();
    }
    const double full_lambda = st.lambda();

    while (st.count() > active_ports) {
        double metric_value = 0;
        const int i = st.argmin_metric(options.metric, &metric_value);
        if (options.loss_budget) {
            const double loss_after = (full_lambda - st.lambda()) + st.exact_drop(i);
            if (loss_after > *options.loss_budget) break;
        }
        const int removed = st.alive()[i];
        st.remove(i);
        if (trace)
            trace->steps.push_back({removed, metric_value, st.lambda(), full_lambda - st.lambda()});
    }

    CombinerResult comb = solve_combiner(pair, st.alive());
    ReceiverDesign d;
    d.ports = st.alive();
    d.w = std::move(comb.w);
    d.achieved_sinr = comb.sinr;
    d.degenerate = comb.degenerate;
    return d;
}

std::vector<int> geport_removal_order(const SignalMatrixPair& pair, int min_ports,
                                      const GeportOptions& options) {
    const int n = pair.B.dim();
    if (min_ports < 1 || min_ports > n) throw ValidationError("geport_removal_order: bad floor");
    GeportState st(pair);
    std::vector<int> order;
    order.reserve(n - min_ports);
    while (st.count() > min_ports) {
        const int i = st.argmin_metric(options.metric, nullptr);
        order.push_back(st.alive()[i]);
        st.remove(i);
    }
    return order;
}

}  // namespace fama

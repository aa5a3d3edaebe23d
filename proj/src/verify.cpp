#include "fama/verify.hpp"

#include <sstream>

#include "fama/oracle.hpp"
#include "fama/rng.hpp"

namespace fama {

namespace {

HermitianMatrix random_hermitian(Stream& s, int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = s.next_cgauss().real() * std::numbers::sqrt2;
        for (int j = i + 1; j < n; ++j) {
            const cd z = s.next_cgauss();
            m(i, j) = z;
            m(j, i) = std::conj(z);
        }
    }
    return HermitianMatrix(std::move(m));
}

HermitianMatrix random_pd(Stream& s, int n, double ridge) {
    CMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = s.next_cgauss();
    CMatrix m = g * g.adjoint();
    for (int i = 0; i < n; ++i) m(i, i) += ridge;
    return HermitianMatrix(std::move(m), 1e-9);
}

CVector random_vector(Stream& s, int n) {
    CVector v(n);
    for (cd& z : v) z = s.next_cgauss();
    return v;
}

}  // namespace

VerifyReport run_verification(std::uint64_t seed, int instances) {
    VerifyReport report;
    Stream stream(seed);

    {
        VerifyReport::Section sec{"eigenvector-eigenvalue identity", 0, 0, 0};
        for (int it = 0; it < instances; ++it) {
            const int n = 3 + int(stream.next_u64() % 6);
            const HermitianMatrix c = random_hermitian(stream, n);
            for (int i = 0; i < n; ++i) {
                for (int l = 0; l < n; ++l) {
                    const IdentityCheck chk = eigenvector_eigenvalue_identity_check(c, i, l);
                    if (chk.degenerate_spectrum) continue;
                    ++sec.checks;
                    const double denom =
                        std::max({std::abs(chk.lhs), std::abs(chk.rhs), chk.noise_floor / 1e-8});
                    const double rel = std::abs(chk.lhs - chk.rhs) / std::max(denom, 1e-300);
                    sec.worst_rel_error = std::max(sec.worst_rel_error, rel);
                    if (rel > 1e-8) ++sec.failures;
                }
            }
        }
        report.sections.push_back(sec);
    }

    {
        VerifyReport::Section sec{"cauchy interlacing", 0, 0, 0};
        for (int it = 0; it < instances; ++it) {
            const int n = 3 + int(stream.next_u64() % 8);
            const HermitianMatrix c = random_hermitian(stream, n);
            for (int l = 0; l < n; ++l) {
                ++sec.checks;
                if (!interlacing_check(c, l)) ++sec.failures;
            }
        }
        report.sections.push_back(sec);
    }

    {
        VerifyReport::Section sec{"lemma-1 drop agreement", 0, 0, 0};
        for (int it = 0; it < instances; ++it) {
            const int n = 3 + int(stream.next_u64() % 6);
            const HermitianMatrix b = random_pd(stream, n, 0.5);
            HermitianMatrix a = (it % 2 == 0) ? HermitianMatrix(outer(random_vector(stream, n)))
                                              : random_pd(stream, n, 0.1);
            for (int l = 0; l < n; ++l) {
                ++sec.checks;
                const Lemma1Sides sides = lemma1_both_sides(a, b, l);
                if (sides.conditioning_warning) continue;
                const double denom = std::max(std::abs(sides.product_form),
                                              std::abs(sides.direct_form));
                if (denom > 0)
                    sec.worst_rel_error =
                        std::max(sec.worst_rel_error,
                                 std::abs(sides.product_form - sides.direct_form) / denom);
                if (!lemma1_sides_agree(sides, 1e-7)) ++sec.failures;
            }
        }
        report.sections.push_back(sec);
    }

    {
        VerifyReport::Section sec{"combiner vs power method", 0, 0, 0};
        for (int it = 0; it < instances; ++it) {
            const int n = 4 + int(stream.next_u64() % 5);
            const HermitianMatrix b = random_pd(stream, n, 0.5);
            const CVector a = random_vector(stream, n);
            SignalMatrixPair pair;
            pair.a = a;
            pair.A = HermitianMatrix(outer(a));
            pair.B = b;
            pair.snr = 1.0;
            std::vector<int> all(n);
            for (int i = 0; i < n; ++i) all[i] = i;
            const CombinerResult comb = solve_combiner(pair, all);
            const GeneralizedEigenPair gep =
                power_method_gen(pair.A, pair.B, 1e-12, 10000, seed + it);
            ++sec.checks;
            const double rel = std::abs(comb.sinr - gep.eigenvalue) /
                               std::max(std::abs(gep.eigenvalue), 1e-300);
            sec.worst_rel_error = std::max(sec.worst_rel_error, rel);
            if (rel > 1e-8) ++sec.failures;
        }
        report.sections.push_back(sec);
    }

    return report;
}

std::string VerifyReport::summary() const {
    std::ostringstream os;
    for (const auto& s : sections) {
        os << (s.failures == 0 ? "[ok]   " : "[FAIL] ") << s.name << ": " << s.checks
           << " checks, " << s.failures << " failures";
        if (s.worst_rel_error > 0) os << ", worst rel err " << s.worst_rel_error;
        os << "\n";
    }
    return os.str();
}

}  // namespace fama

#include <doctest.h>

#include <numeric>

#include "fama/harness.hpp"
#include "fama/oracle.hpp"
#include "test_support.hpp"

using namespace fama;

namespace {

SignalMatrixPair pair_from(const CVector& a, const HermitianMatrix& b) {
    SignalMatrixPair p;
    p.a = a;
    p.A = HermitianMatrix(outer(a));
    p.B = b;
    p.snr = 1.0;
    return p;
}

}  // namespace

TEST_CASE("exhaustive_best_subset") {
    Stream s(50);
    SUBCASE("L=N evaluates the single full subset") {
        const CVector a = test::random_vector(s, 5);
        const SignalMatrixPair p = pair_from(a, test::random_pd(s, 5, 0.3));
        const OracleResult r = exhaustive_best_subset(p, 5);
        CHECK(r.evaluated_subsets == 1);
        std::vector<int> all(5);
        std::iota(all.begin(), all.end(), 0);
        CHECK(r.best_ports == all);
        CHECK(r.best_sinr == doctest::Approx(solve_combiner(p, all).sinr));
    }
    SUBCASE("L=1 equals the best per-port Rayleigh quotient") {
        const CVector a = test::random_vector(s, 7);
        const SignalMatrixPair p = pair_from(a, test::random_pd(s, 7, 0.4));
        const OracleResult r = exhaustive_best_subset(p, 1);
        CHECK(r.evaluated_subsets == 7);
        double best = 0;
        for (int i = 0; i < 7; ++i)
            best = std::max(best, std::norm(p.a[i]) / p.B(i, i).real());
        CHECK(r.best_sinr == doctest::Approx(best).epsilon(1e-12));
    }
    SUBCASE("subset count and dominance over strategies") {
        const CVector a = test::random_vector(s, 10);
        const SignalMatrixPair p = pair_from(a, test::random_pd(s, 10, 0.3));
        const OracleResult r = exhaustive_best_subset(p, 3);
        CHECK(r.evaluated_subsets == 120);  // C(10,3)
        const ReceiverDesign gp = design_geport(p, 3);
        CHECK(r.best_sinr >= gp.achieved_sinr - 1e-9);
    }
}

TEST_CASE("oracle guard on a genuinely large instance") {
    Stream s(51);
    const CVector a = test::random_vector(s, 50);
    CMatrix b = CMatrix::identity(50);
    const SignalMatrixPair p = pair_from(a, HermitianMatrix(b));
    CHECK_THROWS_AS(exhaustive_best_subset(p, 10), ValidationError);  // C(50,10) ≈ 1e10
}

TEST_CASE("lemma1_both_sides") {
    Stream s(52);
    SUBCASE("2x2 hand case with B = I") {
        CMatrix m(2, 2);
        m(0, 0) = 2.0;
        m(0, 1) = 1.0;
        m(1, 0) = 1.0;
        m(1, 1) = 2.0;
        const HermitianMatrix a(m);
        const Lemma1Sides sides = lemma1_both_sides(a, HermitianMatrix::identity(2), 0);
        CHECK(sides.product_form == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(sides.direct_form == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("rank-1 A reduces to the tight bound and agrees") {
        for (int it = 0; it < 20; ++it) {
            const int n = 3 + int(s.next_u64() % 8);
            const CVector a = test::random_vector(s, n);
            const HermitianMatrix am(outer(a));
            const HermitianMatrix b = test::random_pd(s, n, 0.5);
            for (int l = 0; l < n; ++l) {
                const Lemma1Sides sides = lemma1_both_sides(am, b, l);
                CHECK(lemma1_sides_agree(sides, 1e-7));
                CHECK(sides.direct_form == doctest::Approx(sinr_drop_exact(am, b, l)).epsilon(1e-9));
                CHECK(sides.product_form ==
                      doctest::Approx(sinr_drop_bound(am, b, l)).epsilon(1e-7));
            }
        }
    }
    SUBCASE("full-rank pairs agree over many seeds") {
        double worst = 0;
        for (int it = 0; it < 50; ++it) {
            const int n = 3 + int(s.next_u64() % 6);
            const HermitianMatrix a = test::random_pd(s, n, 0.1);
            const HermitianMatrix b = test::random_pd(s, n, 0.5);
            for (int l = 0; l < n; ++l) {
                const Lemma1Sides sides = lemma1_both_sides(a, b, l);
                CHECK(lemma1_sides_agree(sides, 1e-7));
                const double denom =
                    std::max(std::abs(sides.product_form), std::abs(sides.direct_form));
                if (denom > 0)
                    worst = std::max(worst,
                                     std::abs(sides.product_form - sides.direct_form) / denom);
            }
        }
        CHECK(worst < 1e-7);
    }
    SUBCASE("agreement predicate rejects a sign error") {
        const CVector a = test::random_vector(s, 5);
        const HermitianMatrix am(outer(a));
        const HermitianMatrix b = test::random_pd(s, 5, 0.5);
        Lemma1Sides sides = lemma1_both_sides(am, b, 2);
        sides.product_form = -sides.product_form;  // injected fault
        CHECK_FALSE(lemma1_sides_agree(sides, 1e-7));
    }
}

TEST_CASE("oracle dominance over every strategy on small instances") {
    Stream s(53);
    const CorrelationMatrix corr = correlation_matrix(PortTopology::line(10, 9.0 * 4.0 / 99.0));
    for (int t = 0; t < 10; ++t) {
        const ChannelRealization h = sample_channels(corr, 4, 4, {4242, std::uint64_t(t)});
        for (int k = 0; k < 4; ++k) {
            const SignalMatrixPair p = build_pair(h, k, linear_snr(15.0));
            const OracleResult oracle = exhaustive_best_subset(p, 2);
            const double gp = design_geport(p, 2).achieved_sinr;
            const double dc = design_dc(p, h, k, linear_snr(15.0), 2).achieved_sinr;
            const double mrc = design_mrc(p, h, k, linear_snr(15.0), 2).achieved_sinr;
            CHECK(oracle.best_sinr >= gp - 1e-9);
            CHECK(oracle.best_sinr >= dc - 1e-9);
            CHECK(oracle.best_sinr >= mrc - 1e-9);
        }
    }
}

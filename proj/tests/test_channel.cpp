#include <doctest.h>

#include <numbers>

#include "fama/channel.hpp"
#include "test_support.hpp"

using namespace fama;

TEST_CASE("line topology positions") {
    SUBCASE("two ports at the endpoints") {
        const PortTopology t = PortTopology::line(2, 1.0);
        CHECK(t.positions[0][0] == 0.0);
        CHECK(t.positions[1][0] == 1.0);
    }
    SUBCASE("paper-scale spacing") {
        const PortTopology t = PortTopology::line(100, 4.0);
        CHECK(t.ports() == 100);
        CHECK(t.positions[1][0] - t.positions[0][0] == doctest::Approx(4.0 / 99.0));
        CHECK(t.positions[99][0] == doctest::Approx(4.0));
    }
    SUBCASE("single port sits at the origin") {
        const PortTopology t = PortTopology::line(1, 0.0);
        CHECK(t.positions[0][0] == 0.0);
    }
}

TEST_CASE("grid topology positions and flattening") {
    const PortTopology t = PortTopology::grid(60, 15, 4.0, 1.0);
    CHECK(t.ports() == 900);
    // row-major: (i, j) -> i·n2 + j
    const int idx = 2 * 15 + 3;
    CHECK(t.positions[idx][0] == doctest::Approx(2 * 4.0 / 59.0));
    CHECK(t.positions[idx][1] == doctest::Approx(3 * 1.0 / 14.0));
    // spacings
    CHECK(t.positions[15][0] - t.positions[0][0] == doctest::Approx(4.0 / 59.0));
    CHECK(t.positions[1][1] - t.positions[0][1] == doctest::Approx(1.0 / 14.0));
}

TEST_CASE("topology validation") {
    CHECK_THROWS_AS(PortTopology::line(0, 1.0), ValidationError);
    CHECK_THROWS_AS(PortTopology::line(2, 0.0), ValidationError);
    CHECK_THROWS_AS(PortTopology::line(-3, 1.0), ValidationError);
    CHECK_THROWS_AS(PortTopology::grid(0, 5, 1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(PortTopology::grid(4, 4, 1.0, 0.0), ValidationError);
    CHECK_THROWS_AS(PortTopology::grid(1 << 20, 1 << 20, 1.0, 1.0), ValidationError);
    CHECK_NOTHROW(PortTopology::grid(1, 5, 0.0, 1.0));
}

TEST_CASE("correlation matrix matches the Bessel kernel") {
    SUBCASE("unit diagonal, exact") {
        const CorrelationMatrix c = correlation_matrix(PortTopology::line(5, 1.0));
        for (int i = 0; i < 5; ++i) CHECK(c.sigma(i, i) == cd(1.0, 0.0));
    }
    SUBCASE("half-wavelength separation against the series oracle") {
        const CorrelationMatrix c = correlation_matrix(PortTopology::line(2, 0.5));
        const double expected = test::bessel_j0_series(std::numbers::pi);
        CHECK(c.sigma(0, 1).real() == doctest::Approx(expected).epsilon(1e-12));
        CHECK(c.sigma(0, 1).real() == doctest::Approx(-0.304242).epsilon(1e-6));
        CHECK(c.sigma(0, 1).imag() == 0.0);
    }
    SUBCASE("entries are real and symmetric, exact") {
        const CorrelationMatrix c = correlation_matrix(PortTopology::grid(4, 3, 0.8, 0.4));
        for (int i = 0; i < 12; ++i) {
            for (int j = 0; j < 12; ++j) {
                CHECK(c.sigma(i, j).imag() == 0.0);
                CHECK(c.sigma(i, j) == c.sigma(j, i));
            }
        }
    }
    SUBCASE("series oracle across a spread of distances") {
        const CorrelationMatrix c = correlation_matrix(PortTopology::line(8, 1.2));
        const double spacing = 1.2 / 7.0;
        for (int gap = 1; gap < 8; ++gap) {
            const double expected = test::bessel_j0_series(2.0 * std::numbers::pi * gap * spacing);
            CHECK(c.sigma(0, gap).real() == doctest::Approx(expected).epsilon(1e-10));
        }
    }
    SUBCASE("line correlation is Toeplitz, exact") {
        const CorrelationMatrix c = correlation_matrix(PortTopology::line(7, 2.0));
        for (int i = 1; i < 7; ++i)
            for (int j = i; j < 7; ++j)
                CHECK(c.sigma(i, j) == c.sigma(i - 1, j - 1));
    }
    SUBCASE("colocated ports exercise the PSD clamp") {
        const PortTopology dup = PortTopology::from_positions({{0.0, 0.0}, {0.0, 0.0}, {0.3, 0.0}});
        const CorrelationMatrix c = correlation_matrix(dup);
        CHECK(c.sigma(0, 1) == cd(1.0, 0.0));
        CHECK(c.eigenvalues.front() == 0.0);  // clamped, not negative
        for (double lam : c.eigenvalues) CHECK(lam >= 0.0);
    }
}

TEST_CASE("channel sampling") {
    SUBCASE("scalar variance over 1e5 draws") {
        const CorrelationMatrix c = correlation_matrix(PortTopology::line(1, 0.0));
        double acc = 0;
        const int draws = 100000;
        for (int t = 0; t < draws; ++t) {
            const ChannelRealization h = sample_channels(c, 1, 1, {2024, std::uint64_t(t)});
            acc += std::norm(h.users[0](0, 0));
        }
        const double var = acc / draws;
        CHECK(var > 0.98);
        CHECK(var < 1.02);
    }
    SUBCASE("perfectly correlated ports give equal entries in every draw") {
        const PortTopology dup = PortTopology::from_positions({{0.0, 0.0}, {0.0, 0.0}});
        const CorrelationMatrix c = correlation_matrix(dup);
        for (int t = 0; t < 50; ++t) {
            const ChannelRealization h = sample_channels(c, 2, 2, {7, std::uint64_t(t)});
            for (int k = 0; k < 2; ++k)
                for (int m = 0; m < 2; ++m)
                    CHECK(std::abs(h.users[k](0, m) - h.users[k](1, m)) < 1e-12);
        }
    }
    SUBCASE("fixed seed reproduces bit-identical channels") {
        const CorrelationMatrix c = correlation_matrix(PortTopology::line(6, 0.5));
        const ChannelRealization h1 = sample_channels(c, 3, 3, {99, 5});
        const ChannelRealization h2 = sample_channels(c, 3, 3, {99, 5});
        for (int k = 0; k < 3; ++k) CHECK(h1.users[k] == h2.users[k]);
    }
    SUBCASE("sample covariance converges to sigma") {
        const int n = 6;
        const CorrelationMatrix c = correlation_matrix(PortTopology::line(n, 0.8));
        CMatrix cov(n, n);
        const int draws = 100000;
        // Treat columns across users/trials as independent draws of CN(0, Σ).
        for (int t = 0; t < draws / 4; ++t) {
            const ChannelRealization h = sample_channels(c, 4, 1, {31337, std::uint64_t(t)});
            for (int m = 0; m < 4; ++m) {
                const CVector col = h.users[0].col(m);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) cov(i, j) += col[i] * std::conj(col[j]);
            }
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(std::abs(cov(i, j) / double(draws) - c.sigma(i, j)) < 5e-2);
    }
    SUBCASE("input validation") {
        const CorrelationMatrix c = correlation_matrix(PortTopology::line(2, 0.5));
        CHECK_THROWS_AS(sample_channels(c, 0, 1, {1, 1}), ValidationError);
        CHECK_THROWS_AS(sample_channels(c, 1, 0, {1, 1}), ValidationError);
    }
}

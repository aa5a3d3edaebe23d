#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace fama {

namespace detail {
// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}
}  // namespace detail

// Counter-based stream: every draw advances a splitmix64 state. Streams for
// different (master, a, b) keys are independent for simulation purposes, so
// trials and users can be sampled in any order on any number of workers.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    static Stream derive(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
        std::uint64_t h = detail::mix64(master + 0x9E3779B97F4A7C15ull);
        h = detail::mix64(h ^ (a + 0xD1B54A32D192ED03ull));
        h = detail::mix64(h ^ (b + 0x8CB92BA72F3D8DD7ull));
        return Stream(h);
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return detail::mix64(state_);
    }

    // Uniform in (0, 1].
    double next_unit() {
        const std::uint64_t u = next_u64() >> 11;
        return (double(u) + 1.0) * 0x1.0p-53;
    }

    // Complex Gaussian with E{|z|²} = 1 (real and imaginary parts N(0, 1/2)).
    std::complex<double> next_cgauss() {
        const double r = std::sqrt(-std::log(next_unit()));
        const double phi = 2.0 * std::numbers::pi * next_unit();
        return {r * std::cos(phi), r * std::sin(phi)};
    }

private:
    std::uint64_t state_;
};

// Handle identifying one trial's channel randomness; per-user substreams are
// derived inside sample_channels.
struct TrialStream {
    std::uint64_t master_seed = 0;
    std::uint64_t trial = 0;
};

}  // namespace fama

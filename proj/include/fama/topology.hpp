#pragma once

#include <array>
#include <string>
#include <vector>

namespace fama {

enum class TopologyKind { line, grid };

// Port layout of the fluid antenna in wavelength units. Grid ports are
// flattened row-major: (i, j) -> i·n2 + j, positions ((i·w1/(n1−1), j·w2/(n2−1)).
struct PortTopology {
    TopologyKind kind = TopologyKind::line;
    int n1 = 1, n2 = 1;
    double w1 = 0, w2 = 0;
    bool custom_positions = false;  // built via from_positions
    std::vector<std::array<double, 2>> positions;

    int ports() const { return n1 * n2; }

    // Inter-port distance in wavelengths. Structured layouts use index
    // deltas so equal index gaps give bit-identical distances (line
    // correlation comes out exactly Toeplitz).
    double distance(int r, int s) const;

    static PortTopology line(int n, double w);
    static PortTopology grid(int n1, int n2, double w1, double w2);
    // Explicit positions (degenerate geometries, tests).
    static PortTopology from_positions(std::vector<std::array<double, 2>> pts);

    std::string describe() const;
};

}  // namespace fama

#include "fama/topology.hpp"


#include <cmath>
#include <limits>

#include "fama/errors.hpp"

namespace fama {

namespace {

void check_axis(int n, double w, const char* axis) {
    if (n < 1) throw ValidationError(std::string("topology: ") + axis + " port count must be >= 1");
    if (w < 0) throw ValidationError(std::string("topology: ") + axis + " extent must be >= 0");
    if (n >= 2 && w <= 0)
        throw ValidationError(std::string("topology: ") + axis + " extent must be > 0 for 2+ ports");
}

}  // namespace

PortTopology PortTopology::line(int n, double w) {
    check_axis(n, w, "line");
    PortTopology t;
    t.kind = TopologyKind::line;
    t.n1 = n;
    t.n2 = 1;
    t.w1 = w;
    t.w2 = 0;
    t.positions.resize(n);
    for (int i = 0; i < n; ++i)
        t.positions[i] = {n > 1 ? i * w / (n - 1) : 0.0, 0.0};
    return t;
}

PortTopology PortTopology::grid(int n1, int n2, double w1, double w2) {
    check_axis(n1, w1, "grid x");
    check_axis(n2, w2, "grid y");
    if (n1 > std::numeric_limits<int>::max() / std::max(n2, 1))
        throw ValidationError("topology: grid port count overflows");
    PortTopology t;
    t.kind = TopologyKind::grid;
    t.n1 = n1;
    t.n2 = n2;
    t.w1 = w1;
    t.w2 = w2;
    t.positions.resize(size_t(n1) * n2);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            t.positions[size_t(i) * n2 + j] = {n1 > 1 ? i * w1 / (n1 - 1) : 0.0,
                                               n2 > 1 ? j * w2 / (n2 - 1) : 0.0};
    return t;
}

PortTopology PortTopology::from_positions(std::vector<std::array<double, 2>> pts) {
    if (pts.empty()) throw ValidationError("topology: no positions given");
    PortTopology t;
    t.kind = TopologyKind::line;
    t.n1 = int(pts.size());
    t.n2 = 1;
    double maxx = 0;
    for (const auto& p : pts) maxx = std::max(maxx, p[0]);
    t.w1 = maxx;
    t.w2 = 0;
    t.custom_positions = true;
    t.positions = std::move(pts);
    return t;
}

double PortTopology::distance(int r, int s) const {
    if (custom_positions) {
        const double dx = positions[r][0] - positions[s][0];
        const double dy = positions[r][1] - positions[s][1];
        return std::hypot(dx, dy);
    }
    const int di = std::abs(r / n2 - s / n2);
    const int dj = std::abs(r % n2 - s % n2);
    const double dx = n1 > 1 ? di * (w1 / (n1 - 1)) : 0.0;
    const double dy = n2 > 1 ? dj * (w2 / (n2 - 1)) : 0.0;
    if (dy == 0.0) return dx;
    if (dx == 0.0) return dy;
    return std::hypot(dx, dy);
}

std::string PortTopology::describe() const {
    if (kind == TopologyKind::line)
        return "line N=" + std::to_string(n1) + " W=" + std::to_string(w1);
    return "grid " + std::to_string(n1) + "x" + std::to_string(n2) + " W=" + std::to_string(w1) +
           "x" + std::to_string(w2);
}

}  // namespace fama

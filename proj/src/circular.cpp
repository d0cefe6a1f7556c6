#include "cotopo/circular.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <vector>

namespace cotopo {

namespace {

// edges are oriented min -> max; a cochain value on {a < b} is the increase
// from a to b, so the coboundary of a vertex potential is f(b) - f(a)
std::pair<int, int> ordered(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

CircularCoordinate circular_coordinate(const DistanceMatrix& d, double r, int prime) {
    const int n = int(d.size());
    if (n == 0) throw Disconnected("empty point set");

    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (d(i, j) <= r) {
                edges.emplace_back(i, j);
                parent[find(i)] = find(j);
            }
    for (int i = 0; i < n; ++i)
        if (find(i) != find(0)) throw Disconnected("VR graph is not connected at this scale");

    PersistenceOptions opts;
    opts.record_dim1_cocycles = true;
    PersistenceDiagram diag = persistence(d, prime, 1, r, opts);

    // classes alive at the cutoff r are exactly the essential ones; the most
    // prominent has the earliest birth
    int best = -1;
    for (std::size_t k = 0; k < diag.intervals[1].size(); ++k) {
        const Interval& iv = diag.intervals[1][k];
        if (!iv.essential()) continue;
        if (best < 0 || iv.birth < diag.intervals[1][best].birth) best = int(k);
    }
    if (best < 0) throw NoProminentClass("no 1-dimensional class is alive at this scale");

    std::map<std::pair<int, int>, double> zeta;
    for (const CocycleEntry& e : diag.cocycles_dim1[best])
        zeta[ordered(e.i, e.j)] += e.coeff;

    // the integer lift must be a cocycle over Z; only triangles touching the
    // support can have a nonzero coboundary
    for (const auto& [edge, val] : zeta) {
        auto [a, b] = edge;
        for (int c = 0; c < n; ++c) {
            if (c == a || c == b || d(a, c) > r || d(b, c) > r) continue;
            auto get = [&](int x, int y) {
                auto it = zeta.find(ordered(x, y));
                return it == zeta.end() ? 0.0 : it->second;
            };
            int v[3] = {a, b, c};
            std::sort(v, v + 3);
            double db = get(v[0], v[1]) - get(v[0], v[2]) + get(v[1], v[2]);
            if (std::lround(db) != 0)
                throw LiftFailed("cocycle does not lift to the integers; use a larger prime");
        }
        (void)val;
    }

    // least squares: minimize ||zeta - delta f|| via the graph Laplacian with
    // vertex 0 pinned to 0 (the system is otherwise rank deficient)
    std::vector<Eigen::Triplet<double>> trip;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n - 1);
    std::vector<double> diagonal(n, 0.0);
    for (const auto& [a, b] : edges) {
        diagonal[a] += 1;
        diagonal[b] += 1;
        if (a > 0 && b > 0) {
            trip.emplace_back(a - 1, b - 1, -1.0);
            trip.emplace_back(b - 1, a - 1, -1.0);
        }
        auto it = zeta.find(ordered(a, b));
        double z = it == zeta.end() ? 0.0 : it->second;
        if (b > 0) rhs[b - 1] += z;
        if (a > 0) rhs[a - 1] -= z;
    }
    for (int i = 1; i < n; ++i) trip.emplace_back(i - 1, i - 1, diagonal[i]);
    Eigen::SparseMatrix<double> lap(n - 1, n - 1);
    lap.setFromTriplets(trip.begin(), trip.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(lap);
    Eigen::VectorXd f_tail = solver.solve(rhs);

    CircularCoordinate coord;
    coord.prime = prime;
    coord.r = r;
    coord.source_interval = diag.intervals[1][best];
    coord.values.resize(n);
    std::vector<double> f(n, 0.0);
    for (int i = 1; i < n; ++i) f[i] = f_tail[i - 1];
    for (int i = 0; i < n; ++i) {
        double v = std::fmod(f[i], 1.0);
        coord.values[i] = v < 0 ? v + 1.0 : v;
    }
    for (const auto& [a, b] : edges) {
        auto it = zeta.find(std::make_pair(a, b));
        double z = it == zeta.end() ? 0.0 : it->second;
        coord.theta[{a, b}] = z - (f[b] - f[a]);
    }
    return coord;
}

int winding_number(const CircularCoordinate& coord, const std::vector<int>& cycle) {
    if (cycle.size() < 3 || cycle.front() != cycle.back())
        throw NotACycle("path must return to its starting vertex");
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < cycle.size(); ++k) {
        int u = cycle[k], w = cycle[k + 1];
        auto it = coord.theta.find({std::min(u, w), std::max(u, w)});
        if (u == w || it == coord.theta.end())
            throw NotEdges("consecutive cycle vertices must span a VR edge at scale r");
        sum += u < w ? it->second : -it->second;
    }
    long rounded = std::lround(sum);
    if (std::abs(sum - double(rounded)) >= 0.1)
        throw std::runtime_error("winding sum is not within 0.1 of an integer");
    return int(rounded);
}

}  // namespace cotopo

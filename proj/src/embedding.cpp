#include "cotopo/embedding.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <set>

namespace cotopo {

namespace {

std::vector<std::vector<std::pair<int, double>>> adjacency(const NeighborhoodGraph& g) {
    std::vector<std::vector<std::pair<int, double>>> adj(g.n);
    for (const GraphEdge& e : g.edges) {
        adj[e.i].emplace_back(e.j, e.weight);
        adj[e.j].emplace_back(e.i, e.weight);
    }
    return adj;
}

std::vector<int> largest_component(const NeighborhoodGraph& g) {
    std::vector<int> comp(g.n, -1);
    auto adj = adjacency(g);
    int best = -1, best_size = 0, next = 0;
    for (int s = 0; s < g.n; ++s) {
        if (comp[s] != -1) continue;
        int id = next++, size = 0;
        std::vector<int> stack{s};
        comp[s] = id;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            ++size;
            for (auto [w, _] : adj[v])
                if (comp[w] == -1) {
                    comp[w] = id;
                    stack.push_back(w);
                }
        }
        if (size > best_size) {
            best_size = size;
            best = id;
        }
    }
    std::vector<int> vertices;
    for (int v = 0; v < g.n; ++v)
        if (comp[v] == best) vertices.push_back(v);
    return vertices;
}

GeodesicResult geodesics_impl(const NeighborhoodGraph& g, bool parallel) {
    GeodesicResult res;
    res.vertices = largest_component(g);
    res.dropped = g.n - int(res.vertices.size());
    const int m = int(res.vertices.size());
    std::vector<int> local(g.n, -1);
    for (int i = 0; i < m; ++i) local[res.vertices[i]] = i;
    auto adj = adjacency(g);
    res.d.d = Eigen::MatrixXd::Zero(m, m);

    const double inf = std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
    for (int s = 0; s < m; ++s) {
        std::vector<double> dist(g.n, inf);
        dist[res.vertices[s]] = 0.0;
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
        queue.emplace(0.0, res.vertices[s]);
        while (!queue.empty()) {
            auto [dv, v] = queue.top();
            queue.pop();
            if (dv > dist[v]) continue;
            for (auto [w, len] : adj[v])
                if (dv + len < dist[w]) {
                    dist[w] = dv + len;
                    queue.emplace(dist[w], w);
                }
        }
        for (int t = 0; t < m; ++t) res.d.d(s, t) = dist[res.vertices[t]];
    }
    return res;
}

}  // namespace

NeighborhoodGraph neighborhood_graph(const DistanceMatrix& d, const NeighborRule& rule) {
    const int n = d.size();
    NeighborhoodGraph g;
    g.n = n;
    std::set<std::pair<int, int>> seen;
    auto add = [&](int i, int j) {
        if (i == j || d(i, j) <= 0) return;
        auto key = std::minmax(i, j);
        if (seen.insert(key).second) g.edges.push_back({key.first, key.second, d(i, j)});
    };
    if (rule.kind == NeighborRule::Kind::eps) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (d(i, j) <= rule.eps) add(i, j);
    } else {
        for (int i = 0; i < n; ++i) {
            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                return d(i, a) < d(i, b) || (d(i, a) == d(i, b) && a < b);
            });
            int taken = 0;
            for (int j : order) {
                if (j == i) continue;
                add(i, j);
                if (++taken == rule.k) break;
            }
        }
    }
    std::sort(g.edges.begin(), g.edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
    return g;
}

GeodesicResult geodesic_distances(const NeighborhoodGraph& g) { return geodesics_impl(g, true); }

GeodesicResult geodesic_distances_serial(const NeighborhoodGraph& g) {
    return geodesics_impl(g, false);
}

Embedding classical_mds(const DistanceMatrix& d, int m) {
    const int n = d.size();
    Eigen::MatrixXd sq(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sq(i, j) = d(i, j) * d(i, j);
    Eigen::MatrixXd centering =
        Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    Eigen::MatrixXd b = -0.5 * centering * sq * centering;
    b = 0.5 * (b + b.transpose());  // enforce exact symmetry

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b);
    Embedding out;
    out.spectrum = eig.eigenvalues().reverse();

    const double zero_tol = 1e-12 * std::max(1.0, std::abs(out.spectrum[0]));
    int available = 0;
    while (available < n && available < m && out.spectrum[available] > -zero_tol) ++available;
    if (available < m) {
        out.rank_deficient = true;
        for (int k = available; k < std::min(m, n); ++k)
            out.dropped_negative.push_back(std::abs(out.spectrum[k]));
    }
    out.points = Eigen::MatrixXd::Zero(n, available);
    for (int k = 0; k < available; ++k) {
        Eigen::VectorXd v = eig.eigenvectors().col(n - 1 - k);
        for (int i = 0; i < n; ++i)
            if (std::abs(v[i]) > 1e-12) {
                if (v[i] < 0) v = -v;
                break;
            }
        out.points.col(k) = v * std::sqrt(std::max(0.0, out.spectrum[k]));
    }
    return out;
}

IsomapResult isomap(const DistanceMatrix& d, const NeighborRule& rule, int m) {
    IsomapResult res;
    res.graph = neighborhood_graph(d, rule);
    res.geodesics = geodesic_distances(res.graph);
    res.embedding = classical_mds(res.geodesics.d, m);

    std::vector<int> local(res.graph.n, -1);
    for (std::size_t i = 0; i < res.geodesics.vertices.size(); ++i)
        local[res.geodesics.vertices[i]] = int(i);
    for (const GraphEdge& e : res.graph.edges) {
        int a = local[e.i], b = local[e.j];
        if (a < 0 || b < 0) continue;
        DistortionEdge de;
        de.i = e.i;
        de.j = e.j;
        de.geodesic = res.geodesics.d(a, b);
        de.embedded = (res.embedding.points.row(a) - res.embedding.points.row(b)).norm();
        de.log_ratio = std::log(de.embedded / de.geodesic);
        res.distortion.push_back(de);
    }
    return res;
}

}  // namespace cotopo

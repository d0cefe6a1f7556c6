#pragma once

#include <vector>

#include <Eigen/Core>

#include "cotopo/metrics.hpp"

namespace cotopo {

struct NeighborRule {
    enum class Kind { knn, eps } kind = Kind::knn;
    int k = 12;
    double eps = 0.0;

    static NeighborRule knn(int k) { return {Kind::knn, k, 0.0}; }
    static NeighborRule ball(double eps) { return {Kind::eps, 0, eps}; }
};

struct GraphEdge {
    int i = 0, j = 0;  // i < j
    double weight = 0.0;
};

struct NeighborhoodGraph {
    int n = 0;
    std::vector<GraphEdge> edges;
};

/// k-NN (symmetrized, ties by index) or eps-ball graph; edge weights are the
/// input distances. Zero-weight pairs are dropped (no self-loops).
NeighborhoodGraph neighborhood_graph(const DistanceMatrix& d, const NeighborRule& rule);

struct GeodesicResult {
    DistanceMatrix d;               // on the largest connected component
    std::vector<int> vertices;      // original index per row of d
    int dropped = 0;                // vertices outside the largest component
};

/// All-pairs shortest paths on the largest component (Dijkstra per source,
/// parallel over sources). The serial variant is the reference used by tests
/// and the benchmark.
GeodesicResult geodesic_distances(const NeighborhoodGraph& g);
GeodesicResult geodesic_distances_serial(const NeighborhoodGraph& g);

struct Embedding {
    Eigen::MatrixXd points;            // n x m_achieved
    Eigen::VectorXd spectrum;          // all MDS eigenvalues, descending
    bool rank_deficient = false;       // fewer than m nonnegative eigenvalues
    std::vector<double> dropped_negative;  // magnitudes of skipped eigenvalues
};

/// Classical MDS: eigendecomposition of B = -1/2 J D^2 J, coordinates from
/// the top-m nonnegative eigenpairs, each eigenvector's first nonzero loading
/// made positive.
Embedding classical_mds(const DistanceMatrix& d, int m);

struct DistortionEdge {
    int i = 0, j = 0;  // original vertex indices
    double geodesic = 0.0;
    double embedded = 0.0;
    double log_ratio = 0.0;
};

struct IsomapResult {
    NeighborhoodGraph graph;
    GeodesicResult geodesics;
    Embedding embedding;
    std::vector<DistortionEdge> distortion;  // per graph edge inside the component
};

IsomapResult isomap(const DistanceMatrix& d, const NeighborRule& rule, int m);

}  // namespace cotopo

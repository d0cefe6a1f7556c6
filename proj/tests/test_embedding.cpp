#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "cotopo/embedding.hpp"

using namespace cotopo;

namespace {

DistanceMatrix dm_from_points(const std::vector<Eigen::VectorXd>& pts) {
    int n = int(pts.size());
    DistanceMatrix dm;
    dm.d = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) dm.d(i, j) = dm.d(j, i) = (pts[i] - pts[j]).norm();
    return dm;
}

DistanceMatrix line_points(std::initializer_list<double> xs) {
    std::vector<Eigen::VectorXd> pts;
    for (double x : xs) {
        Eigen::VectorXd p(1);
        p << x;
        pts.push_back(p);
    }
    return dm_from_points(pts);
}

// cubic-time all-pairs oracle
Eigen::MatrixXd floyd_warshall(const NeighborhoodGraph& g) {
    const double inf = std::numeric_limits<double>::infinity();
    Eigen::MatrixXd d = Eigen::MatrixXd::Constant(g.n, g.n, inf);
    for (int i = 0; i < g.n; ++i) d(i, i) = 0;
    for (const GraphEdge& e : g.edges) d(e.i, e.j) = d(e.j, e.i) = e.weight;
    for (int k = 0; k < g.n; ++k)
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
    return d;
}

}  // namespace

TEST_CASE("knn(1) on three collinear points") {
    NeighborhoodGraph g = neighborhood_graph(line_points({0, 1, 2}), NeighborRule::knn(1));
    REQUIRE(g.edges.size() == 2);
    CHECK(g.edges[0].i == 0);
    CHECK(g.edges[0].j == 1);
    CHECK(g.edges[1].i == 1);
    CHECK(g.edges[1].j == 2);
}

TEST_CASE("eps(inf) gives the complete graph with input weights") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> unif(0, 1);
    std::vector<Eigen::VectorXd> pts(9, Eigen::VectorXd(3));
    for (auto& p : pts) p << unif(rng), unif(rng), unif(rng);
    DistanceMatrix d = dm_from_points(pts);
    NeighborhoodGraph g =
        neighborhood_graph(d, NeighborRule::ball(std::numeric_limits<double>::infinity()));
    CHECK(g.edges.size() == 9 * 8 / 2);
    for (const GraphEdge& e : g.edges) CHECK(e.weight == d(e.i, e.j));
}

TEST_CASE("knn graph has degree >= k and audited weights") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> unif(0, 1);
    std::vector<Eigen::VectorXd> pts(30, Eigen::VectorXd(3));
    for (auto& p : pts) p << unif(rng), unif(rng), unif(rng);
    DistanceMatrix d = dm_from_points(pts);
    NeighborhoodGraph g = neighborhood_graph(d, NeighborRule::knn(4));
    std::vector<int> degree(30, 0);
    for (const GraphEdge& e : g.edges) {
        ++degree[e.i];
        ++degree[e.j];
        CHECK(e.weight == d(e.i, e.j));
        CHECK(e.weight > 0);
        CHECK(e.i < e.j);
    }
    for (int deg : degree) CHECK(deg >= 4);
}

TEST_CASE("geodesics: path graph and complete graph") {
    NeighborhoodGraph path = neighborhood_graph(line_points({0, 1, 2}), NeighborRule::knn(1));
    GeodesicResult geo = geodesic_distances(path);
    CHECK(geo.dropped == 0);
    CHECK(geo.d(0, 2) == doctest::Approx(2.0));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(0, 1);
    std::vector<Eigen::VectorXd> pts(12, Eigen::VectorXd(3));
    for (auto& p : pts) p << unif(rng), unif(rng), unif(rng);
    DistanceMatrix d = dm_from_points(pts);
    NeighborhoodGraph complete =
        neighborhood_graph(d, NeighborRule::ball(std::numeric_limits<double>::infinity()));
    GeodesicResult geo2 = geodesic_distances(complete);
    // triangle inequality makes every direct edge the shortest path
    CHECK((geo2.d.d - d.d).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("geodesics match Floyd-Warshall and the serial reference") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> unif(0, 1);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Eigen::VectorXd> pts(25, Eigen::VectorXd(2));
        for (auto& p : pts) p << unif(rng), unif(rng);
        DistanceMatrix d = dm_from_points(pts);
        NeighborhoodGraph g = neighborhood_graph(d, NeighborRule::knn(3));
        GeodesicResult geo = geodesic_distances(g);
        GeodesicResult ref = geodesic_distances_serial(g);
        REQUIRE(geo.vertices == ref.vertices);
        CHECK(geo.d.d == ref.d.d);  // bit-identical

        Eigen::MatrixXd oracle = floyd_warshall(g);
        for (int a = 0; a < geo.d.size(); ++a)
            for (int b = 0; b < geo.d.size(); ++b)
                CHECK(geo.d(a, b) == doctest::Approx(oracle(geo.vertices[a], geo.vertices[b])));
        // exact triangle inequality for a shortest-path metric
        for (int a = 0; a < geo.d.size(); ++a)
            for (int b = 0; b < geo.d.size(); ++b)
                for (int c = 0; c < geo.d.size(); ++c)
                    CHECK(geo.d(a, b) <= geo.d(a, c) + geo.d(c, b) + 1e-12);
    }
}

TEST_CASE("geodesics keep only the largest component") {
    // two clusters far apart, knn(2) cannot bridge them
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < 5; ++i) {
        Eigen::VectorXd p(1);
        p << 0.1 * i;
        pts.push_back(p);
    }
    for (int i = 0; i < 3; ++i) {
        Eigen::VectorXd p(1);
        p << 100 + 0.1 * i;
        pts.push_back(p);
    }
    NeighborhoodGraph g = neighborhood_graph(dm_from_points(pts), NeighborRule::ball(0.5));
    GeodesicResult geo = geodesic_distances(g);
    CHECK(geo.dropped == 3);
    CHECK(geo.vertices == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("classical MDS: line, zeros, round trip, rank deficiency") {
    SUBCASE("three points on a line") {
        Embedding e = classical_mds(line_points({0, 3, 7}), 1);
        REQUIRE(e.points.cols() == 1);
        CHECK(!e.rank_deficient);
        std::vector<double> dists{std::abs(e.points(0, 0) - e.points(1, 0)),
                                  std::abs(e.points(1, 0) - e.points(2, 0)),
                                  std::abs(e.points(0, 0) - e.points(2, 0))};
        std::sort(dists.begin(), dists.end());
        CHECK(dists[0] == doctest::Approx(3.0));
        CHECK(dists[1] == doctest::Approx(4.0));
        CHECK(dists[2] == doctest::Approx(7.0));
    }
    SUBCASE("all-zero distances embed at the origin") {
        DistanceMatrix d;
        d.d = Eigen::MatrixXd::Zero(5, 5);
        Embedding e = classical_mds(d, 2);
        CHECK(e.points.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
    }
    SUBCASE("exact Euclidean input round-trips within 1e-6") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> unif(-1, 1);
        std::vector<Eigen::VectorXd> pts(20, Eigen::VectorXd(3));
        for (auto& p : pts) p << unif(rng), unif(rng), unif(rng);
        DistanceMatrix d = dm_from_points(pts);
        Embedding e = classical_mds(d, 3);
        CHECK(!e.rank_deficient);
        for (int i = 0; i < 20; ++i)
            for (int j = i + 1; j < 20; ++j)
                CHECK((e.points.row(i) - e.points.row(j)).norm() ==
                      doctest::Approx(d(i, j)).epsilon(1e-6));
        // spectrum descending
        for (int k = 1; k < e.spectrum.size(); ++k) CHECK(e.spectrum[k] <= e.spectrum[k - 1]);
    }
    SUBCASE("non-Euclidean star metric is flagged") {
        // unit star K_{1,3}: leaves pairwise at 2, no Euclidean realization
        DistanceMatrix d;
        d.d = Eigen::MatrixXd::Constant(4, 4, 2.0);
        for (int i = 0; i < 4; ++i) d.d(i, i) = 0;
        d.d(0, 1) = d.d(1, 0) = d.d(0, 2) = d.d(2, 0) = d.d(0, 3) = d.d(3, 0) = 1.0;
        Embedding e = classical_mds(d, 4);
        CHECK(e.rank_deficient);
        CHECK(e.points.cols() < 4);
        CHECK(!e.dropped_negative.empty());
    }
}

TEST_CASE("isomap on a flat square has low distortion") {
    // jittered grid: a perfectly regular grid biases graph geodesics toward
    // the octile metric and inflates the distortion floor
    std::vector<Eigen::VectorXd> pts;
    const int side = 15;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> jitter(-0.2, 0.2);
    for (int i = 0; i < side; ++i)
        for (int j = 0; j < side; ++j) {
            Eigen::VectorXd p(2);
            p << (i + jitter(rng)) / (side - 1), (j + jitter(rng)) / (side - 1);
            pts.push_back(p);
        }
    DistanceMatrix d = dm_from_points(pts);
    IsomapResult res = isomap(d, NeighborRule::knn(8), 2);
    CHECK(res.geodesics.dropped == 0);
    std::vector<double> abs_log;
    for (const DistortionEdge& e : res.distortion) abs_log.push_back(std::abs(e.log_ratio));
    std::sort(abs_log.begin(), abs_log.end());
    CHECK(abs_log[abs_log.size() / 2] < 0.05);
}

TEST_CASE("isomap of a circle is round") {
    const int n = 60;
    std::vector<Eigen::VectorXd> pts(n, Eigen::VectorXd(2));
    for (int i = 0; i < n; ++i) {
        double a = 2 * M_PI * i / n;
        pts[i] << std::cos(a), std::sin(a);
    }
    IsomapResult res = isomap(dm_from_points(pts), NeighborRule::knn(4), 2);
    Eigen::RowVectorXd center = res.embedding.points.colwise().mean();
    double mean_r = 0, var_r = 0;
    std::vector<double> radii;
    for (int i = 0; i < n; ++i) radii.push_back((res.embedding.points.row(i) - center).norm());
    for (double r : radii) mean_r += r / n;
    for (double r : radii) var_r += (r - mean_r) * (r - mean_r) / n;
    CHECK(std::sqrt(var_r) / mean_r < 0.05);
}

TEST_CASE("isomap is deterministic") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> unif(0, 1);
    std::vector<Eigen::VectorXd> pts(40, Eigen::VectorXd(3));
    for (auto& p : pts) p << unif(rng), unif(rng), unif(rng);
    DistanceMatrix d = dm_from_points(pts);
    IsomapResult a = isomap(d, NeighborRule::knn(6), 3);
    IsomapResult b = isomap(d, NeighborRule::knn(6), 3);
    CHECK(a.embedding.points == b.embedding.points);
    CHECK(a.embedding.spectrum == b.embedding.spectrum);
    REQUIRE(a.distortion.size() == b.distortion.size());
    for (std::size_t k = 0; k < a.distortion.size(); ++k)
        CHECK(a.distortion[k].log_ratio == b.distortion[k].log_ratio);
}

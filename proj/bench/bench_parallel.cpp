// Compares the OpenMP kernels against their single-threaded references on a
// realistic workload and checks that the outputs are bit-identical.

#include <chrono>
#include <cstdio>

#include "cotopo/embedding.hpp"
#include "cotopo/metrics.hpp"
#include "cotopo/sampling.hpp"

using namespace cotopo;
using Clock = std::chrono::steady_clock;

namespace {

double seconds(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

}  // namespace

int main() {
    SamplerConfig cfg;
    cfg.count = 600;
    cfg.seed = 42;
    auto samples = sample_variety(LinkageParams{}, cfg);
    std::vector<TorsionSequence> torsions;
    torsions.reserve(samples.size());
    for (const auto& x : samples) torsions.push_back(torsion_angles(x));
    std::printf("workload: %zu linkage samples\n", samples.size());

    MetricSpec spec{MetricBase::angular, QuotientGroup::D8};
    auto t0 = Clock::now();
    DistanceMatrix parallel = distance_matrix(torsions, spec);
    auto t1 = Clock::now();
    DistanceMatrix serial = distance_matrix_serial(torsions, spec);
    auto t2 = Clock::now();
    bool same = parallel.d == serial.d;
    std::printf("distance_matrix (D8 quotient): parallel %.3fs, serial %.3fs, speedup %.2fx, %s\n",
                seconds(t0, t1), seconds(t1, t2), seconds(t1, t2) / seconds(t0, t1),
                same ? "identical" : "MISMATCH");

    NeighborhoodGraph graph = neighborhood_graph(parallel, NeighborRule::knn(12));
    t0 = Clock::now();
    GeodesicResult geo_parallel = geodesic_distances(graph);
    t1 = Clock::now();
    GeodesicResult geo_serial = geodesic_distances_serial(graph);
    t2 = Clock::now();
    bool geo_same = geo_parallel.d.d == geo_serial.d.d;
    std::printf("geodesic_distances (knn 12):    parallel %.3fs, serial %.3fs, speedup %.2fx, %s\n",
                seconds(t0, t1), seconds(t1, t2), seconds(t1, t2) / seconds(t0, t1),
                geo_same ? "identical" : "MISMATCH");

    return same && geo_same ? 0 : 1;
}

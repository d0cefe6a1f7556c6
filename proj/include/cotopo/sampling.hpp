#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cotopo/geometry.hpp"
#include "cotopo/metrics.hpp"

namespace cotopo {

struct EmptyVariety : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NewtonDivergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SamplerConfig {
    std::size_t count = 100;
    std::uint64_t seed = 0;
    double step_size = 0.2;          // tangent step, model units
    double min_separation = 0.0;     // greedy subsampling radius in d-angular
    int max_newton_iters = 50;
    double newton_tol = 1e-10;
};

enum class SyntheticKind { circle, sphere2, flat_torus, flat_klein_bottle, mobius_strip };

struct SyntheticSpec {
    SyntheticKind kind = SyntheticKind::circle;
    std::size_t count = 100;
    std::uint64_t seed = 0;
    double noise = 0.0;
};

/// One valid realization, in closed form (crown/planar configuration).
Realization initial_seed_realization(const LinkageParams& params);

/// Random-walk with Gauss-Newton projection onto the constraint variety.
/// Outputs are Eckart-aligned; reproducible for fixed (params, cfg).
std::vector<StandardRealization> sample_variety(const LinkageParams& params,
                                                const SamplerConfig& cfg);

/// Intrinsic parameter coordinates of a synthetic sample (2 or 3 columns
/// depending on kind); exposed so tests can build explicit cycles.
std::vector<Eigen::VectorXd> synthetic_points(const SyntheticSpec& spec);

/// Exact pairwise distance matrix of the synthetic sample (ambient Euclidean
/// for circle/sphere2, flat quotient metric for torus/Klein bottle/Moebius).
DistanceMatrix synthetic_sample(const SyntheticSpec& spec);

/// Flat quotient distance between two parameter points of the given kind,
/// minimizing over deck transformations with shifts up to the given bound.
/// Used both by synthetic_sample and as a brute-force oracle in tests.
double deck_distance(SyntheticKind kind, const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                     int shift_bound);

/// Half-width of the Moebius strip model [0,1] x [-w, w].
inline constexpr double kMoebiusHalfWidth = 0.25;

}  // namespace cotopo

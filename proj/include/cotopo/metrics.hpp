#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "cotopo/geometry.hpp"

namespace cotopo {

struct NotAligned : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SizeMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class MetricBase { angular, euclidean };
enum class QuotientGroup { none, C8, D8 };

struct MetricSpec {
    MetricBase base = MetricBase::angular;
    QuotientGroup quotient = QuotientGroup::none;
};

struct DistanceMatrix {
    Eigen::MatrixXd d;

    int size() const { return int(d.rows()); }
    double operator()(int i, int j) const { return d(i, j); }
};

/// Sum over the 8 indices of circular distance on S^1; range [0, 8*pi].
double angular_distance(const TorsionSequence& a, const TorsionSequence& b);

/// Root of summed squared pointwise distances of Eckart-aligned realizations.
double euclidean_distance(const StandardRealization& a, const StandardRealization& b,
                          bool check_alignment = true);

double quotient_distance(const MetricSpec& spec, const TorsionSequence& a,
                         const TorsionSequence& b);
double quotient_distance(const MetricSpec& spec, const StandardRealization& a,
                         const StandardRealization& b);

/// The group elements minimized over for a quotient choice (1, 8 or 16).
std::vector<GroupElement> quotient_elements(QuotientGroup q);

DistanceMatrix distance_matrix(const std::vector<TorsionSequence>& pts, const MetricSpec& spec);
DistanceMatrix distance_matrix(const std::vector<StandardRealization>& pts,
                               const MetricSpec& spec);

/// Single-threaded reference used by tests and the benchmark.
DistanceMatrix distance_matrix_serial(const std::vector<TorsionSequence>& pts,
                                      const MetricSpec& spec);
DistanceMatrix distance_matrix_serial(const std::vector<StandardRealization>& pts,
                                      const MetricSpec& spec);

struct DistortionStats {
    std::vector<std::pair<double, double>> pairs;  // (d1_ij, d2_ij) sample
    double pearson = 0.0;
    double min_ratio = 0.0;  // over pairs with d1 > 0
    double max_ratio = 0.0;
};

DistortionStats distortion_stats(const DistanceMatrix& d1, const DistanceMatrix& d2,
                                 std::size_t pair_count, std::uint64_t seed);

}  // namespace cotopo

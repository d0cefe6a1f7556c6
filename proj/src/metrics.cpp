#include "cotopo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cotopo {

double angular_distance(const TorsionSequence& a, const TorsionSequence& b) {
    double sum = 0.0;
    for (int i = 0; i < kRingSize; ++i) {
        double gap = std::abs(a[i] - b[i]);
        sum += std::min(gap, 2.0 * M_PI - gap);
    }
    return sum;
}

double euclidean_distance(const StandardRealization& a, const StandardRealization& b,
                          bool check_alignment) {
    if (check_alignment) {
        const double tol = 1e-6 * std::max(a.params.bond_length, 1.0);
        if (eckart_residual(a.points) > tol || eckart_residual(b.points) > tol)
            throw NotAligned("euclidean_distance requires Eckart-aligned inputs");
    }
    double sum = 0.0;
    for (int i = 0; i < kRingSize; ++i) sum += (a.points[size_t(i)] - b.points[size_t(i)]).squaredNorm();
    return std::sqrt(sum);
}

std::vector<GroupElement> quotient_elements(QuotientGroup q) {
    std::vector<GroupElement> out;
    if (q == QuotientGroup::none) {
        out.push_back(GroupElement::identity());
        return out;
    }
    for (int k = 0; k < kRingSize; ++k) out.push_back(GroupElement{k, false});
    if (q == QuotientGroup::D8)
        for (int k = 0; k < kRingSize; ++k) out.push_back(GroupElement{k, true});
    return out;
}

double quotient_distance(const MetricSpec& spec, const TorsionSequence& a,
                         const TorsionSequence& b) {
    if (spec.base != MetricBase::angular)
        throw std::invalid_argument("torsion inputs require the angular base metric");
    double best = std::numeric_limits<double>::infinity();
    for (const GroupElement& g : quotient_elements(spec.quotient))
        best = std::min(best, angular_distance(a, act_on_torsions(g, b)));
    return best;
}

double quotient_distance(const MetricSpec& spec, const StandardRealization& a,
                         const StandardRealization& b) {
    if (spec.base != MetricBase::euclidean)
        throw std::invalid_argument("realization inputs require the euclidean base metric");
    double best = std::numeric_limits<double>::infinity();
    for (const GroupElement& g : quotient_elements(spec.quotient))
        best = std::min(best, euclidean_distance(a, act_on_standard(g, b), false));
    return best;
}

namespace {

template <class Point, class Dist>
DistanceMatrix assemble_parallel(const std::vector<Point>& pts, Dist&& dist) {
    const int n = int(pts.size());
    DistanceMatrix out;
    out.d = Eigen::MatrixXd::Zero(n, n);
#pragma omp parallel for schedule(dynamic, 8)
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.d(i, j) = dist(pts[size_t(i)], pts[size_t(j)]);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.d(j, i) = out.d(i, j);
    return out;
}

template <class Point, class Dist>
DistanceMatrix assemble_serial(const std::vector<Point>& pts, Dist&& dist) {
    const int n = int(pts.size());
    DistanceMatrix out;
    out.d = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.d(i, j) = out.d(j, i) = dist(pts[size_t(i)], pts[size_t(j)]);
    return out;
}

}  // namespace

DistanceMatrix distance_matrix(const std::vector<TorsionSequence>& pts, const MetricSpec& spec) {
    return assemble_parallel(pts, [&](const TorsionSequence& a, const TorsionSequence& b) {
        return quotient_distance(spec, a, b);
    });
}

DistanceMatrix distance_matrix(const std::vector<StandardRealization>& pts,
                               const MetricSpec& spec) {
    return assemble_parallel(pts, [&](const StandardRealization& a, const StandardRealization& b) {
        return quotient_distance(spec, a, b);
    });
}

DistanceMatrix distance_matrix_serial(const std::vector<TorsionSequence>& pts,
                                      const MetricSpec& spec) {
    return assemble_serial(pts, [&](const TorsionSequence& a, const TorsionSequence& b) {
        return quotient_distance(spec, a, b);
    });
}

DistanceMatrix distance_matrix_serial(const std::vector<StandardRealization>& pts,
                                      const MetricSpec& spec) {
    return assemble_serial(pts, [&](const StandardRealization& a, const StandardRealization& b) {
        return quotient_distance(spec, a, b);
    });
}

DistortionStats distortion_stats(const DistanceMatrix& d1, const DistanceMatrix& d2,
                                 std::size_t pair_count, std::uint64_t seed) {
    if (d1.size() != d2.size()) throw SizeMismatch("distance matrices differ in size");
    const int n = d1.size();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, std::max(n - 1, 0));

    DistortionStats stats;
    stats.min_ratio = std::numeric_limits<double>::infinity();
    stats.max_ratio = -std::numeric_limits<double>::infinity();
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    std::size_t used = 0;
    for (std::size_t k = 0; k < pair_count && n > 1; ++k) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        double x = d1(i, j), y = d2(i, j);
        stats.pairs.emplace_back(x, y);
        sx += x; sy += y; sxx += x * x; syy += y * y; sxy += x * y;
        ++used;
        if (x > 0.0) {
            double r = y / x;
            stats.min_ratio = std::min(stats.min_ratio, r);
            stats.max_ratio = std::max(stats.max_ratio, r);
        }
    }
    if (used >= 2) {
        double num = double(used) * sxy - sx * sy;
        double den = std::sqrt(double(used) * sxx - sx * sx) * std::sqrt(double(used) * syy - sy * sy);
        stats.pearson = den > 0 ? num / den : 1.0;
    } else {
        stats.pearson = 1.0;
    }
    if (!std::isfinite(stats.min_ratio)) stats.min_ratio = stats.max_ratio = 1.0;
    return stats;
}

}  // namespace cotopo

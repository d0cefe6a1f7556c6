#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cotopo/homology.hpp"

namespace cotopo {

struct Disconnected : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoProminentClass : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotACycle : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotEdges : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LiftFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CircularCoordinate {
    std::vector<double> values;  // per vertex, in [0, 1)
    Interval source_interval;
    int prime = 47;
    double r = 0.0;
    // harmonic residual 1-form on the VR edges at scale r, keyed by (i, j)
    // with i < j and oriented j -> i positive
    std::map<std::pair<int, int>, double> theta;
};

/// Circle-valued coordinate from the most prominent 1-dimensional class alive
/// at scale r: the F_p cocycle is lifted to integers in (-p/2, p/2) and
/// smoothed by a least-squares vertex potential.
CircularCoordinate circular_coordinate(const DistanceMatrix& d, double r, int prime = 47);

/// Integral of the harmonic 1-form along a closed vertex path; the sum must
/// round to an integer with error < 0.1.
int winding_number(const CircularCoordinate& coord, const std::vector<int>& cycle);

}  // namespace cotopo

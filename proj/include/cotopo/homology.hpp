#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "cotopo/metrics.hpp"

namespace cotopo {

struct CapacityExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kInfDeath = std::numeric_limits<double>::infinity();
inline constexpr std::size_t kDefaultSimplexBudget = 50'000'000;

struct Simplex {
    std::vector<int> vertices;  // ascending
    double diameter = 0.0;
    int dim() const { return int(vertices.size()) - 1; }
};

/// Explicit Vietoris-Rips filtration, sorted by (diameter, dimension,
/// lexicographic vertices). Used for small instances and test oracles; the
/// persistence engine itself enumerates simplices implicitly.
struct Filtration {
    std::vector<Simplex> simplices;
    double r_max = 0.0;
    int max_dim = 0;
};

Filtration build_filtration(const DistanceMatrix& d, int max_dim, double r_max,
                            std::size_t budget = kDefaultSimplexBudget);

struct Interval {
    double birth = 0.0;
    double death = kInfDeath;
    bool essential() const { return death == kInfDeath; }
};

/// A 1-cocycle representative: edge (i > j) with an integer coefficient
/// lifted to the symmetric range (-p/2, p/2).
struct CocycleEntry {
    int i = 0, j = 0;
    int coeff = 0;
};

struct PersistenceDiagram {
    int field_char = 2;
    double r_max = 0.0;
    std::vector<std::vector<Interval>> intervals;  // per dimension 0..max_dim
    // parallel to intervals[1] when cocycle recording was requested
    std::vector<std::vector<CocycleEntry>> cocycles_dim1;

    int max_dim() const { return int(intervals.size()) - 1; }
};

struct PersistenceOptions {
    std::size_t budget = kDefaultSimplexBudget;
    bool record_dim1_cocycles = false;
};

/// Vietoris-Rips persistence over F_p via coboundary reduction with the
/// clearing optimization; zero-persistence pairs are dropped and essential
/// classes are reported with infinite death.
PersistenceDiagram persistence(const DistanceMatrix& d, int field_char, int max_dim,
                               double r_max, const PersistenceOptions& opts = {});

/// Betti numbers at scale r: intervals with birth <= r < death, per dimension.
std::vector<int> betti_at(const PersistenceDiagram& diag, double r);

/// Keeps intervals with death/birth >= ratio; a zero birth counts as the
/// smallest positive birth/death value in the diagram; essential intervals
/// are always kept.
PersistenceDiagram prominent_intervals(const PersistenceDiagram& diag, double ratio);

}  // namespace cotopo

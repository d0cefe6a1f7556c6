#pragma once

#include <array>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "cotopo/geometry.hpp"

namespace cotopo {

struct ToleranceConfig {
    double tol_2d = 2.5 * M_PI / 180.0;
    double tol_1d = 5.0 * M_PI / 180.0;
    double tol_0d = 5.0 * M_PI / 180.0;

    double for_dim(int dim) const { return dim == 2 ? tol_2d : dim == 1 ? tol_1d : tol_0d; }
};

struct SymmetryLabel {
    std::set<int> types;            // subset of {1..18}
    std::set<std::string> strata0;  // zero-dimensional stratum keys, e.g. "3,13,14"
    double type1_residual = 0.0;    // best-shift deviation from the period-4 pattern

    bool has(int t) const { return types.count(t) > 0; }
};

/// One matchable condition row: an 8-slot template of (possibly negated)
/// variables, an optional sign row, and order constraints between frame
/// positions. A rule matches if some cyclic shift satisfies everything
/// within the tolerance of its stratum dimension.
struct PatternRule {
    static constexpr int kFree = 0;
    static constexpr int kZero = -1000;
    std::array<int, kRingSize> entry{};  // kFree, kZero, or +/-var_id (1-based)
    std::array<int, kRingSize> sign{};   // -1, 0 (unconstrained), +1
    struct Order {
        int i = 0, j = 0;
        int rel = 0;  // -1: <=, 0: =, +1: >=
    };
    std::vector<Order> orders;
};

struct PatternEntry {
    bool is_stratum = false;
    int type_id = 0;          // for types
    std::string key;          // for strata, e.g. "3,13,14"
    int expected_cardinality = 0;
    int dim = 2;              // 2, 1, or 0; selects the tolerance
    std::vector<PatternRule> rules;
};

struct PatternSet {
    std::vector<PatternEntry> entries;
};

PatternSet parse_patterns(std::istream& in);

/// The compiled-in pattern table (identical to data/symmetry_patterns.txt).
const std::string& embedded_pattern_text();
const PatternSet& default_patterns();

/// Violation of a single rule at the best cyclic shift (0 = exact match).
double rule_residual(const PatternRule& rule, const TorsionSequence& s);

SymmetryLabel classify(const TorsionSequence& s, const ToleranceConfig& tol,
                       const PatternSet& patterns = default_patterns());

enum class SubspaceMode { any, closure };

/// Indices whose label intersects the selector set. Closure mode additionally
/// keeps points whose type-1 match only holds by tolerance (their period-4
/// residual exceeds closure_floor), so boundary points join the subspace.
std::vector<int> subspace_indices(const std::vector<SymmetryLabel>& labels,
                                  const std::set<int>& selector, SubspaceMode mode,
                                  const ToleranceConfig& tol, double closure_floor = -1.0);

std::vector<int> subspace_A(const std::vector<SymmetryLabel>& labels, const ToleranceConfig& tol);
std::vector<int> subspace_B(const std::vector<SymmetryLabel>& labels, const ToleranceConfig& tol);
std::vector<int> subspace_C(const std::vector<SymmetryLabel>& labels, const ToleranceConfig& tol);

enum class Hemisphere { first, second, boundary };

/// Compares the torsion sums at even vs odd positions; the sign of the
/// difference splits a subspace into two halves glued along the zero set.
Hemisphere hemisphere_split(const TorsionSequence& s, const ToleranceConfig& tol);

}  // namespace cotopo

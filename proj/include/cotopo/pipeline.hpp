#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cotopo/circular.hpp"
#include "cotopo/dataset.hpp"
#include "cotopo/embedding.hpp"
#include "cotopo/homology.hpp"
#include "cotopo/metrics.hpp"

namespace cotopo {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Named slice of a labeled dataset. Recognized names: full, A, B, C, AuB,
/// AuC, BuC, M1, M2 (the two halves of C), and "types" with an explicit set.
struct SubspaceSelector {
    std::string name = "full";
    std::set<int> types;
};

struct PipelineConfig {
    MetricSpec metric;
    SubspaceSelector subspace;
    std::vector<int> primes{2, 3};
    int max_dim = 2;
    double r_max = 8.0;
    double betti_r = 4.0;           // scale at which summary Betti numbers are read
    double prominence_ratio = 2.0;  // death/birth cutoff for long-interval counts
    std::size_t budget = kDefaultSimplexBudget;
    bool isomap_enabled = false;
    NeighborRule neighbor_rule = NeighborRule::knn(12);
    int embed_dim = 3;
    bool circular_enabled = false;
    double circular_r = 0.0;  // scale for the circular coordinate
    int circular_prime = 47;
    ToleranceConfig tol;
};

struct RunResult {
    std::vector<int> indices;  // dataset rows in the selected subspace
    std::vector<SymmetryLabel> labels;  // per dataset row (empty for synthetic)
    DistanceMatrix distances;           // of the selected subspace
    std::vector<PersistenceDiagram> diagrams;  // parallel to config.primes
    std::optional<IsomapResult> isomap;
    std::optional<CircularCoordinate> circular;
    std::vector<std::pair<std::string, std::string>> summary;  // ordered key/value

    std::string summary_text() const;
};

/// classify -> subspace filter -> distance matrix -> persistence per prime ->
/// optional isomap -> optional circular coordinate. Deterministic: identical
/// config and data give identical results.
RunResult run(const PipelineConfig& config, const Dataset& data);

/// Writes summary.txt, diagram_f<p>.csv, labels.csv and, when computed,
/// embedding.csv / distortion.csv / circular.csv into the directory
/// (created if missing). Rerunning overwrites with identical bytes.
void write_outputs(const RunResult& result, const std::string& out_dir);

/// Per-dimension count of long intervals: essential classes in dimension 0,
/// intervals kept by prominent_intervals elsewhere.
std::vector<int> prominent_signature(const PersistenceDiagram& diag, double ratio);

/// Resolves a subspace selector to dataset row indices (classifying first if
/// the dataset has no labels yet).
std::vector<int> select_subspace(const SubspaceSelector& sel,
                                 const std::vector<SymmetryLabel>& labels,
                                 const std::vector<TorsionSequence>& torsions,
                                 const ToleranceConfig& tol);

struct QuotientRow {
    std::string subspace;
    QuotientGroup group = QuotientGroup::C8;
    std::vector<int> signature_f2, signature_f3;  // long-interval counts
    std::vector<int> betti_f2, betti_f3;          // at the report scale
};

struct QuotientReport {
    double betti_r = 0.0;
    std::vector<QuotientRow> rows;

    std::string text() const;
    const QuotientRow& row(const std::string& subspace, QuotientGroup group) const;
};

/// Persistence of every named slice under the C8 quotient metric plus the
/// full space and the A/B/C slices under D8.
QuotientReport compare_quotients(const Dataset& data, MetricBase base,
                                 const PipelineConfig& config);

}  // namespace cotopo

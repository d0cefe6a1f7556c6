#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cotopo/geometry.hpp"
#include "cotopo/sampling.hpp"
#include "cotopo/symmetry.hpp"

namespace cotopo {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Layout { carbon24, full72 };

enum class DatasetOrigin { ingested, sampled, synthetic };

/// A point cloud the pipeline can run on. Linkage datasets carry realizations
/// plus their torsion sequences; synthetic datasets carry only the generator
/// spec (their metric is computed in closed form, no realizations exist).
struct Dataset {
    DatasetOrigin origin = DatasetOrigin::sampled;
    std::vector<StandardRealization> realizations;
    std::vector<TorsionSequence> torsions;
    std::vector<SymmetryLabel> labels;  // filled by the pipeline when needed
    std::optional<SyntheticSpec> synthetic;
    std::string provenance;
    std::vector<std::string> warnings;

    std::size_t size() const {
        return synthetic ? synthetic->count : torsions.size();
    }
};

/// Reads rows of whitespace/comma-separated reals. carbon24 expects 24
/// columns (x0,y0,z0,...,x7,y7,z7); full72 expects 72 and keeps the first 24.
/// Bond length and joint angle are estimated from the data medians; each row
/// must satisfy the ring constraints within tolerance, and rows violating the
/// alignment condition are re-aligned with a warning.
Dataset ingest(const std::string& path, Layout layout);

Dataset dataset_from_samples(std::vector<StandardRealization> samples, std::string provenance);

Dataset synthetic_dataset(const SyntheticSpec& spec);

/// One carbon24 row per realization, full double precision; round-trips
/// through ingest exactly.
void export_realizations(const Dataset& data, std::ostream& out);
void export_realizations(const Dataset& data, const std::string& path);

}  // namespace cotopo

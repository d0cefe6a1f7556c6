#include "cotopo/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace cotopo {

namespace {

std::string fmt(double v, const char* spec = "%.17g") {
    char buf[40];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string join_counts(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::vector<int> union_of(std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

DistanceMatrix subspace_distances(const Dataset& data, const std::vector<int>& indices,
                                  const MetricSpec& spec) {
    if (spec.base == MetricBase::euclidean) {
        std::vector<StandardRealization> subset;
        subset.reserve(indices.size());
        for (int i : indices) subset.push_back(data.realizations[size_t(i)]);
        return distance_matrix(subset, spec);
    }
    std::vector<TorsionSequence> subset;
    subset.reserve(indices.size());
    for (int i : indices) subset.push_back(data.torsions[size_t(i)]);
    return distance_matrix(subset, spec);
}

double quantile(std::vector<double> v, double q) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    double pos = q * double(v.size() - 1);
    std::size_t lo = std::size_t(pos);
    std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - double(lo)) * (v[hi] - v[lo]);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    out << content;
}

std::string diagram_csv(const PersistenceDiagram& diag) {
    std::string out = "dim,birth,death,field\n";
    for (int q = 0; q <= diag.max_dim(); ++q)
        for (const Interval& iv : diag.intervals[size_t(q)]) {
            out += std::to_string(q);
            out += ',';
            out += fmt(iv.birth);
            out += ',';
            out += iv.essential() ? "inf" : fmt(iv.death);
            out += ',';
            out += std::to_string(diag.field_char);
            out += '\n';
        }
    return out;
}

}  // namespace

std::vector<int> prominent_signature(const PersistenceDiagram& diag, double ratio) {
    PersistenceDiagram pruned = prominent_intervals(diag, ratio);
    std::vector<int> sig(size_t(diag.max_dim()) + 1, 0);
    for (const Interval& iv : diag.intervals[0])
        if (iv.essential()) ++sig[0];
    for (int q = 1; q <= diag.max_dim(); ++q) sig[size_t(q)] = int(pruned.intervals[size_t(q)].size());
    return sig;
}

std::vector<int> select_subspace(const SubspaceSelector& sel,
                                 const std::vector<SymmetryLabel>& labels,
                                 const std::vector<TorsionSequence>& torsions,
                                 const ToleranceConfig& tol) {
    const std::string& name = sel.name;
    if (name == "full") {
        std::vector<int> all(labels.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = int(i);
        return all;
    }
    if (name == "A") return subspace_A(labels, tol);
    if (name == "B") return subspace_B(labels, tol);
    if (name == "C") return subspace_C(labels, tol);
    if (name == "AuB") return union_of(subspace_A(labels, tol), subspace_B(labels, tol));
    if (name == "AuC") return union_of(subspace_A(labels, tol), subspace_C(labels, tol));
    if (name == "BuC") return union_of(subspace_B(labels, tol), subspace_C(labels, tol));
    if (name == "M1" || name == "M2") {
        Hemisphere keep = name == "M1" ? Hemisphere::first : Hemisphere::second;
        std::vector<int> out;
        for (int i : subspace_C(labels, tol)) {
            Hemisphere h = hemisphere_split(torsions[size_t(i)], tol);
            if (h == keep || h == Hemisphere::boundary) out.push_back(i);
        }
        return out;
    }
    if (name == "types") {
        if (sel.types.empty()) throw ConfigError("subspace 'types' needs a non-empty type set");
        return subspace_indices(labels, sel.types, SubspaceMode::any, tol);
    }
    throw ConfigError("unknown subspace selector: " + name);
}

std::string RunResult::summary_text() const {
    std::string out;
    for (const auto& [key, value] : summary) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    }
    return out;
}

RunResult run(const PipelineConfig& config, const Dataset& data) {
    for (int p : config.primes)
        if (!is_prime(p)) throw ConfigError("field characteristic must be prime: " + std::to_string(p));
    if (config.primes.empty()) throw ConfigError("at least one prime is required");
    if (config.metric.base == MetricBase::euclidean && data.realizations.empty())
        throw ConfigError("euclidean metric requires realizations");
    if (config.circular_enabled && config.circular_r <= 0.0)
        throw ConfigError("circular coordinates need a positive scale");
    if (data.synthetic && config.subspace.name != "full")
        throw ConfigError("synthetic datasets have no symmetry labels; use subspace full");

    RunResult res;
    if (data.synthetic) {
        res.distances = synthetic_sample(*data.synthetic);
        res.indices.resize(size_t(res.distances.size()));
        for (std::size_t i = 0; i < res.indices.size(); ++i) res.indices[i] = int(i);
    } else {
        if (data.torsions.empty()) throw ConfigError("dataset has no points");
        res.labels = data.labels;
        if (res.labels.size() != data.torsions.size()) {
            res.labels.clear();
            res.labels.reserve(data.torsions.size());
            for (const auto& t : data.torsions) res.labels.push_back(classify(t, config.tol));
        }
        res.indices = select_subspace(config.subspace, res.labels, data.torsions, config.tol);
        if (res.indices.empty()) throw ConfigError("subspace selection is empty");
        res.distances = subspace_distances(data, res.indices, config.metric);
    }

    for (int p : config.primes)
        res.diagrams.push_back(persistence(res.distances, p, config.max_dim, config.r_max,
                                           PersistenceOptions{config.budget, false}));
    if (config.isomap_enabled)
        res.isomap = isomap(res.distances, config.neighbor_rule, config.embed_dim);
    if (config.circular_enabled)
        res.circular = circular_coordinate(res.distances, config.circular_r,
                                           config.circular_prime);

    auto add = [&res](std::string key, std::string value) {
        res.summary.emplace_back(std::move(key), std::move(value));
    };
    add("points", std::to_string(data.size()));
    add("subspace", config.subspace.name);
    add("subspace_points", std::to_string(res.indices.size()));
    add("metric", config.metric.base == MetricBase::angular ? "angular" : "euclidean");
    add("quotient", config.metric.quotient == QuotientGroup::none ? "none"
                    : config.metric.quotient == QuotientGroup::C8 ? "C8"
                                                                  : "D8");
    add("max_dim", std::to_string(config.max_dim));
    add("r_max", fmt(config.r_max, "%g"));
    add("betti_r", fmt(config.betti_r, "%g"));
    for (std::size_t k = 0; k < config.primes.size(); ++k) {
        std::string prefix = "f" + std::to_string(config.primes[k]);
        add(prefix + ".betti", join_counts(betti_at(res.diagrams[k], config.betti_r)));
        add(prefix + ".prominent",
            join_counts(prominent_signature(res.diagrams[k], config.prominence_ratio)));
    }
    if (!res.labels.empty()) {
        std::map<int, int> type_counts;
        std::map<std::string, int> strata_counts;
        for (int i : res.indices) {
            for (int t : res.labels[size_t(i)].types) ++type_counts[t];
            for (const std::string& s : res.labels[size_t(i)].strata0) ++strata_counts[s];
        }
        for (const auto& [t, c] : type_counts)
            add("label.type" + std::to_string(t), std::to_string(c));
        for (const auto& [s, c] : strata_counts) add("label.stratum." + s, std::to_string(c));
    }
    if (res.isomap) {
        add("isomap.points", std::to_string(res.isomap->geodesics.vertices.size()));
        add("isomap.dropped", std::to_string(res.isomap->geodesics.dropped));
        add("isomap.rank_deficient", res.isomap->embedding.rank_deficient ? "1" : "0");
        std::vector<double> log_ratios;
        for (const DistortionEdge& e : res.isomap->distortion) log_ratios.push_back(e.log_ratio);
        add("isomap.distortion.q25", fmt(quantile(log_ratios, 0.25), "%.6g"));
        add("isomap.distortion.q50", fmt(quantile(log_ratios, 0.50), "%.6g"));
        add("isomap.distortion.q75", fmt(quantile(log_ratios, 0.75), "%.6g"));
    }
    if (res.circular) {
        add("circular.prime", std::to_string(res.circular->prime));
        add("circular.r", fmt(res.circular->r, "%g"));
        add("circular.birth", fmt(res.circular->source_interval.birth, "%.6g"));
        add("circular.death", res.circular->source_interval.essential()
                                  ? "inf"
                                  : fmt(res.circular->source_interval.death, "%.6g"));
    }
    return res;
}

void write_outputs(const RunResult& res, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::path dir(out_dir);
    fs::create_directories(dir);

    write_file(dir / "summary.txt", res.summary_text());
    for (const PersistenceDiagram& diag : res.diagrams)
        write_file(dir / ("diagram_f" + std::to_string(diag.field_char) + ".csv"),
                   diagram_csv(diag));

    if (!res.labels.empty()) {
        std::string csv = "index,types,strata\n";
        for (int i : res.indices) {
            csv += std::to_string(i);
            csv += ',';
            bool first = true;
            for (int t : res.labels[size_t(i)].types) {
                if (!first) csv += ';';
                csv += std::to_string(t);
                first = false;
            }
            csv += ',';
            first = true;
            for (const std::string& s : res.labels[size_t(i)].strata0) {
                if (!first) csv += ';';
                csv += s;
                first = false;
            }
            csv += '\n';
        }
        write_file(dir / "labels.csv", csv);
    }

    if (res.isomap) {
        const Eigen::MatrixXd& pts = res.isomap->embedding.points;
        const char* names[3] = {"x", "y", "z"};
        int cols = std::min<int>(3, int(pts.cols()));
        std::string csv = "index";
        for (int c = 0; c < cols; ++c) {
            csv += ',';
            csv += names[c];
        }
        csv += '\n';
        for (int row = 0; row < pts.rows(); ++row) {
            int local = res.isomap->geodesics.vertices[size_t(row)];
            csv += std::to_string(res.indices[size_t(local)]);
            for (int c = 0; c < cols; ++c) {
                csv += ',';
                csv += fmt(pts(row, c));
            }
            csv += '\n';
        }
        write_file(dir / "embedding.csv", csv);

        std::string dist = "i,j,geodesic,embedded,log_ratio\n";
        for (const DistortionEdge& e : res.isomap->distortion) {
            dist += std::to_string(res.indices[size_t(e.i)]);
            dist += ',';
            dist += std::to_string(res.indices[size_t(e.j)]);
            dist += ',';
            dist += fmt(e.geodesic);
            dist += ',';
            dist += fmt(e.embedded);
            dist += ',';
            dist += fmt(e.log_ratio);
            dist += '\n';
        }
        write_file(dir / "distortion.csv", dist);
    }

    if (res.circular) {
        std::string csv = "index,value\n";
        for (std::size_t k = 0; k < res.circular->values.size(); ++k) {
            csv += std::to_string(res.indices[k]);
            csv += ',';
            csv += fmt(res.circular->values[k]);
            csv += '\n';
        }
        write_file(dir / "circular.csv", csv);
    }
}

std::string QuotientReport::text() const {
    std::ostringstream out;
    out << "subspace  group  F2  F3  (long-interval counts; Betti at r = " << betti_r << ")\n";
    for (const QuotientRow& row : rows) {
        out << row.subspace << "/" << (row.group == QuotientGroup::C8 ? "C8" : "D8") << "  ("
            << join_counts(row.signature_f2) << ")  (" << join_counts(row.signature_f3)
            << ")  betti (" << join_counts(row.betti_f2) << ")  (" << join_counts(row.betti_f3)
            << ")\n";
    }
    return out.str();
}

const QuotientRow& QuotientReport::row(const std::string& subspace, QuotientGroup group) const {
    for (const QuotientRow& r : rows)
        if (r.subspace == subspace && r.group == group) return r;
    throw ConfigError("no such quotient row: " + subspace);
}

QuotientReport compare_quotients(const Dataset& data, MetricBase base,
                                 const PipelineConfig& config) {
    if (data.synthetic) throw ConfigError("quotient comparison needs a linkage dataset");
    if (base == MetricBase::euclidean && data.realizations.empty())
        throw ConfigError("euclidean metric requires realizations");
    if (data.torsions.empty()) throw ConfigError("dataset has no points");

    std::vector<SymmetryLabel> labels = data.labels;
    if (labels.size() != data.torsions.size()) {
        labels.clear();
        labels.reserve(data.torsions.size());
        for (const auto& t : data.torsions) labels.push_back(classify(t, config.tol));
    }

    QuotientReport report;
    report.betti_r = config.betti_r;
    auto add_row = [&](const std::string& name, QuotientGroup group) {
        SubspaceSelector sel;
        sel.name = name;
        std::vector<int> indices = select_subspace(sel, labels, data.torsions, config.tol);
        if (indices.empty()) throw ConfigError("subspace selection is empty: " + name);
        DistanceMatrix d = subspace_distances(data, indices, MetricSpec{base, group});
        QuotientRow row;
        row.subspace = name;
        row.group = group;
        for (int p : {2, 3}) {
            PersistenceDiagram diag = persistence(d, p, config.max_dim, config.r_max,
                                                  PersistenceOptions{config.budget, false});
            auto& sig = p == 2 ? row.signature_f2 : row.signature_f3;
            auto& betti = p == 2 ? row.betti_f2 : row.betti_f3;
            sig = prominent_signature(diag, config.prominence_ratio);
            betti = betti_at(diag, config.betti_r);
        }
        report.rows.push_back(std::move(row));
    };
    for (const char* name : {"full", "A", "B", "C", "AuB", "AuC", "BuC"})
        add_row(name, QuotientGroup::C8);
    for (const char* name : {"full", "A", "B", "C"}) add_row(name, QuotientGroup::D8);
    return report;
}

}  // namespace cotopo

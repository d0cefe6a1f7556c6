#include "cotopo/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cotopo {

namespace {

bool is_separator(char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r'; }

// One row of tokens with their 1-based character positions.
std::vector<double> parse_row(const std::string& line, int lineno) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos < line.size()) {
        if (is_separator(line[pos])) {
            ++pos;
            continue;
        }
        std::size_t start = pos;
        while (pos < line.size() && !is_separator(line[pos])) ++pos;
        std::string token = line.substr(start, pos - start);
        char* end = nullptr;
        double v = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size() || token.empty()) {
            std::ostringstream msg;
            msg << "line " << lineno << ", column " << start + 1 << ": not a number: '" << token
                << "'";
            throw ParseError(msg.str());
        }
        values.push_back(v);
    }
    return values;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void format_value(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace

Dataset ingest(const std::string& path, Layout layout) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);

    const std::size_t want = layout == Layout::carbon24 ? 24 : 72;
    std::vector<PointSet> rows;
    std::vector<int> row_lines;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::vector<double> values = parse_row(line, lineno);
        if (values.empty()) continue;
        if (values.size() != want) {
            std::ostringstream msg;
            msg << "line " << lineno << ": expected " << want << " columns, got "
                << values.size();
            throw ParseError(msg.str());
        }
        PointSet points;
        for (int i = 0; i < kRingSize; ++i)
            points[size_t(i)] = Vec3(values[size_t(3 * i)], values[size_t(3 * i + 1)],
                                     values[size_t(3 * i + 2)]);
        rows.push_back(points);
        row_lines.push_back(lineno);
    }
    if (rows.empty()) throw ParseError(path + ": no data rows");

    // Estimate the linkage parameters from the data itself: median edge
    // length, and the joint angle from the median second-neighbor gap.
    std::vector<double> edges, gaps;
    for (const PointSet& x : rows)
        for (int i = 0; i < kRingSize; ++i) {
            edges.push_back((x[size_t((i + 1) % kRingSize)] - x[size_t(i)]).norm());
            gaps.push_back((x[size_t((i + 2) % kRingSize)] - x[size_t(i)]).norm());
        }
    LinkageParams params;
    params.bond_length = median(edges);
    double g = median(gaps);
    double cos_phi = 1.0 - g * g / (2.0 * params.bond_length * params.bond_length);
    params.bond_angle = std::acos(std::clamp(cos_phi, -1.0, 1.0));
    params.validate();

    const double tol = 1e-3 * params.bond_length * params.bond_length;
    std::ostringstream bad;
    int bad_count = 0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        double res = constraint_residual_max(rows[k], params);
        if (res > tol) {
            if (bad_count < 10)
                bad << "\n  row at line " << row_lines[k] << ": constraint residual " << res
                    << " exceeds " << tol;
            ++bad_count;
        }
    }
    if (bad_count > 0) {
        std::ostringstream msg;
        msg << path << ": " << bad_count << " of " << rows.size()
            << " rows violate the ring constraints (bond length " << params.bond_length
            << ", joint angle " << params.bond_angle << " estimated from medians)" << bad.str();
        throw ValidationError(msg.str());
    }

    Dataset data;
    data.origin = DatasetOrigin::ingested;
    data.provenance = path;
    int realigned = 0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (eckart_residual(rows[k]) > 1e-8) {
            data.realizations.push_back(eckart_align(Realization{rows[k], params}));
            ++realigned;
        } else {
            data.realizations.push_back(StandardRealization{rows[k], params});
        }
        data.torsions.push_back(torsion_angles(data.realizations.back()));
    }
    if (realigned > 0) {
        std::ostringstream warn;
        warn << realigned << " of " << rows.size()
             << " rows violated the alignment condition and were re-aligned";
        data.warnings.push_back(warn.str());
    }
    return data;
}

Dataset dataset_from_samples(std::vector<StandardRealization> samples, std::string provenance) {
    Dataset data;
    data.origin = DatasetOrigin::sampled;
    data.provenance = std::move(provenance);
    data.realizations = std::move(samples);
    data.torsions.reserve(data.realizations.size());
    for (const auto& x : data.realizations) data.torsions.push_back(torsion_angles(x));
    return data;
}

Dataset synthetic_dataset(const SyntheticSpec& spec) {
    Dataset data;
    data.origin = DatasetOrigin::synthetic;
    data.synthetic = spec;
    std::ostringstream prov;
    prov << "synthetic kind=" << int(spec.kind) << " n=" << spec.count << " seed=" << spec.seed
         << " noise=" << spec.noise;
    data.provenance = prov.str();
    return data;
}

void export_realizations(const Dataset& data, std::ostream& out) {
    std::string line;
    for (const auto& x : data.realizations) {
        line.clear();
        for (int i = 0; i < kRingSize; ++i)
            for (int c = 0; c < 3; ++c) {
                if (i || c) line += ' ';
                format_value(line, x.points[size_t(i)][c]);
            }
        line += '\n';
        out << line;
    }
}

void export_realizations(const Dataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    export_realizations(data, out);
}

}  // namespace cotopo

#include "cotopo/homology.hpp"

#include <algorithm>

namespace cotopo {

namespace {

void extend(const DistanceMatrix& d, std::vector<int>& verts, double diam, int max_dim,
            double r_max, std::size_t budget, std::vector<Simplex>& out) {
    if (out.size() >= budget)
        throw CapacityExceeded("simplex budget exceeded; reduce r_max or the sample size");
    out.push_back({verts, diam});
    // one dimension past max_dim: those simplices kill max_dim-cycles
    if (int(verts.size()) - 1 == max_dim + 1) return;
    const int n = int(d.size());
    for (int v = verts.back() + 1; v < n; ++v) {
        double ext = diam;
        bool ok = true;
        for (int u : verts) {
            double duv = d(u, v);
            if (duv > r_max) {
                ok = false;
                break;
            }
            ext = std::max(ext, duv);
        }
        if (!ok) continue;
        verts.push_back(v);
        extend(d, verts, ext, max_dim, r_max, budget, out);
        verts.pop_back();
    }
}

}  // namespace

Filtration build_filtration(const DistanceMatrix& d, int max_dim, double r_max,
                            std::size_t budget) {
    Filtration f;
    f.r_max = r_max;
    f.max_dim = max_dim;
    std::vector<int> verts;
    for (int v = 0; v < int(d.size()); ++v) {
        verts = {v};
        extend(d, verts, 0.0, max_dim, r_max, budget, f.simplices);
    }
    std::sort(f.simplices.begin(), f.simplices.end(), [](const Simplex& a, const Simplex& b) {
        if (a.diameter != b.diameter) return a.diameter < b.diameter;
        if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
        return a.vertices < b.vertices;
    });
    return f;
}

std::vector<int> betti_at(const PersistenceDiagram& diag, double r) {
    std::vector<int> betti(diag.intervals.size(), 0);
    for (std::size_t q = 0; q < diag.intervals.size(); ++q)
        for (const Interval& iv : diag.intervals[q])
            if (iv.birth <= r && r < iv.death) ++betti[q];
    return betti;
}

PersistenceDiagram prominent_intervals(const PersistenceDiagram& diag, double ratio) {
    double min_positive = kInfDeath;
    for (const auto& dim : diag.intervals)
        for (const Interval& iv : dim) {
            if (iv.birth > 0) min_positive = std::min(min_positive, iv.birth);
            if (iv.death > 0 && !iv.essential()) min_positive = std::min(min_positive, iv.death);
        }
    PersistenceDiagram out;
    out.field_char = diag.field_char;
    out.r_max = diag.r_max;
    out.intervals.resize(diag.intervals.size());
    for (std::size_t q = 0; q < diag.intervals.size(); ++q)
        for (const Interval& iv : diag.intervals[q]) {
            double birth = iv.birth > 0 ? iv.birth : min_positive;
            if (iv.essential() || iv.death / birth >= ratio) out.intervals[q].push_back(iv);
        }
    return out;
}

}  // namespace cotopo

#include "cotopo/homology.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <unordered_map>
#include <vector>

// Vietoris-Rips persistence via persistent cohomology: columns of the
// coboundary matrix are reduced in filtration-reversed order, which makes the
// clearing optimization and the emergent-pair shortcut applicable. Simplices
// are identified by their combinatorial number in colexicographic vertex
// order, so only the columns currently being reduced are ever materialized.

namespace cotopo {

namespace {

using index_t = std::int64_t;
using coeff_t = std::uint32_t;

struct BinomialTable {
    int n = 0, k = 0;
    std::vector<index_t> b;  // (n+1) x (k+1)
    BinomialTable(int n_, int k_) : n(n_), k(k_), b(std::size_t(n_ + 1) * (k_ + 1), 0) {
        for (int i = 0; i <= n; ++i) {
            at(i, 0) = 1;
            for (int j = 1; j <= std::min(i, k); ++j)
                at(i, j) = at(i - 1, j - 1) + at(i - 1, j);
        }
    }
    index_t& at(int i, int j) { return b[std::size_t(i) * (k + 1) + j]; }
    index_t operator()(index_t i, index_t j) const {
        if (j > i || j < 0) return 0;
        return b[std::size_t(i) * (k + 1) + j];
    }
};

struct Entry {
    double diameter = 0.0;
    index_t index = -1;
    coeff_t coeff = 0;
};

// "less" for sorting columns: reverse filtration order, i.e. larger diameter
// first, ties by smaller combinatorial index
struct ReverseFiltrationOrder {
    bool operator()(const Entry& a, const Entry& b) const {
        return a.diameter > b.diameter || (a.diameter == b.diameter && a.index < b.index);
    }
};

// priority queue with this comparator surfaces the cohomology pivot: the
// entry earliest in the filtration (smallest diameter, ties larger index)
using Column = std::priority_queue<Entry, std::vector<Entry>, ReverseFiltrationOrder>;

struct UnionFind {
    std::vector<int> parent, rank_;
    explicit UnionFind(int n) : parent(n), rank_(n, 0) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(int x, int y) {
        x = find(x);
        y = find(y);
        if (x == y) return false;
        if (rank_[x] < rank_[y]) std::swap(x, y);
        parent[y] = x;
        if (rank_[x] == rank_[y]) ++rank_[x];
        return true;
    }
};

class Engine {
  public:
    Engine(const DistanceMatrix& d, int p, int max_dim, double r_max, std::size_t budget)
        : dist_(d),
          n_(int(d.size())),
          modulus_(coeff_t(p)),
          max_dim_(max_dim),
          threshold_(r_max),
          budget_(budget),
          binom_(n_ + 1, std::min(max_dim + 2, n_ + 1)),
          inverse_(p, 0) {
        for (coeff_t a = 1; a < coeff_t(p); ++a)
            inverse_[a] = a == 1 ? 1 : coeff_t(p) - (coeff_t(p) / a) * inverse_[p % a] % p;
    }

    PersistenceDiagram run(const PersistenceOptions& opts) {
        PersistenceDiagram diag;
        diag.field_char = int(modulus_);
        diag.r_max = threshold_;
        diag.intervals.resize(max_dim_ + 1);

        std::size_t simplex_count = std::size_t(n_);
        std::vector<Entry> simplices;  // all simplices of the current dimension
        std::vector<Entry> columns = compute_dim_0(diag.intervals[0], simplices);
        check_budget(simplex_count += simplices.size());

        for (int dim = 1; dim <= max_dim_; ++dim) {
            std::unordered_map<index_t, std::pair<index_t, coeff_t>> pivot_column_index;
            pivot_column_index.reserve(columns.size());
            compute_pairs(columns, pivot_column_index, dim, diag.intervals[dim],
                          dim == 1 && opts.record_dim1_cocycles ? &diag.cocycles_dim1 : nullptr);
            if (dim < max_dim_) {
                columns = assemble_columns(simplices, pivot_column_index, dim + 1);
                check_budget(simplex_count += simplices.size());
            }
        }
        return diag;
    }

  private:
    const DistanceMatrix& dist_;
    int n_;
    coeff_t modulus_;
    int max_dim_;
    double threshold_;
    std::size_t budget_;
    BinomialTable binom_;
    std::vector<coeff_t> inverse_;

    // compressed columns of the reduction matrix over the reduced basis
    std::vector<Entry> reduction_entries_;
    std::vector<std::size_t> reduction_bounds_{0};

    void check_budget(std::size_t count) const {
        if (count > budget_)
            throw CapacityExceeded("simplex budget exceeded; reduce r_max or the sample size");
    }

    index_t get_max_vertex(index_t idx, index_t k, index_t upper) const {
        index_t top = upper, bottom = k - 1;
        if (binom_(top, k) > idx) {
            index_t count = top - bottom;
            while (count > 0) {
                index_t step = count >> 1, mid = top - step;
                if (binom_(mid, k) > idx) {
                    top = mid - 1;
                    count -= step + 1;
                } else {
                    count = step;
                }
            }
        }
        return top;
    }

    // vertices in descending order
    void get_simplex_vertices(index_t idx, int dim, std::vector<index_t>& out) const {
        out.resize(dim + 1);
        index_t v = n_ - 1;
        for (index_t k = dim + 1; k > 0; --k) {
            v = get_max_vertex(idx, k, v);
            out[dim + 1 - k] = v;
            idx -= binom_(v, k);
        }
    }

    class CoboundaryEnumerator {
      public:
        CoboundaryEnumerator(const Entry& simplex, int dim, const Engine& e)
            : e_(e), simplex_(simplex), idx_below_(simplex.index), idx_above_(0),
              v_(e.n_ - 1), k_(dim + 1) {
            e.get_simplex_vertices(simplex.index, dim, vertices_);
        }
        bool has_next(bool all_cofacets = true) const {
            return v_ >= k_ && (all_cofacets || e_.binom_(v_, k_) > idx_below_);
        }
        Entry next() {
            while (e_.binom_(v_, k_) <= idx_below_) {
                idx_below_ -= e_.binom_(v_, k_);
                idx_above_ += e_.binom_(v_, k_ + 1);
                --v_;
                --k_;
            }
            double diam = simplex_.diameter;
            for (index_t w : vertices_) diam = std::max(diam, e_.dist_(int(v_), int(w)));
            index_t cofacet_index = idx_above_ + e_.binom_(v_--, k_ + 1) + idx_below_;
            coeff_t c = coeff_t((k_ & 1 ? e_.modulus_ - 1 : 1)) * simplex_.coeff % e_.modulus_;
            return Entry{diam, cofacet_index, c};
        }

      private:
        const Engine& e_;
        Entry simplex_;
        index_t idx_below_, idx_above_, v_, k_;
        std::vector<index_t> vertices_;
    };

    static Entry pop_pivot(Column& column, coeff_t modulus) {
        Entry pivot{0.0, -1, 0};
        while (!column.empty()) {
            if (pivot.coeff == 0) {
                pivot = column.top();
            } else if (column.top().index != pivot.index) {
                return pivot;
            } else {
                pivot.coeff = (pivot.coeff + column.top().coeff) % modulus;
            }
            column.pop();
        }
        return pivot.coeff == 0 ? Entry{0.0, -1, 0} : pivot;
    }

    static Entry get_pivot(Column& column, coeff_t modulus) {
        Entry pivot = pop_pivot(column, modulus);
        if (pivot.index != -1) column.push(pivot);
        return pivot;
    }

    std::vector<Entry> compute_dim_0(std::vector<Interval>& out, std::vector<Entry>& edges) {
        edges.clear();
        for (int i = 1; i < n_; ++i)
            for (int j = 0; j < i; ++j)
                if (dist_(i, j) <= threshold_)
                    edges.push_back({dist_(i, j), binom_(i, 2) + j, 1});
        // filtration order: ascending diameter, ties by larger index
        std::sort(edges.begin(), edges.end(), [](const Entry& a, const Entry& b) {
            return a.diameter < b.diameter || (a.diameter == b.diameter && a.index > b.index);
        });

        UnionFind uf(n_);
        std::vector<index_t> verts;
        std::vector<Entry> columns;
        for (const Entry& e : edges) {
            get_simplex_vertices(e.index, 1, verts);
            if (uf.unite(int(verts[0]), int(verts[1]))) {
                if (e.diameter > 0) out.push_back({0.0, e.diameter});
            } else {
                columns.push_back(e);  // creates a 1-cycle: a column for dim 1
            }
        }
        std::reverse(columns.begin(), columns.end());
        for (int i = 0; i < n_; ++i)
            if (uf.find(i) == i) out.push_back({0.0, kInfDeath});
        return columns;
    }

    std::vector<Entry> assemble_columns(
        std::vector<Entry>& simplices,
        const std::unordered_map<index_t, std::pair<index_t, coeff_t>>& pivot_column_index,
        int dim) {
        std::vector<Entry> next_simplices, columns;
        for (const Entry& simplex : simplices) {
            CoboundaryEnumerator cofacets(simplex, dim - 1, *this);
            while (cofacets.has_next(false)) {
                Entry cofacet = cofacets.next();
                if (cofacet.diameter > threshold_) continue;
                cofacet.coeff = 1;
                next_simplices.push_back(cofacet);
                if (!pivot_column_index.count(cofacet.index))  // clearing
                    columns.push_back(cofacet);
            }
        }
        simplices.swap(next_simplices);
        std::sort(columns.begin(), columns.end(), ReverseFiltrationOrder{});
        return columns;
    }

    // appends the coboundary of `column` (scaled by column.coeff) and records
    // the column itself in the working reduction column
    void add_simplex_coboundary(const Entry& column, int dim, Column& working_reduction_column,
                                Column& working_coboundary) {
        working_reduction_column.push(column);
        CoboundaryEnumerator cofacets(column, dim, *this);
        while (cofacets.has_next()) {
            Entry cofacet = cofacets.next();
            if (cofacet.diameter <= threshold_) working_coboundary.push(cofacet);
        }
    }

    void add_coboundary(const std::vector<Entry>& columns_to_reduce, index_t column_to_add,
                        coeff_t factor, int dim, Column& working_reduction_column,
                        Column& working_coboundary) {
        Entry base = columns_to_reduce[column_to_add];
        base.coeff = factor;
        add_simplex_coboundary(base, dim, working_reduction_column, working_coboundary);
        for (std::size_t i = reduction_bounds_[column_to_add];
             i < reduction_bounds_[column_to_add + 1]; ++i) {
            Entry e = reduction_entries_[i];
            e.coeff = e.coeff * factor % modulus_;
            add_simplex_coboundary(e, dim, working_reduction_column, working_coboundary);
        }
    }

    Entry init_coboundary_and_get_pivot(
        const Entry& column, int dim, Column& working_coboundary,
        const std::unordered_map<index_t, std::pair<index_t, coeff_t>>& pivot_column_index) {
        // emergent-pair shortcut: a cofacet of equal diameter that is not yet
        // a pivot must itself be this column's pivot
        bool check_for_emergent_pair = true;
        std::vector<Entry> cofacet_entries;
        CoboundaryEnumerator cofacets(column, dim, *this);
        while (cofacets.has_next()) {
            Entry cofacet = cofacets.next();
            if (cofacet.diameter > threshold_) continue;
            cofacet_entries.push_back(cofacet);
            if (check_for_emergent_pair && column.diameter == cofacet.diameter) {
                if (!pivot_column_index.count(cofacet.index)) return cofacet;
                check_for_emergent_pair = false;
            }
        }
        for (const Entry& e : cofacet_entries) working_coboundary.push(e);
        return get_pivot(working_coboundary, modulus_);
    }

    // cocycle representative = the column itself plus its reduction column,
    // read back from the persisted range [begin, end) of reduction_entries_
    void record_cocycle(const Entry& column, std::size_t begin, std::size_t end,
                        std::vector<std::vector<CocycleEntry>>& out) {
        std::vector<CocycleEntry> cocycle;
        std::vector<index_t> verts;
        auto push = [&](index_t index, coeff_t coeff) {
            get_simplex_vertices(index, 1, verts);
            int c = int(coeff);
            if (c > int(modulus_) / 2) c -= int(modulus_);
            cocycle.push_back({int(verts[0]), int(verts[1]), c});
        };
        push(column.index, 1);
        for (std::size_t i = begin; i < end; ++i)
            push(reduction_entries_[i].index, reduction_entries_[i].coeff);
        out.push_back(std::move(cocycle));
    }

    void compute_pairs(const std::vector<Entry>& columns_to_reduce,
                       std::unordered_map<index_t, std::pair<index_t, coeff_t>>& pivot_column_index,
                       int dim, std::vector<Interval>& out,
                       std::vector<std::vector<CocycleEntry>>* cocycles) {
        reduction_entries_.clear();
        reduction_bounds_.assign(1, 0);
        for (index_t idx = 0; idx < index_t(columns_to_reduce.size()); ++idx) {
            Entry column = columns_to_reduce[idx];
            column.coeff = 1;
            Column working_reduction_column, working_coboundary;
            Entry pivot =
                init_coboundary_and_get_pivot(column, dim, working_coboundary, pivot_column_index);
            bool emit = false;
            while (true) {
                if (pivot.index != -1) {
                    auto found = pivot_column_index.find(pivot.index);
                    if (found != pivot_column_index.end()) {
                        coeff_t factor =
                            modulus_ - pivot.coeff * inverse_[found->second.second] % modulus_;
                        add_coboundary(columns_to_reduce, found->second.first, factor, dim,
                                       working_reduction_column, working_coboundary);
                        pivot = get_pivot(working_coboundary, modulus_);
                    } else {
                        if (pivot.diameter > column.diameter) {
                            out.push_back({column.diameter, pivot.diameter});
                            emit = true;
                        }
                        pivot_column_index.emplace(pivot.index, std::make_pair(idx, pivot.coeff));
                        break;
                    }
                } else {
                    out.push_back({column.diameter, kInfDeath});
                    emit = true;
                    break;
                }
            }
            // persist the reduction column for later additions
            std::size_t begin = reduction_entries_.size();
            while (true) {
                Entry e = pop_pivot(working_reduction_column, modulus_);
                if (e.index == -1) break;
                reduction_entries_.push_back(e);
            }
            reduction_bounds_.push_back(reduction_entries_.size());
            if (emit && cocycles)
                record_cocycle(column, begin, reduction_entries_.size(), *cocycles);
        }
    }
};

bool is_prime(int p) {
    if (p < 2) return false;
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

}  // namespace

PersistenceDiagram persistence(const DistanceMatrix& d, int field_char, int max_dim, double r_max,
                               const PersistenceOptions& opts) {
    if (!is_prime(field_char)) throw std::invalid_argument("field_char must be prime");
    if (max_dim < 0) throw std::invalid_argument("max_dim must be non-negative");
    if (r_max <= 0) throw std::invalid_argument("r_max must be positive");
    Engine engine(d, field_char, max_dim, r_max, opts.budget);
    return engine.run(opts);
}

}  // namespace cotopo

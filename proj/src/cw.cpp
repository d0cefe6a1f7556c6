#include "cotopo/cw.hpp"

#include <istream>
#include <sstream>
#include <string>

namespace cotopo {

namespace {

int rank_mod_p(Eigen::MatrixXi m, int p) {
    auto mod = [p](int v) {
        int r = v % p;
        return r < 0 ? r + p : r;
    };
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = mod(m(i, j));
    int rank = 0;
    for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
        int pivot = -1;
        for (int row = rank; row < m.rows(); ++row)
            if (m(row, col) != 0) {
                pivot = row;
                break;
            }
        if (pivot < 0) continue;
        m.row(rank).swap(m.row(pivot));
        // scale the pivot row to 1 via the inverse of the pivot entry
        int inv = 1;
        for (int a = 1; a < p; ++a)
            if (m(rank, col) * a % p == 1) {
                inv = a;
                break;
            }
        for (int j = col; j < m.cols(); ++j) m(rank, j) = m(rank, j) * inv % p;
        for (int row = 0; row < m.rows(); ++row) {
            if (row == rank || m(row, col) == 0) continue;
            int factor = m(row, col);
            for (int j = col; j < m.cols(); ++j)
                m(row, j) = mod(m(row, j) - factor * m(rank, j));
        }
        ++rank;
    }
    return rank;
}

}  // namespace

std::vector<int> cw_betti(const CWComplexDescription& c, int field_char) {
    const int dims = int(c.cell_counts.size());
    for (int q = 2; q < dims; ++q) {
        if (c.boundary[q - 1].size() == 0 || c.boundary[q].size() == 0) continue;
        Eigen::MatrixXi composite = c.boundary[q - 1] * c.boundary[q];
        if (composite.cwiseAbs().maxCoeff() != 0)
            throw InvalidComplex("composite boundary map is nonzero");
    }
    std::vector<int> betti(dims, 0);
    for (int q = 0; q < dims; ++q) {
        int rank_q = 0, rank_q1 = 0;
        if (q >= 1 && q < int(c.boundary.size()) && c.boundary[q].size() > 0)
            rank_q = rank_mod_p(c.boundary[q], field_char);
        if (q + 1 < int(c.boundary.size()) && c.boundary[q + 1].size() > 0)
            rank_q1 = rank_mod_p(c.boundary[q + 1], field_char);
        betti[q] = c.cell_counts[q] - rank_q - rank_q1;
    }
    return betti;
}

CWComplexDescription read_cw_complex(std::istream& in) {
    CWComplexDescription c;
    std::string line;
    std::vector<std::vector<std::vector<int>>> raw_boundaries;
    int reading_boundary = -1;
    auto strip_comment = [](std::string s) {
        auto pos = s.find('#');
        if (pos != std::string::npos) s.erase(pos);
        return s;
    };
    while (std::getline(in, line)) {
        std::istringstream ls(strip_comment(line));
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "dim") {
            int q, count;
            if (!(ls >> q >> count)) throw InvalidComplex("malformed dim line");
            if (int(c.cell_counts.size()) <= q) c.cell_counts.resize(q + 1, 0);
            c.cell_counts[q] = count;
            reading_boundary = -1;
        } else if (tok == "boundary") {
            if (!(ls >> reading_boundary) || reading_boundary < 1)
                throw InvalidComplex("malformed boundary line");
            if (int(raw_boundaries.size()) <= reading_boundary)
                raw_boundaries.resize(reading_boundary + 1);
        } else if (reading_boundary >= 1) {
            std::istringstream row_in(strip_comment(line));
            std::vector<int> row;
            int v;
            while (row_in >> v) row.push_back(v);
            raw_boundaries[reading_boundary].push_back(row);
        } else {
            throw InvalidComplex("unexpected token: " + tok);
        }
    }
    c.boundary.resize(std::max(c.cell_counts.size(), raw_boundaries.size()));
    for (std::size_t q = 1; q < raw_boundaries.size(); ++q) {
        const auto& rows = raw_boundaries[q];
        if (rows.empty()) continue;
        int nr = c.cell_counts[q - 1], nc = c.cell_counts[q];
        if (int(rows.size()) != nr) throw InvalidComplex("boundary row count mismatch");
        Eigen::MatrixXi m(nr, nc);
        for (int i = 0; i < nr; ++i) {
            if (int(rows[i].size()) != nc) throw InvalidComplex("boundary column count mismatch");
            for (int j = 0; j < nc; ++j) m(i, j) = rows[i][j];
        }
        c.boundary[q] = m;
    }
    return c;
}

}  // namespace cotopo

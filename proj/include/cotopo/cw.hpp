#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace cotopo {

struct InvalidComplex : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite CW complex up to dimension 2, given by integer boundary matrices.
/// boundary[q] has one row per (q-1)-cell and one column per q-cell; entries
/// are signed incidence multiplicities. boundary[0] is ignored (empty).
struct CWComplexDescription {
    std::vector<int> cell_counts;                 // per dimension 0..2
    std::vector<Eigen::MatrixXi> boundary;        // boundary[q]: C_q -> C_{q-1}
};

/// Betti numbers over F_p: beta_q = dim C_q - rank d_q - rank d_{q+1}.
/// Throws InvalidComplex unless the composite boundary vanishes over Z.
std::vector<int> cw_betti(const CWComplexDescription& c, int field_char);

/// Text format: `dim <q> <count>` lines followed by `boundary <q>` blocks of
/// rows (one row per (q-1)-cell). '#' starts a comment.
CWComplexDescription read_cw_complex(std::istream& in);

}  // namespace cotopo

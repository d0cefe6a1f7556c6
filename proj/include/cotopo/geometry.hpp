#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace cotopo {

inline constexpr int kRingSize = 8;

using Vec3 = Eigen::Vector3d;

struct DegenerateGeometry : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AlignmentDegenerate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bond length and joint angle of the uniform 8-ring linkage.
struct LinkageParams {
    double bond_length = 1.53;                 // model units
    double bond_angle = 115.0 * M_PI / 180.0;  // radians, in (0, pi)

    void validate() const {
        if (bond_length <= 0.0) throw std::invalid_argument("bond_length must be positive");
        if (bond_angle <= 0.0 || bond_angle >= M_PI)
            throw std::invalid_argument("bond_angle must lie in (0, pi)");
    }
};

/// Eight ordered joint positions in R^3.
using PointSet = std::array<Vec3, kRingSize>;

struct Realization {
    PointSet points;
    LinkageParams params;
};

/// A realization aligned to the planar reference octagon (centered,
/// cross-product alignment condition satisfied).
struct StandardRealization {
    PointSet points;
    LinkageParams params;
};

/// Eight oriented dihedral angles in (-pi, pi].
struct TorsionSequence {
    std::array<double, kRingSize> angles{};

    double& operator[](int i) { return angles[size_t(i)]; }
    double operator[](int i) const { return angles[size_t(i)]; }
};

/// Element of the dihedral group acting on vertex labels: g = s^reflect * t^shift,
/// with t^shift applied first.
struct GroupElement {
    int shift = 0;       // 0..7
    bool reflect = false;

    static GroupElement identity() { return {}; }
};

GroupElement compose(const GroupElement& g, const GroupElement& h);  // g after h
GroupElement inverse(const GroupElement& g);

/// Planar reference octagon (circumradius 1, xy-plane).
const PointSet& planar_reference();

TorsionSequence torsion_angles(const Realization& r);
TorsionSequence torsion_angles(const StandardRealization& r);

/// 16 residuals: entries 0..7 are ||x_{i+1}-x_i||^2 - l^2, entries 8..15 are
/// ||x_{i+2}-x_i||^2 - (2 l^2 - 2 l^2 cos phi).
std::array<double, 16> constraint_residual(const PointSet& points, const LinkageParams& params);

double constraint_residual_max(const PointSet& points, const LinkageParams& params);

StandardRealization eckart_align(const Realization& r);

/// Residual of the two Eckart sums, max over the six components.
double eckart_residual(const PointSet& points);

TorsionSequence act_on_torsions(const GroupElement& g, const TorsionSequence& s);
StandardRealization act_on_standard(const GroupElement& g, const StandardRealization& x);

/// Wrap an angle into (-pi, pi], with pi mapped to +pi.
double wrap_angle(double a);

}  // namespace cotopo

#include "cotopo/geometry.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace cotopo {

double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a <= -M_PI) a += 2.0 * M_PI;
    if (a > M_PI) a -= 2.0 * M_PI;
    return a;
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
    // g*h with the convention s^b t^k: s^bg t^kg s^bh t^kh = s^(bg^bh) t^(±kg + kh)
    GroupElement out;
    out.reflect = g.reflect != h.reflect;
    int k = h.reflect ? -g.shift : g.shift;
    out.shift = ((k + h.shift) % kRingSize + kRingSize) % kRingSize;
    return out;
}

GroupElement inverse(const GroupElement& g) {
    if (g.reflect) return g;  // (s t^k)^2 = id in D8
    return GroupElement{(kRingSize - g.shift) % kRingSize, false};
}

const PointSet& planar_reference() {
    static const PointSet ref = [] {
        PointSet p;
        for (int i = 0; i < kRingSize; ++i) {
            double theta = (2.0 * i - 1.0) * M_PI / 8.0;
            p[size_t(i)] = Vec3(std::cos(theta), std::sin(theta), 0.0);
        }
        return p;
    }();
    return ref;
}

static TorsionSequence torsions_of(const PointSet& x) {
    std::array<Vec3, kRingSize> e, n;
    for (int i = 0; i < kRingSize; ++i) e[size_t(i)] = x[size_t((i + 1) % kRingSize)] - x[size_t(i)];
    for (int i = 0; i < kRingSize; ++i) {
        Vec3 c = e[size_t(i)].cross(e[size_t((i + 1) % kRingSize)]);
        double norm = c.norm();
        if (norm < 1e-12)
            throw DegenerateGeometry("collinear consecutive edges at index " + std::to_string(i));
        n[size_t(i)] = c / norm;
    }
    TorsionSequence sigma;
    for (int i = 0; i < kRingSize; ++i) {
        const Vec3& prev = n[size_t((i + kRingSize - 1) % kRingSize)];
        const Vec3& cur = n[size_t(i)];
        Vec3 axis = e[size_t(i)].normalized();
        double sine = prev.cross(cur).dot(axis);
        double cosine = prev.dot(cur);
        sigma[i] = wrap_angle(std::atan2(sine, cosine));
    }
    return sigma;
}

TorsionSequence torsion_angles(const Realization& r) { return torsions_of(r.points); }
TorsionSequence torsion_angles(const StandardRealization& r) { return torsions_of(r.points); }

std::array<double, 16> constraint_residual(const PointSet& x, const LinkageParams& p) {
    std::array<double, 16> res;
    const double l2 = p.bond_length * p.bond_length;
    const double diag2 = 2.0 * l2 - 2.0 * l2 * std::cos(p.bond_angle);
    for (int i = 0; i < kRingSize; ++i) {
        res[size_t(i)] = (x[size_t((i + 1) % kRingSize)] - x[size_t(i)]).squaredNorm() - l2;
        res[size_t(i + kRingSize)] =
            (x[size_t((i + 2) % kRingSize)] - x[size_t(i)]).squaredNorm() - diag2;
    }
    return res;
}

double constraint_residual_max(const PointSet& x, const LinkageParams& p) {
    double m = 0.0;
    for (double r : constraint_residual(x, p)) m = std::max(m, std::abs(r));
    return m;
}

double eckart_residual(const PointSet& x) {
    Vec3 sum = Vec3::Zero(), cross_sum = Vec3::Zero();
    const PointSet& ref = planar_reference();
    for (int i = 0; i < kRingSize; ++i) {
        sum += x[size_t(i)];
        cross_sum += ref[size_t(i)].cross(x[size_t(i)]);
    }
    double m = 0.0;
    for (int c = 0; c < 3; ++c) m = std::max({m, std::abs(sum[c]), std::abs(cross_sum[c])});
    return m;
}

StandardRealization eckart_align(const Realization& r) {
    Vec3 centroid = Vec3::Zero();
    for (const Vec3& p : r.points) centroid += p;
    centroid /= double(kRingSize);

    // Orthogonal Procrustes against the planar reference; the stationarity
    // condition of the rotation is the cross-product Eckart sum.
    const PointSet& ref = planar_reference();
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (int i = 0; i < kRingSize; ++i)
        cov += (r.points[size_t(i)] - centroid) * ref[size_t(i)].transpose();

    Eigen::JacobiSVD<Eigen::Matrix3d> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(1) <= 1e-10 * std::max(sv(0), 1e-300))
        throw AlignmentDegenerate("cross-covariance is rank-deficient");

    Eigen::Matrix3d u = svd.matrixU(), v = svd.matrixV();
    Eigen::Matrix3d rot = v * u.transpose();
    if (rot.determinant() < 0.0) {
        v.col(2) *= -1.0;
        rot = v * u.transpose();
    }

    StandardRealization out;
    out.params = r.params;
    for (int i = 0; i < kRingSize; ++i) out.points[size_t(i)] = rot * (r.points[size_t(i)] - centroid);
    return out;
}

TorsionSequence act_on_torsions(const GroupElement& g, const TorsionSequence& s) {
    TorsionSequence shifted;
    for (int i = 0; i < kRingSize; ++i) shifted[i] = s[(i + g.shift) % kRingSize];
    if (!g.reflect) return shifted;
    TorsionSequence out;
    for (int i = 0; i < kRingSize; ++i) out[i] = shifted[((1 - i) % kRingSize + kRingSize) % kRingSize];
    return out;
}

StandardRealization act_on_standard(const GroupElement& g, const StandardRealization& x) {
    static const Eigen::Matrix3d t_rot = [] {
        Eigen::Matrix3d m;
        const double c = std::sqrt(2.0) / 2.0;
        m << c, c, 0, -c, c, 0, 0, 0, 1;
        return m;
    }();
    // pi-rotation about the in-plane axis at angle pi/8 (the bisector of the
    // reference edge from vertex 0 to vertex 1); combined with the index
    // reversal i -> 2-i it preserves the planar reference octagon, so the
    // alignment condition survives and the induced torsion map is i -> 1-i.
    static const Eigen::Matrix3d s_rot = [] {
        Eigen::Matrix3d m;
        const double c = std::sqrt(2.0) / 2.0;
        m << c, c, 0, c, -c, 0, 0, 0, -1;
        return m;
    }();

    StandardRealization cur = x;
    for (int step = 0; step < g.shift; ++step) {
        StandardRealization next = cur;
        for (int i = 0; i < kRingSize; ++i)
            next.points[size_t(i)] = t_rot * cur.points[size_t((i + 1) % kRingSize)];
        cur = next;
    }
    if (g.reflect) {
        StandardRealization next = cur;
        for (int i = 0; i < kRingSize; ++i)
            next.points[size_t(i)] =
                s_rot * cur.points[size_t(((2 - i) % kRingSize + kRingSize) % kRingSize)];
        cur = next;
    }
    return cur;
}

}  // namespace cotopo

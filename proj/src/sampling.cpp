#include "cotopo/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

namespace cotopo {

Realization initial_seed_realization(const LinkageParams& params) {
    params.validate();
    const double l = params.bond_length, phi = params.bond_angle;
    if (phi > 3.0 * M_PI / 4.0 + 1e-12)
        throw EmptyVariety("no closed ring exists for joint angle > 3*pi/4");

    // Crown configuration: vertices alternate above/below a circle of radius r.
    // Second-neighbor distance fixes r, edge length then fixes the height h;
    // h = 0 exactly at phi = 3*pi/4 (the planar regular octagon).
    const double r2 = l * l * (1.0 - std::cos(phi));
    double h2 = (l * l - r2 * (2.0 - std::sqrt(2.0))) / 4.0;
    if (h2 < 1e-13 * l * l) h2 = 0.0;  // exact planar ring at the boundary angle
    const double r = std::sqrt(r2), h = std::sqrt(h2);

    Realization out;
    out.params = params;
    for (int k = 0; k < kRingSize; ++k) {
        double theta = 2.0 * M_PI * k / kRingSize;
        out.points[size_t(k)] = Vec3(r * std::cos(theta), r * std::sin(theta),
                                     (k % 2 == 0 ? h : -h));
    }
    return out;
}

namespace {

using Vec24 = Eigen::Matrix<double, 24, 1>;
using Jac = Eigen::Matrix<double, 16, 24>;

Vec24 flatten(const PointSet& x) {
    Vec24 v;
    for (int i = 0; i < kRingSize; ++i) v.segment<3>(3 * i) = x[size_t(i)];
    return v;
}

PointSet unflatten(const Vec24& v) {
    PointSet x;
    for (int i = 0; i < kRingSize; ++i) x[size_t(i)] = v.segment<3>(3 * i);
    return x;
}

Eigen::Matrix<double, 16, 1> residual_vec(const PointSet& x, const LinkageParams& p) {
    auto r = constraint_residual(x, p);
    Eigen::Matrix<double, 16, 1> v;
    for (int i = 0; i < 16; ++i) v(i) = r[size_t(i)];
    return v;
}

Jac residual_jacobian(const PointSet& x, const LinkageParams&) {
    Jac j = Jac::Zero();
    for (int i = 0; i < kRingSize; ++i) {
        for (int gap : {1, 2}) {
            int row = gap == 1 ? i : i + kRingSize;
            int other = (i + gap) % kRingSize;
            Vec3 diff = x[size_t(other)] - x[size_t(i)];
            j.block<1, 3>(row, 3 * other) = 2.0 * diff.transpose();
            j.block<1, 3>(row, 3 * i) = -2.0 * diff.transpose();
        }
    }
    return j;
}

// Gauss-Newton projection back onto the variety. Returns iterations used, or
// -1 on failure; monotone flag reports whether the residual decreased at
// every iteration.
int project(PointSet& x, const LinkageParams& p, const SamplerConfig& cfg, bool& monotone) {
    monotone = true;
    double prev = residual_vec(x, p).norm();
    for (int it = 0; it < cfg.max_newton_iters; ++it) {
        Eigen::Matrix<double, 16, 1> f = residual_vec(x, p);
        if (f.cwiseAbs().maxCoeff() < cfg.newton_tol) return it;
        Jac j = residual_jacobian(x, p);
        Vec24 delta = j.completeOrthogonalDecomposition().solve(-f);
        x = unflatten(flatten(x) + delta);
        double cur = residual_vec(x, p).norm();
        if (cur > prev) monotone = false;
        prev = cur;
    }
    return residual_vec(x, p).cwiseAbs().maxCoeff() < cfg.newton_tol ? cfg.max_newton_iters : -1;
}

// Orthonormal basis of the constraint-Jacobian null space with the six
// rigid-motion generators projected out: the walk's effective tangent plane.
Eigen::MatrixXd effective_tangent(const PointSet& x, const LinkageParams& p) {
    Jac j = residual_jacobian(x, p);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(j, Eigen::ComputeFullV);
    int rank = 0;
    double thresh = 1e-9 * svd.singularValues()(0);
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > thresh) ++rank;
    Eigen::MatrixXd kernel = svd.matrixV().rightCols(24 - rank);

    Eigen::Matrix<double, 24, 6> rigid;
    for (int a = 0; a < 3; ++a) {
        Vec3 e = Vec3::Unit(a);
        for (int i = 0; i < kRingSize; ++i) {
            rigid.block<3, 1>(3 * i, a) = e;
            rigid.block<3, 1>(3 * i, 3 + a) = e.cross(x[size_t(i)]);
        }
    }
    Eigen::HouseholderQR<Eigen::Matrix<double, 24, 6>> qr(rigid);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(24, 6);

    Eigen::MatrixXd reduced = kernel - q * (q.transpose() * kernel);
    Eigen::JacobiSVD<Eigen::MatrixXd> rsvd(reduced, Eigen::ComputeFullU);
    int eff = 0;
    for (int i = 0; i < rsvd.singularValues().size(); ++i)
        if (rsvd.singularValues()(i) > 1e-6) ++eff;
    eff = std::max(eff, 1);
    return rsvd.matrixU().leftCols(eff);
}

}  // namespace

std::vector<StandardRealization> sample_variety(const LinkageParams& params,
                                                const SamplerConfig& cfg) {
    params.validate();
    if (params.bond_angle > 3.0 * M_PI / 4.0 + 1e-12)
        throw EmptyVariety("no closed ring exists for joint angle > 3*pi/4");

    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    PointSet cur = initial_seed_realization(params).points;
    std::vector<StandardRealization> out;
    out.reserve(cfg.count);
    out.push_back(eckart_align(Realization{cur, params}));

    std::size_t attempts = 0, failures = 0;
    while (out.size() < cfg.count) {
        ++attempts;
        Eigen::MatrixXd tangent = effective_tangent(cur, params);
        Eigen::VectorXd coeff(tangent.cols());
        for (int i = 0; i < coeff.size(); ++i) coeff(i) = gauss(rng);
        double norm = coeff.norm();
        if (norm < 1e-12) continue;
        Vec24 step = tangent * (coeff / norm) * cfg.step_size;
        // small transversal kick: the variety self-intersects along circles,
        // and a projected step from one smooth sheet stays on that sheet (the
        // projection preserves its symmetry); perturbing off-tangent lets the
        // walk switch sheets where they meet
        Vec24 kick;
        for (int i = 0; i < 24; ++i) kick(i) = gauss(rng);
        step += kick * (0.3 * cfg.step_size / std::sqrt(24.0));

        PointSet candidate = unflatten(flatten(cur) + step);
        bool monotone = false;
        if (project(candidate, params, cfg, monotone) < 0) {
            ++failures;
            if (attempts >= 20 && failures * 2 > attempts)
                throw NewtonDivergence("projection failed on more than half the steps; reduce step_size");
            continue;
        }
        cur = candidate;
        out.push_back(eckart_align(Realization{cur, params}));
    }

    if (cfg.min_separation > 0.0) {
        std::vector<StandardRealization> kept;
        std::vector<TorsionSequence> kept_t;
        for (const auto& x : out) {
            TorsionSequence t = torsion_angles(x);
            bool ok = true;
            for (const auto& u : kept_t)
                if (angular_distance(t, u) < cfg.min_separation) { ok = false; break; }
            if (ok) {
                kept.push_back(x);
                kept_t.push_back(t);
            }
        }
        out = std::move(kept);
    }
    return out;
}

double deck_distance(SyntheticKind kind, const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                     int shift_bound) {
    double best = std::numeric_limits<double>::infinity();
    switch (kind) {
        case SyntheticKind::flat_torus:
            for (int m = -shift_bound; m <= shift_bound; ++m)
                for (int n = -shift_bound; n <= shift_bound; ++n)
                    best = std::min(best, std::hypot(b(0) + n - a(0), b(1) + m - a(1)));
            break;
        case SyntheticKind::flat_klein_bottle:
            // Deck group generated by (x,y) -> (x+1, y) and (x,y) -> (1-x, y+1).
            for (int m = -shift_bound; m <= shift_bound; ++m) {
                double bx = (m % 2 == 0) ? b(0) : 1.0 - b(0);
                for (int n = -shift_bound; n <= shift_bound; ++n)
                    best = std::min(best, std::hypot(bx + n - a(0), b(1) + m - a(1)));
            }
            break;
        case SyntheticKind::mobius_strip:
            // (x, y) ~ (x+1, -y).
            for (int n = -shift_bound; n <= shift_bound; ++n) {
                double by = (n % 2 == 0) ? b(1) : -b(1);
                best = std::min(best, std::hypot(b(0) + n - a(0), by - a(1)));
            }
            break;
        default:
            throw std::invalid_argument("deck_distance: kind has no flat quotient model");
    }
    return best;
}

std::vector<Eigen::VectorXd> synthetic_points(const SyntheticSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Eigen::VectorXd> pts;
    pts.reserve(spec.count);

    switch (spec.kind) {
        case SyntheticKind::circle:
            // Evenly spaced with optional angular jitter: exact at noise = 0.
            for (std::size_t k = 0; k < spec.count; ++k) {
                double theta = 2.0 * M_PI * double(k) / double(spec.count) + spec.noise * gauss(rng);
                Eigen::VectorXd p(2);
                p << std::cos(theta), std::sin(theta);
                pts.push_back(p);
            }
            break;
        case SyntheticKind::sphere2:
            for (std::size_t k = 0; k < spec.count; ++k) {
                Eigen::VectorXd p(3);
                do {
                    p << gauss(rng), gauss(rng), gauss(rng);
                } while (p.norm() < 1e-9);
                p.normalize();
                if (spec.noise > 0.0) p *= 1.0 + spec.noise * gauss(rng);
                pts.push_back(p);
            }
            break;
        case SyntheticKind::flat_torus:
        case SyntheticKind::flat_klein_bottle:
            for (std::size_t k = 0; k < spec.count; ++k) {
                Eigen::VectorXd p(2);
                p << unif(rng), unif(rng);
                pts.push_back(p);
            }
            break;
        case SyntheticKind::mobius_strip:
            for (std::size_t k = 0; k < spec.count; ++k) {
                Eigen::VectorXd p(2);
                p << unif(rng), kMoebiusHalfWidth * (2.0 * unif(rng) - 1.0);
                pts.push_back(p);
            }
            break;
    }
    return pts;
}

DistanceMatrix synthetic_sample(const SyntheticSpec& spec) {
    auto pts = synthetic_points(spec);
    const int n = int(pts.size());
    DistanceMatrix out;
    out.d = Eigen::MatrixXd::Zero(n, n);
    const bool flat = spec.kind == SyntheticKind::flat_torus ||
                      spec.kind == SyntheticKind::flat_klein_bottle ||
                      spec.kind == SyntheticKind::mobius_strip;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double d = flat ? deck_distance(spec.kind, pts[size_t(i)], pts[size_t(j)], 2)
                            : (pts[size_t(i)] - pts[size_t(j)]).norm();
            out.d(i, j) = out.d(j, i) = d;
        }
    return out;
}

}  // namespace cotopo

#pragma once

// Velocity Hessian of the rotator Lagrangian and SVD rank diagnostics.
//
// Velocities are ordered (xdot^0..3, kdot^0..3). The rank is reported on the
// velocities tangent to the light cone, kdot with k.kdot = 0, which is where
// the Lagrangian is defined; the unrestricted 8x8 rank is kept alongside.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rotator/dual.hpp"
#include "rotator/rotator_model.hpp"

namespace rotator {

struct KinematicPoint
{
    Vec4 xdot;
    Vec4 k;
    Vec4 kdot;
};

using Matrix8 = Eigen::Matrix<double, 8, 8>;

enum class DerivativeMode
{
    dual,
    finite_difference,
};

/*!
 * A generic point on the cone with rotation parameter Q:
 * k = (1, 1, 0, 0), xdot = (1.2, 0.3, 0.1, 0), kdot = (0.1, 0.1, b, 0.05 b).
 */
inline KinematicPoint kinematic_point_at(RotatorSpec const& spec, double q)
{
    KinematicPoint pt{{1.2, 0.3, 0.1, 0.0}, {1.0, 1.0, 0.0, 0.0}, {}};
    double kx = dot(pt.k, pt.xdot);
    double b = q * std::abs(kx) / (spec.l() * std::sqrt(1.0 + 0.05 * 0.05));
    pt.kdot = {0.1, 0.1, b, 0.05 * b};
    return pt;
}

//! d^2 L / dv_i dv_j with k held fixed.
inline Matrix8 lagrangian_hessian(RotatorSpec const& spec, KinematicPoint const& pt,
                                  DerivativeMode mode = DerivativeMode::dual,
                                  double rel_step = 1e-3)
{
    detail::check_kinematics(pt.xdot, pt.k, pt.kdot, true);
    std::array<double, 8> v{};
    for (int mu = 0; mu < 4; ++mu)
    {
        v[mu] = pt.xdot[mu];
        v[4 + mu] = pt.kdot[mu];
    }
    Matrix8 h;
    if (mode == DerivativeMode::dual)
    {
        using D2 = Dual<Dual<double>>;
        auto k = lift<D2>(pt.k);
        for (int i = 0; i < 8; ++i)
            for (int j = i; j < 8; ++j)
            {
                std::array<D2, 8> w;
                for (int a = 0; a < 8; ++a)
                    w[a] = D2(Dual<double>(v[a], a == j ? 1.0 : 0.0),
                              Dual<double>(a == i ? 1.0 : 0.0, 0.0));
                FourVector<D2> xd{w[0], w[1], w[2], w[3]};
                FourVector<D2> kd{w[4], w[5], w[6], w[7]};
                D2 l = lagrangian_value(spec, xd, k, kd);
                h(i, j) = h(j, i) = l.du.du;
            }
        return h;
    }

    double scale_x = component_norm(pt.xdot), scale_k = component_norm(pt.kdot);
    auto value = [&](std::array<double, 8> const& w) {
        return lagrangian_value(spec, Vec4{w[0], w[1], w[2], w[3]}, pt.k, Vec4{w[4], w[5], w[6], w[7]});
    };
    auto central = [&](int i, int j, double hi, double hj) {
        auto at = [&](double si, double sj) {
            auto w = v;
            w[i] += si * hi;
            w[j] += sj * hj;
            return value(w);
        };
        return (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * hi * hj);
    };
    for (int i = 0; i < 8; ++i)
        for (int j = i; j < 8; ++j)
        {
            double hi = rel_step * (i < 4 ? scale_x : scale_k);
            double hj = rel_step * (j < 4 ? scale_x : scale_k);
            double coarse = central(i, j, hi, hj);
            double fine = central(i, j, 0.5 * hi, 0.5 * hj);
            h(i, j) = h(j, i) = (4.0 * fine - coarse) / 3.0;
        }
    return h;
}

/*!
 * Euclidean-orthonormal basis (8x7) of velocities tangent to the cone: all
 * xdot directions and the kdot with k.kdot = 0.
 */
inline Eigen::Matrix<double, 8, 7> cone_tangent_basis(Vec4 const& k)
{
    Eigen::Matrix<double, 8, 7> basis = Eigen::Matrix<double, 8, 7>::Zero();
    for (int mu = 0; mu < 4; ++mu)
        basis(mu, mu) = 1.0;
    // k itself plus two spatial directions orthogonal to the spatial part of k.
    Eigen::Vector4d kv(k.t, k.x, k.y, k.z);
    Eigen::Vector3d ks(k.x, k.y, k.z);
    if (!(ks.norm() > 0.0))
        throw DegenerateError("cone_tangent_basis: k has no spatial part");
    Eigen::Vector3d helper = std::abs(ks.normalized().z()) < 0.9 ? Eigen::Vector3d::UnitZ()
                                                                 : Eigen::Vector3d::UnitX();
    Eigen::Vector3d e1 = helper.cross(ks).normalized();
    Eigen::Vector3d e2 = ks.cross(e1).normalized();
    basis.block<4, 1>(4, 4) = kv.normalized();
    basis.block<3, 1>(5, 5) = e1;
    basis.block<3, 1>(5, 6) = e2;
    return basis;
}

struct RankDiagnostics
{
    int rank = 0;
    int full_rank = 0;
    std::vector<double> singular_values;       //!< tangent-restricted spectrum
    std::vector<double> full_singular_values;  //!< unrestricted spectrum
    double gap = 0.0;                          //!< sigma_rank / sigma_{rank+1}
    bool indeterminate = false;
    std::string warning;
};

/*!
 * sigma_i counts iff sigma_i > rel * sigma_1. A gap sigma_r / sigma_{r+1}
 * below min_gap flags the rank as indeterminate.
 */
inline RankDiagnostics rank_from_singular_values(std::vector<double> sv, double rel = 1e-8,
                                                 double min_gap = 1e2)
{
    std::sort(sv.begin(), sv.end(), std::greater<>());
    RankDiagnostics d;
    d.singular_values = sv;
    if (sv.empty() || !(sv.front() > 0.0))
    {
        d.gap = std::numeric_limits<double>::infinity();
        return d;
    }
    double cut = rel * sv.front();
    while (d.rank < int(sv.size()) && sv[d.rank] > cut)
        ++d.rank;
    if (d.rank == int(sv.size()) || sv[d.rank] == 0.0)
        d.gap = std::numeric_limits<double>::infinity();
    else
        d.gap = sv[d.rank - 1] / sv[d.rank];
    if (d.gap < min_gap)
    {
        d.indeterminate = true;
        std::ostringstream os;
        os << "indeterminate rank: spectral gap " << d.gap << " below " << min_gap;
        d.warning = os.str();
    }
    return d;
}

template <class Matrix>
std::vector<double> singular_values(Matrix const& m)
{
    Eigen::MatrixXd dense = m;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(dense);
    Eigen::VectorXd s = svd.singularValues();
    return std::vector<double>(s.data(), s.data() + s.size());
}

inline RankDiagnostics hessian_rank(RotatorSpec const& spec, KinematicPoint const& pt,
                                    DerivativeMode mode = DerivativeMode::dual)
{
    Matrix8 h = lagrangian_hessian(spec, pt, mode);
    auto basis = cone_tangent_basis(pt.k);
    Eigen::MatrixXd restricted = basis.transpose() * h * basis;
    auto d = rank_from_singular_values(singular_values(restricted));
    auto full = rank_from_singular_values(singular_values(h));
    d.full_rank = full.rank;
    d.full_singular_values = full.singular_values;
    return d;
}

}  // namespace rotator

#pragma once

// Observables measured on states and sampled trajectories: rapidity,
// kinematic curvature radius, torsion residual and orbit radius.

#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rotator/gauge.hpp"
#include "rotator/integrator.hpp"

namespace rotator {

struct Observables
{
    double tanh_psi = 0.0;
    double rho = 0.0;
    double omega = 0.0;
    double torsion_residual = 0.0;
    CasimirPair casimirs;
};

//! tanh psi = (pk p.xdot - pp k.xdot) / (pk p.xdot).
inline double rapidity(State const& s, Vec4 const& xdot)
{
    double pk = dot(s.p, s.k), px = dot(s.p, xdot);
    if (px == 0.0)
        throw DegenerateError("rapidity: p.xdot = 0");
    if (!(pk > 0.0))
        throw DegenerateError("rapidity: pk must be positive");
    double v = (pk * px - dot(s.p, s.p) * dot(s.k, xdot)) / (pk * px);
    if (!(std::abs(v) < 1.0))
        throw GaugeError("rapidity: |tanh psi| = " + std::to_string(std::abs(v)) + " >= 1 (superluminal)");
    return v;
}

//! Q G' / (2 G - Q G') for the family at Q.
inline double rapidity_from_family(RotatorSpec const& spec, double q)
{
    auto v = eval_family(spec, q);
    return q * v.dg / (2.0 * v.g - q * v.dg);
}

//! C_J f' / (C_J f' - f).
inline double rapidity_from_relation(double c_j, double f, double df)
{
    return c_j * df / (c_j * df - f);
}

/*!
 * First three derivatives of x projected orthogonal to p, from 5-point
 * stencils on uniformly spaced positions centred at `i`.
 */
struct ProjectedDerivatives
{
    Vec4 velocity, acceleration, jerk;
};

inline ProjectedDerivatives projected_derivatives(std::span<Vec4 const> x, std::size_t i, double h,
                                                  Vec4 const& p)
{
    if (i < 2 || i + 2 >= x.size())
        throw DomainError("projected_derivatives: need two samples on either side");
    Vec4 const& a = x[i - 2];
    Vec4 const& b = x[i - 1];
    Vec4 const& c = x[i];
    Vec4 const& d = x[i + 1];
    Vec4 const& e = x[i + 2];
    Vec4 v = (1.0 / (12.0 * h)) * (a - 8.0 * b + 8.0 * d - e);
    Vec4 acc = (1.0 / (12.0 * h * h)) * (-1.0 * a + 16.0 * b - 30.0 * c + 16.0 * d - e);
    Vec4 jerk = (1.0 / (2.0 * h * h * h)) * (-1.0 * a + 2.0 * b - 2.0 * d + e);
    return {project_orthogonal(v, p), project_orthogonal(acc, p), project_orthogonal(jerk, p)};
}

//! (xdot.xdot)^{3/2} / sqrt(|Gram(xdot, xddot)|) of the projected derivatives.
inline double curvature_radius(ProjectedDerivatives const& d)
{
    double vv = std::abs(dot(d.velocity, d.velocity));
    double gram = std::abs(curvature_gram(d.velocity, d.acceleration));
    if (!(gram > 0.0))
        throw DegenerateError("curvature_radius: straight or zero-spin motion");
    return std::pow(vv, 1.5) / std::sqrt(gram);
}

//! Gram determinant of the three projected derivatives over the product of their squares.
inline double torsion_residual(ProjectedDerivatives const& d)
{
    std::array<Vec4 const*, 3> v{&d.velocity, &d.acceleration, &d.jerk};
    Eigen::Matrix3d gram;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            gram(a, b) = dot(*v[a], *v[b]);
    double norm = std::abs(gram(0, 0) * gram(1, 1) * gram(2, 2));
    if (!(norm > 0.0))
        return 0.0;
    return std::abs(gram.determinant()) / norm;
}

namespace detail {

inline double uniform_step(std::span<TrajectorySample const> window)
{
    if (window.size() < 5)
        throw DomainError("trajectory window needs at least 5 samples");
    double h = window[1].t - window[0].t;
    for (std::size_t i = 2; i < window.size(); ++i)
        if (std::abs(window[i].t - window[i - 1].t - h) > 1e-9 * h)
            throw DomainError("trajectory window must be uniformly sampled");
    return h;
}

inline std::vector<Vec4> positions(std::span<TrajectorySample const> window)
{
    std::vector<Vec4> x;
    x.reserve(window.size());
    for (auto const& s : window)
        x.push_back(s.state.x);
    return x;
}

}  // namespace detail

struct CurvatureEstimate
{
    double kinematic = 0.0;  //!< from finite-difference derivatives at the window centre
    double casimir = 0.0;    //!< (l/2) sqrt(C_J) / C_M
};

inline CurvatureEstimate curvature_radius(RotatorSpec const& spec, std::span<TrajectorySample const> window)
{
    double h = detail::uniform_step(window);
    auto x = detail::positions(window);
    std::size_t mid = window.size() / 2;
    auto const& centre = window[mid];
    if (centre.casimirs.c_j == 0.0)
        throw DegenerateError("curvature_radius: zero-spin window");
    auto d = projected_derivatives(x, mid, h, centre.state.p);
    return {curvature_radius(d), curvature_radius_casimir(spec, centre.casimirs)};
}

//! Largest torsion residual over the interior of the window.
inline double torsion_residual(std::span<TrajectorySample const> window)
{
    double h = detail::uniform_step(window);
    auto x = detail::positions(window);
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < x.size(); ++i)
        worst = std::max(worst, torsion_residual(projected_derivatives(x, i, h, window[i].state.p)));
    return worst;
}

/*!
 * Mean distance from the centroid of the drift-free, p-orthogonal positions.
 * The samples should span whole periods with the closing sample dropped.
 */
inline double measured_orbit_radius(std::span<TrajectorySample const> samples)
{
    if (samples.empty())
        throw DomainError("measured_orbit_radius: no samples");
    Vec4 p = samples.front().state.p;
    double norm_p = std::sqrt(dot(p, p));
    Vec4 origin = samples.front().state.x;
    std::vector<Vec4> y;
    y.reserve(samples.size());
    Vec4 centroid{};
    for (auto const& s : samples)
    {
        Vec4 rel = s.state.x - origin - (s.t / norm_p) * p;
        y.push_back(project_orthogonal(rel, p));
        centroid += y.back();
    }
    centroid = (1.0 / double(y.size())) * centroid;
    double sum = 0.0;
    for (auto const& v : y)
    {
        Vec4 r = v - centroid;
        sum += std::sqrt(std::abs(dot(r, r)));
    }
    return sum / double(y.size());
}

}  // namespace rotator

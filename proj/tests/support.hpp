#pragma once

#include <cmath>
#include <random>

#include "rotator/rotator.hpp"

namespace testing_support {

using namespace rotator;

//! Metric contraction written out by hand, independent of the library.
inline double minkowski(Vec4 const& a, Vec4 const& b)
{
    return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z;
}

inline double max_abs(Vec4 const& v)
{
    return std::max({std::abs(v.t), std::abs(v.x), std::abs(v.y), std::abs(v.z)});
}

inline double max_abs_diff(State const& a, State const& b)
{
    double worst = 0.0;
    for (int i = 0; i < 16; ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

inline Vec4 random_vec(std::mt19937_64& rng, double scale = 1.0)
{
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng), u(rng), u(rng)};
}

//! Random (xdot, k, kdot) on the cone with rotation parameter exactly q.
inline KinematicPoint random_kinematics(std::mt19937_64& rng, double l, double q)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vec3 n = random_unit_vector(rng);
    double s = std::exp(u(rng));
    Vec4 k{s, s * n[0], s * n[1], s * n[2]};
    Vec4 xdot{2.0 + u(rng), 0.5 * u(rng), 0.5 * u(rng), 0.5 * u(rng)};
    Vec4 v = random_vec(rng);
    Vec4 rest{1.0, 0.0, 0.0, 0.0};
    Vec4 kdot = v - (minkowski(v, k) / minkowski(rest, k)) * rest;
    double kx = minkowski(k, xdot);
    double current = std::sqrt(-l * l * minkowski(kdot, kdot) / (kx * kx));
    kdot = (q / current) * kdot;
    return {xdot, k, kdot};
}

//! Elementary scalars of a phase point, generic over the number type.
template <class T>
struct Scalars
{
    T kk, pk, kc, pp, pc, cc;
};

template <class T>
Scalars<T> scalars(PhaseState<T> const& s)
{
    return {dot(s.k, s.k), dot(s.p, s.k), dot(s.k, s.chi), dot(s.p, s.p), dot(s.p, s.chi), dot(s.chi, s.chi)};
}

inline State random_state(std::mt19937_64& rng)
{
    return {random_vec(rng), random_vec(rng), random_vec(rng), random_vec(rng)};
}

}  // namespace testing_support

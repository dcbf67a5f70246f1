#pragma once

// Reproducible random states on the constraint surface, for property checks.

#include <cmath>
#include <random>

#include "rotator/eom.hpp"

namespace rotator {

//! Boost with velocity beta (|beta| < 1) in an arbitrary direction.
inline Vec4 boost(Vec4 const& v, Vec3 const& beta)
{
    double b2 = beta[0] * beta[0] + beta[1] * beta[1] + beta[2] * beta[2];
    if (b2 == 0.0)
        return v;
    if (!(b2 < 1.0))
        throw DomainError("boost: |beta| must be below 1");
    double gamma = 1.0 / std::sqrt(1.0 - b2);
    double br = beta[0] * v.x + beta[1] * v.y + beta[2] * v.z;
    double coeff = (gamma - 1.0) * br / b2 + gamma * v.t;
    return {gamma * (v.t + br), v.x + coeff * beta[0], v.y + coeff * beta[1], v.z + coeff * beta[2]};
}

inline State boost(State const& s, Vec3 const& beta)
{
    return {boost(s.x, beta), boost(s.p, beta), boost(s.k, beta), boost(s.chi, beta)};
}

struct RandomStateOptions
{
    double max_beta = 0.6;
    //! Keep p.chi = 0 (otherwise chi picks up a random multiple of k).
    bool cm_gauge = false;
};

inline Vec3 random_unit_vector(std::mt19937_64& rng)
{
    std::normal_distribution<double> gauss;
    for (;;)
    {
        Vec3 v{gauss(rng), gauss(rng), gauss(rng)};
        double n = std::hypot(v[0], v[1], v[2]);
        if (n > 1e-6)
            return {v[0] / n, v[1] / n, v[2] / n};
    }
}

//! Q drawn uniformly from the inner 90% of the spec's range.
inline double random_q(RotatorSpec const& spec, std::mt19937_64& rng)
{
    auto r = spec.q_range();
    double lo = r.lo + 0.05 * (r.hi - r.lo), hi = r.hi - 0.05 * (r.hi - r.lo);
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/*!
 * Random state on the constraint surface: a CM-frame state with random Q,
 * axis and phase, then a random shift of x, rescaling of (k, chi) that keeps
 * the Casimirs, an optional k-admixture into chi, and a random boost.
 */
inline State random_on_surface_state(RotatorSpec const& spec, std::mt19937_64& rng,
                                     RandomStateOptions const& opts = {})
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double q = spec.is_fundamental() ? 0.0 : random_q(spec, rng);
    State s = build_initial_state(spec, q, random_unit_vector(rng), 2.0 * M_PI * unit(rng));
    for (int mu = 0; mu < 4; ++mu)
        s.x[mu] = 2.0 * unit(rng) - 1.0;
    double scale = std::exp(2.0 * unit(rng) - 1.0);
    s.k = scale * s.k;
    s.chi = (1.0 / scale) * s.chi;
    if (!opts.cm_gauge)
        s.chi = s.chi + ((unit(rng) - 0.5) / scale) * s.k;
    double speed = opts.max_beta * unit(rng);
    Vec3 dir = random_unit_vector(rng);
    return boost(s, {speed * dir[0], speed * dir[1], speed * dir[2]});
}

}  // namespace rotator

#pragma once

// Centre-of-momentum gauge equations of motion, initial states on the
// constraint surface, and the analytic solutions used as oracles.

#include <cmath>

#include "rotator/gauge.hpp"
#include "rotator/hamiltonian.hpp"

namespace rotator {

//! Unit spacelike n = (pp k - pk p) / (pk sqrt(pp)), orthogonal to p.
inline Vec4 rotation_normal(State const& s)
{
    double pp = dot(s.p, s.p), pk = dot(s.p, s.k);
    if (!(pp > 0.0) || pk == 0.0)
        throw DegenerateError("rotation_normal: need pp > 0 and pk != 0");
    return (1.0 / (pk * std::sqrt(pp))) * (pp * s.k - pk * s.p);
}

/*!
 * Phenomenological rotator in the CM gauge:
 *   xdot   = p/sqrt(pp) + rho omega n
 *   pdot   = 0
 *   kdot   = omega (p.chi k - pk chi) / sqrt(-chi.chi pp)
 *   chidot = omega / (pk sqrt(-chi.chi pp)) [chi.chi pk p + ((p.chi)^2 - pp chi.chi) k - pk p.chi chi]
 */
inline State eom_phenom(RotatorSpec const& spec, State const& s)
{
    if (spec.is_fundamental())
        throw ClassificationError("eom_phenom needs a phenomenological rotator");
    CasimirPair c{casimir_mass(spec, s), casimir_spin(spec, s)};
    double omega = angular_velocity(spec, c);
    double rho = curvature_radius_casimir(spec, c);
    double pp = dot(s.p, s.p), pk = dot(s.p, s.k), pc = dot(s.p, s.chi), cc = dot(s.chi, s.chi);
    double root = std::sqrt(-cc * pp);
    if (!(root > 0.0))
        throw DegenerateError("eom_phenom: chi.chi must be negative");
    State rate;
    rate.x = (1.0 / std::sqrt(pp)) * s.p + (rho * omega) * rotation_normal(s);
    rate.k = (omega / root) * (pc * s.k - pk * s.chi);
    rate.chi = (omega / (pk * root)) * ((cc * pk) * s.p + (pc * pc - pp * cc) * s.k - (pk * pc) * s.chi);
    return rate;
}

/*!
 * Fundamental rotator in the CM gauge at frequency omega~:
 *   xdot   = p/m + (l/2) omega~ (m k/pk - p/m)
 *   kdot   = omega~ 2 pk (p.chi k - pk chi) / (m^3 l)
 *   chidot = (m^2 l omega~ / (2 pk)) (m k/pk - p/m + 4 pk p.chi (p.chi k - pk chi)/(m^5 l^2))
 */
inline State eom_fund(RotatorSpec const& spec, State const& s, double omega_tilde)
{
    if (!spec.is_fundamental())
        throw ClassificationError("eom_fund needs a fundamental rotator");
    gauge_rapidity(spec, omega_tilde);
    double m = spec.m(), l = spec.l();
    double pk = dot(s.p, s.k), pc = dot(s.p, s.chi);
    if (pk == 0.0)
        throw DegenerateError("eom_fund: pk = 0");
    Vec4 tilt = (m / pk) * s.k - (1.0 / m) * s.p;
    Vec4 turn = pc * s.k - pk * s.chi;
    State rate;
    rate.x = (1.0 / m) * s.p + (0.5 * l * omega_tilde) * tilt;
    rate.k = (omega_tilde * 2.0 * pk / (m * m * m * l)) * turn;
    rate.chi = (m * m * l * omega_tilde / (2.0 * pk))
               * (tilt + (4.0 * pk * pc / (std::pow(m, 5) * l * l)) * turn);
    return rate;
}

inline State eom_fund(RotatorSpec const& spec, State const& s, GaugeProfile const& profile, double t)
{
    return eom_fund(spec, s, profile.omega(t));
}

/*!
 * State at rest in the CM frame with k = (1, n), n the unit spatial axis, and
 * chi spatial, orthogonal to n, rotated by `phase` about n. For phenomenological
 * rotators the Casimirs follow from Q; fundamental ones ignore Q.
 */
inline State build_initial_state(RotatorSpec const& spec, double q, Vec3 axis, double phase = 0.0)
{
    CasimirPair c{1.0, 1.0};
    if (!spec.is_fundamental())
    {
        auto range = spec.q_range();
        if (!(q >= range.lo && q <= range.hi))
            throw DomainError("build_initial_state: Q = " + std::to_string(q) + " outside ["
                              + std::to_string(range.lo) + ", " + std::to_string(range.hi) + "]");
        eval_family(spec, q);
        c = casimirs_from_Q(spec, q);
    }
    if (c.c_j == 0.0)
        throw DegenerateError("build_initial_state: zero spin, chi.chi must be strictly negative");

    double len = std::hypot(axis[0], axis[1], axis[2]);
    if (!(len > 0.0) || !std::isfinite(len))
        throw DomainError("build_initial_state: spatial axis must be a nonzero finite vector");
    Vec3 n{axis[0] / len, axis[1] / len, axis[2] / len};
    auto cross = [](Vec3 const& a, Vec3 const& b) {
        return Vec3{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
    };
    Vec3 e1 = cross({0.0, 0.0, 1.0}, n);
    if (std::hypot(e1[0], e1[1], e1[2]) < 1e-8)
        e1 = cross({1.0, 0.0, 0.0}, n);
    double e1_len = std::hypot(e1[0], e1[1], e1[2]);
    for (double& v : e1)
        v /= e1_len;
    Vec3 e2 = cross(n, e1);

    double m = spec.m(), l = spec.l();
    double mass = m * std::sqrt(c.c_m);
    double chi_len = std::sqrt(m * m * m * m * l * l * c.c_j / (4.0 * mass * mass));
    double cs = std::cos(phase), sn = std::sin(phase);
    State s;
    s.p = {mass, 0.0, 0.0, 0.0};
    s.k = {1.0, n[0], n[1], n[2]};
    s.chi = {0.0, chi_len * (cs * e1[0] + sn * e2[0]), chi_len * (cs * e1[1] + sn * e2[1]),
             chi_len * (cs * e1[2] + sn * e2[2])};
    return s;
}

namespace detail {

//! Rotates (n, c-hat) by angle theta and assembles the state at time t.
inline State rotate_cm_frame(State const& s0, double t, double theta, double drift_norm, double radius)
{
    double pp = dot(s0.p, s0.p), pk = dot(s0.p, s0.k), pc = dot(s0.p, s0.chi);
    double scale = std::sqrt(pp) * std::max(component_norm(s0.chi), 1e-300);
    if (std::abs(pc) > 1e-12 * scale)
        throw DomainError("closed form requires the CM gauge (p.chi = 0)");
    double chi_len = std::sqrt(-dot(s0.chi, s0.chi));
    if (!(chi_len > 0.0))
        throw DegenerateError("closed form requires nonzero spin");
    Vec4 n0 = rotation_normal(s0);
    Vec4 c0 = (1.0 / chi_len) * s0.chi;
    double cs = std::cos(theta), sn = std::sin(theta);
    Vec4 n = cs * n0 - sn * c0;
    Vec4 c = cs * c0 + sn * n0;
    State s;
    s.p = s0.p;
    s.x = s0.x + (t / drift_norm) * s0.p + radius * (sn * n0 - (1.0 - cs) * c0);
    s.k = (pk / pp) * s0.p + (pk / std::sqrt(pp)) * n;
    s.chi = chi_len * c;
    return s;
}

}  // namespace detail

//! Uniform circle of radius rho at frequency omega plus inertial drift.
inline State closed_form_phenom(RotatorSpec const& spec, State const& s0, double t)
{
    if (spec.is_fundamental())
        throw ClassificationError("closed_form_phenom needs a phenomenological rotator");
    CasimirPair c{casimir_mass(spec, s0), casimir_spin(spec, s0)};
    double omega = angular_velocity(spec, c);
    double rho = curvature_radius_casimir(spec, c);
    return detail::rotate_cm_frame(s0, t, omega * t, std::sqrt(dot(s0.p, s0.p)), rho);
}

//! Rotation by the accumulated phase of the profile on a circle of radius l/2.
inline State closed_form_fund(RotatorSpec const& spec, State const& s0, GaugeProfile const& profile,
                              double t)
{
    if (!spec.is_fundamental())
        throw ClassificationError("closed_form_fund needs a fundamental rotator");
    return detail::rotate_cm_frame(s0, t, profile.phase(t), spec.m(), 0.5 * spec.l());
}

}  // namespace rotator

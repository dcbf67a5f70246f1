#pragma once

// Centre-of-momentum gauge Hamiltonians and the total (first-class)
// Hamiltonians with frozen multipliers. All are generic phase functions.

#include <cmath>

#include "rotator/constraints.hpp"
#include "rotator/gauge.hpp"

namespace rotator {

/*!
 * Phenomenological CM-gauge Hamiltonian
 *   H = (m/2) f' sqrt(f) / (f - C_J f')
 *       [ (C_M - f)/f' + 4((p.chi)^2 - pp chi.chi) kk/(m^4 l^2) - 8 pk p.chi k.chi/(m^4 l^2) ]
 * with f, f' evaluated at C_J of the state.
 */
template <class T>
T hamiltonian_cm(RotatorSpec const& spec, PhaseState<T> const& s)
{
    using std::sqrt;
    auto const& rel = spec.mass_spin();
    double m = spec.m();
    double m4l2 = m * m * m * m * spec.l() * spec.l();
    T cm = casimir_mass(spec, s);
    T cj = casimir_spin(spec, s);
    T f = rel.f(cj);
    T df = rel.df(cj);
    T pp = dot(s.p, s.p), pk = dot(s.p, s.k), pc = dot(s.p, s.chi);
    T cc = dot(s.chi, s.chi), kk = dot(s.k, s.k), kc = dot(s.k, s.chi);
    T prefactor = (0.5 * m) * df * sqrt(f) / (f - cj * df);
    T body = (cm - f) / df + (4.0 / m4l2) * (pc * pc - pp * cc) * kk - (8.0 / m4l2) * pk * pc * kc;
    return prefactor * body;
}

/*!
 * Fundamental CM-gauge Hamiltonian
 *   H = (m/2)(pp/m^2 - 1) - (m l/4) omega~ [ pp/m^2 + 4 (pk)^2 chi.chi/(m^4 l^2)
 *       + 4((p.chi)^2 - pp chi.chi) kk/(m^4 l^2) - 8 pk p.chi k.chi/(m^4 l^2) ]
 */
template <class T>
T hamiltonian_cm_fund(RotatorSpec const& spec, PhaseState<T> const& s, double omega_tilde)
{
    double m = spec.m(), l = spec.l();
    double m2 = m * m, m4l2 = m2 * m2 * l * l;
    T pp = dot(s.p, s.p), pk = dot(s.p, s.k), pc = dot(s.p, s.chi);
    T cc = dot(s.chi, s.chi), kk = dot(s.k, s.k), kc = dot(s.k, s.chi);
    T body = pp / m2 + (4.0 / m4l2) * pk * pk * cc + (4.0 / m4l2) * (pc * pc - pp * cc) * kk
             - (8.0 / m4l2) * pk * pc * kc;
    return (0.5 * m) * (pp / m2 - 1.0) - (0.25 * m * l * omega_tilde) * body;
}

//! H_T = u1 kk + u2 k.chi + u3 F_G with the multipliers held fixed.
template <class T>
T total_hamiltonian_phenom(RotatorSpec const& spec, PhaseState<T> const& s,
                           GaugeCoefficients const& u)
{
    return u.u[0] * dot(s.k, s.k) + u.u[1] * dot(s.k, s.chi)
           + u.u[2] * mass_spin_constraint(spec, s);
}

/*!
 * H~_T = u1 kk + u2 k.chi + u3 (C_J - 1) + ((1 - u4)/u4) u3 (C_M - 1).
 * At u4 = 0 the last coefficient takes its CM-gauge limit m/2.
 */
template <class T>
T total_hamiltonian_fund(RotatorSpec const& spec, PhaseState<T> const& s,
                         GaugeCoefficients const& u)
{
    double u4 = u.u[3];
    double c4 = u4 != 0.0 ? (1.0 - u4) / u4 * u.u[2] : 0.5 * spec.m();
    return u.u[0] * dot(s.k, s.k) + u.u[1] * dot(s.k, s.chi)
           + u.u[2] * (casimir_spin(spec, s) - 1.0) + c4 * (casimir_mass(spec, s) - 1.0);
}

}  // namespace rotator

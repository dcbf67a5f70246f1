#pragma once

// Canonical Poisson brackets on the 16-dimensional phase space.
//
// Elementary brackets: {x^mu, p^nu} = {k^mu, chi^nu} = eta^{mu nu}, so
//   {f, g} = sum_mu eta^{mu mu} (df/dq^mu dg/dP^mu - df/dP^mu dg/dq^mu)
// over the pairs (q, P) = (x, p), (k, chi). Phase functions are generic
// callables `f(PhaseState<T>) -> T`; gradients use forward-mode duals.

#include <array>
#include <cmath>

#include "rotator/dual.hpp"
#include "rotator/errors.hpp"
#include "rotator/phase_state.hpp"

namespace rotator {

//! Overall sign of the elementary brackets. The three displayed
//! phenomenological bracket identities hold with +1.
inline constexpr double bracket_sign = 1.0;

enum class BracketMode
{
    dual,
    finite_difference,
};

template <class T>
using PhaseGradient = std::array<T, 16>;

//! d f / d s^i for all 16 coordinates, by forward-mode differentiation.
template <class F, class T>
PhaseGradient<T> phase_gradient(F const& f, PhaseState<T> const& s)
{
    using D = Dual<T>;
    PhaseState<D> seeded;
    for (int i = 0; i < 16; ++i)
        seeded[i] = D(s[i], T(0.0));
    PhaseGradient<T> grad;
    for (int i = 0; i < 16; ++i)
    {
        seeded[i].du = T(1.0);
        D v = f(seeded);
        seeded[i].du = T(0.0);
        grad[i] = v.du;
        if (!std::isfinite(value_of(grad[i])))
            throw NumericError("phase_gradient: non-finite derivative in component "
                               + std::to_string(i));
    }
    return grad;
}

//! Central differences with step rel_step * max(1, |s^i|).
template <class F>
PhaseGradient<double> phase_gradient_fd(F const& f, State const& s, double rel_step = 1e-6)
{
    PhaseGradient<double> grad;
    State probe = s;
    for (int i = 0; i < 16; ++i)
    {
        double h = rel_step * std::max(1.0, std::abs(s[i]));
        probe[i] = s[i] + h;
        double up = f(probe);
        probe[i] = s[i] - h;
        double down = f(probe);
        probe[i] = s[i];
        grad[i] = (up - down) / (2.0 * h);
        if (!std::isfinite(grad[i]))
            throw NumericError("phase_gradient_fd: non-finite derivative in component "
                               + std::to_string(i));
    }
    return grad;
}

template <class T>
T bracket_from_gradients(PhaseGradient<T> const& df, PhaseGradient<T> const& dg)
{
    T sum(0.0);
    for (int pair = 0; pair < 2; ++pair)
    {
        int q0 = pair == 0 ? 0 : 8;   // x or k
        int p0 = q0 + 4;              // p or chi
        for (int mu = 0; mu < 4; ++mu)
        {
            double eta = metric_sign(mu);
            sum += eta * (df[q0 + mu] * dg[p0 + mu] - df[p0 + mu] * dg[q0 + mu]);
        }
    }
    return bracket_sign * sum;
}

//! {f, g} at s. Nestable: with T = Dual<double> the result is differentiable.
template <class F, class G, class T>
T poisson_bracket(F const& f, G const& g, PhaseState<T> const& s)
{
    return bracket_from_gradients(phase_gradient(f, s), phase_gradient(g, s));
}

template <class F, class G>
double poisson_bracket(F const& f, G const& g, State const& s, BracketMode mode)
{
    if (mode == BracketMode::dual)
        return poisson_bracket(f, g, s);
    return bracket_from_gradients(phase_gradient_fd(f, s), phase_gradient_fd(g, s));
}

/*!
 * Hamiltonian vector field: ds^i/dt = {s^i, H} for every coordinate.
 *   xdot = eta dH/dp,  pdot = -eta dH/dx,  kdot = eta dH/dchi,  chidot = -eta dH/dk
 */
template <class H>
State hamiltonian_flow(H const& hamiltonian, State const& s)
{
    auto grad = phase_gradient(hamiltonian, s);
    State rate;
    for (int mu = 0; mu < 4; ++mu)
    {
        double eta = bracket_sign * metric_sign(mu);
        rate.x[mu] = eta * grad[4 + mu];
        rate.p[mu] = -eta * grad[mu];
        rate.k[mu] = eta * grad[12 + mu];
        rate.chi[mu] = -eta * grad[8 + mu];
    }
    return rate;
}

}  // namespace rotator

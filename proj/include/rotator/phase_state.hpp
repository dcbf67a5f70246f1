#pragma once

#include <array>
#include <cmath>

#include "rotator/minkowski.hpp"

namespace rotator {

/*!
 * A point (x, p, k, chi) of the 16-dimensional phase space. Conjugate
 * pairs are (x, p) and (k, chi). Off-surface states are legal.
 */
template <class T = double>
struct PhaseState
{
    static constexpr int dimension = 16;

    FourVector<T> x, p, k, chi;

    constexpr T& operator[](int i)
    {
        switch (i / 4)
        {
            case 0: return x[i % 4];
            case 1: return p[i % 4];
            case 2: return k[i % 4];
            default: return chi[i % 4];
        }
    }
    constexpr T const& operator[](int i) const { return const_cast<PhaseState&>(*this)[i]; }

    friend constexpr bool operator==(PhaseState const&, PhaseState const&) = default;
};

using State = PhaseState<double>;

template <class T>
PhaseState<T> lift(State const& s)
{
    return {lift<T>(s.x), lift<T>(s.p), lift<T>(s.k), lift<T>(s.chi)};
}

template <class T>
State values_of(PhaseState<T> const& s)
{
    return {values_of(s.x), values_of(s.p), values_of(s.k), values_of(s.chi)};
}

//! a + h b, componentwise (used by the integrators).
inline State axpy(State const& a, double h, State const& b)
{
    State r;
    for (int i = 0; i < State::dimension; ++i)
        r[i] = a[i] + h * b[i];
    return r;
}

inline bool all_finite(State const& s)
{
    for (int i = 0; i < State::dimension; ++i)
        if (!std::isfinite(s[i]))
            return false;
    return true;
}

}  // namespace rotator

#pragma once

// Minkowski four-vectors, signature (+,-,-,-), natural units.
// Components are always contravariant; the metric enters only through dot().

#include <array>
#include <cmath>
#include <ostream>

#include "rotator/dual.hpp"
#include "rotator/errors.hpp"

namespace rotator {

template <class T = double>
struct FourVector
{
    T t{}, x{}, y{}, z{};

    constexpr T& operator[](int i)
    {
        switch (i)
        {
            case 0: return t;
            case 1: return x;
            case 2: return y;
            default: return z;
        }
    }
    constexpr T const& operator[](int i) const
    {
        return const_cast<FourVector&>(*this)[i];
    }

    constexpr FourVector& operator+=(FourVector const& o)
    {
        t += o.t;
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr FourVector& operator-=(FourVector const& o)
    {
        t -= o.t;
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }

    friend constexpr bool operator==(FourVector const&, FourVector const&) = default;
};

using Vec4 = FourVector<double>;
using Vec3 = std::array<double, 3>;

//! Metric signature entry eta^{mu mu}.
constexpr double metric_sign(int mu)
{
    return mu == 0 ? 1.0 : -1.0;
}

template <class T>
constexpr FourVector<T> operator+(FourVector<T> a, FourVector<T> const& b)
{
    return a += b;
}
template <class T>
constexpr FourVector<T> operator-(FourVector<T> a, FourVector<T> const& b)
{
    return a -= b;
}
template <class T>
constexpr FourVector<T> operator-(FourVector<T> const& a)
{
    return {-a.t, -a.x, -a.y, -a.z};
}
template <class T>
constexpr FourVector<T> operator*(T const& s, FourVector<T> const& a)
{
    return {s * a.t, s * a.x, s * a.y, s * a.z};
}
template <class T>
constexpr FourVector<T> operator*(FourVector<T> const& a, T const& s)
{
    return s * a;
}
template <class T, Arithmetic S>
    requires(!std::is_same_v<S, T>)
constexpr FourVector<T> operator*(S s, FourVector<T> const& a)
{
    return {s * a.t, s * a.x, s * a.y, s * a.z};
}
template <class T, Arithmetic S>
    requires(!std::is_same_v<S, T>)
constexpr FourVector<T> operator*(FourVector<T> const& a, S s)
{
    return s * a;
}
template <class T, class S>
constexpr FourVector<T> operator/(FourVector<T> const& a, S const& s)
{
    return {a.t / s, a.x / s, a.y / s, a.z / s};
}

template <class T>
std::ostream& operator<<(std::ostream& os, FourVector<T> const& v)
{
    return os << '(' << value_of(v.t) << ", " << value_of(v.x) << ", "
              << value_of(v.y) << ", " << value_of(v.z) << ')';
}

//! Lift a plain vector into another scalar type (e.g. a dual number).
template <class T>
constexpr FourVector<T> lift(Vec4 const& v)
{
    return {T(v.t), T(v.x), T(v.y), T(v.z)};
}

template <class T>
constexpr Vec4 values_of(FourVector<T> const& v)
{
    return {value_of(v.t), value_of(v.x), value_of(v.y), value_of(v.z)};
}

template <class T>
constexpr T dot(FourVector<T> const& a, FourVector<T> const& b)
{
    return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z;
}

//! Euclidean norm of the components; used only for residual scales.
inline double component_norm(Vec4 const& v)
{
    return std::sqrt(v.t * v.t + v.x * v.x + v.y * v.y + v.z * v.z);
}

inline Vec3 spatial(Vec4 const& v)
{
    return {v.x, v.y, v.z};
}

/*!
 * Part of y orthogonal to p: y - (yp/pp) p.
 */
template <class T>
FourVector<T> project_orthogonal(FourVector<T> const& y, FourVector<T> const& p)
{
    T pp = dot(p, p);
    if (value_of(pp) == 0.0)
        throw DegenerateError("project_orthogonal: pp = 0 (null projector)");
    return y - (dot(y, p) / pp) * p;
}

//! Gram determinant |aa ab; ba bb|.
template <class T>
T curvature_gram(FourVector<T> const& a, FourVector<T> const& b)
{
    T ab = dot(a, b);
    return dot(a, a) * dot(b, b) - ab * ab;
}

/*!
 * Square of the Pauli-Lubanski vector built from (p, k, chi):
 * WW = -det of the 3x3 matrix of mutual scalar products. On kk = 0,
 * k.chi = 0 this reduces to (pk)^2 chi.chi.
 */
template <class T>
T pauli_lubanski_sq(FourVector<T> const& p, FourVector<T> const& k,
                    FourVector<T> const& chi)
{
    T pp = dot(p, p), pc = dot(p, chi), pk = dot(p, k);
    T cc = dot(chi, chi), ck = dot(chi, k), kk = dot(k, k);
    T det = pp * (cc * kk - ck * ck) - pc * (pc * kk - ck * pk)
            + pk * (pc * ck - cc * pk);
    return -det;
}

/*!
 * Components of the trivector p^k^chi contracted with the Levi-Civita
 * symbol: W[mu] = det(e_mu, p, k, chi). Conserved whenever p and the spin
 * plane are.
 */
inline Vec4 spin_trivector(Vec4 const& p, Vec4 const& k, Vec4 const& chi)
{
    auto det3 = [](Vec3 const& a, Vec3 const& b, Vec3 const& c) {
        return a[0] * (b[1] * c[2] - b[2] * c[1])
               - a[1] * (b[0] * c[2] - b[2] * c[0])
               + a[2] * (b[0] * c[1] - b[1] * c[0]);
    };
    Vec4 w;
    for (int mu = 0; mu < 4; ++mu)
    {
        std::array<Vec3, 3> rows;
        for (int r = 0; r < 3; ++r)
        {
            Vec4 const& v = r == 0 ? p : (r == 1 ? k : chi);
            int c = 0;
            for (int nu = 0; nu < 4; ++nu)
                if (nu != mu)
                    rows[r][c++] = v[nu];
        }
        double sign = (mu % 2 == 0) ? 1.0 : -1.0;
        w[mu] = sign * det3(rows[0], rows[1], rows[2]);
    }
    return w;
}

//! Pure boost along x with velocity beta (test helper).
inline Vec4 boost_x(Vec4 const& v, double beta)
{
    double gamma = 1.0 / std::sqrt(1.0 - beta * beta);
    return {gamma * (v.t + beta * v.x), gamma * (v.x + beta * v.t), v.y, v.z};
}

}  // namespace rotator

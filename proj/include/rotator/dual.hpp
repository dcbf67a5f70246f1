#pragma once

// Forward-mode dual numbers. Dual<Dual<double>> gives exact second
// derivatives, which the Hessian and Jacobi-identity checks rely on.
//
// f(a + e a') = f(a) + e a' f'(a),  e^2 = 0

#include <cmath>
#include <type_traits>

namespace rotator {

template <class T>
struct Dual;

template <class T>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};
template <class T>
inline constexpr bool is_dual_v = is_dual<T>::value;

template <class S>
concept Arithmetic = std::is_arithmetic_v<S>;

template <class T>
struct Dual
{
    T re{};
    T du{};

    constexpr Dual() = default;
    constexpr Dual(T r, T d) : re(r), du(d) {}
    // Constants promote with a zero tangent.
    constexpr Dual(T r) : re(r), du(T{}) {}
    template <Arithmetic S>
        requires(!std::is_same_v<S, T>)
    constexpr Dual(S r) : re(T(r)), du(T{})
    {
    }

    constexpr Dual& operator+=(Dual const& o)
    {
        re += o.re;
        du += o.du;
        return *this;
    }
    constexpr Dual& operator-=(Dual const& o)
    {
        re -= o.re;
        du -= o.du;
        return *this;
    }
    constexpr Dual& operator*=(Dual const& o) { return *this = *this * o; }
    constexpr Dual& operator/=(Dual const& o) { return *this = *this / o; }
};

//! Strip all dual layers and return the plain value.
template <class T>
constexpr double value_of(T const& v)
{
    if constexpr (is_dual_v<T>)
        return value_of(v.re);
    else
        return static_cast<double>(v);
}

template <class T>
constexpr Dual<T> operator-(Dual<T> const& a)
{
    return {-a.re, -a.du};
}

template <class T>
constexpr Dual<T> operator+(Dual<T> const& a, Dual<T> const& b)
{
    return {a.re + b.re, a.du + b.du};
}
template <class T>
constexpr Dual<T> operator-(Dual<T> const& a, Dual<T> const& b)
{
    return {a.re - b.re, a.du - b.du};
}
template <class T>
constexpr Dual<T> operator*(Dual<T> const& a, Dual<T> const& b)
{
    return {a.re * b.re, a.re * b.du + a.du * b.re};
}
template <class T>
constexpr Dual<T> operator/(Dual<T> const& a, Dual<T> const& b)
{
    T inv = T(1.0) / b.re;
    return {a.re * inv, (a.du * b.re - a.re * b.du) * inv * inv};
}

template <class T, Arithmetic S>
constexpr Dual<T> operator+(Dual<T> const& a, S b)
{
    return {a.re + b, a.du};
}
template <class T, Arithmetic S>
constexpr Dual<T> operator+(S a, Dual<T> const& b)
{
    return {a + b.re, b.du};
}
template <class T, Arithmetic S>
constexpr Dual<T> operator-(Dual<T> const& a, S b)
{
    return {a.re - b, a.du};
}
template <class T, Arithmetic S>
constexpr Dual<T> operator-(S a, Dual<T> const& b)
{
    return {a - b.re, -b.du};
}
template <class T, Arithmetic S>
constexpr Dual<T> operator*(Dual<T> const& a, S b)
{
    return {a.re * b, a.du * b};
}
template <class T, Arithmetic S>
constexpr Dual<T> operator*(S a, Dual<T> const& b)
{
    return {a * b.re, a * b.du};
}
template <class T, Arithmetic S>
constexpr Dual<T> operator/(Dual<T> const& a, S b)
{
    return {a.re / b, a.du / b};
}
template <class T, Arithmetic S>
constexpr Dual<T> operator/(S a, Dual<T> const& b)
{
    return Dual<T>(T(a)) / b;
}

template <class T, Arithmetic S>
constexpr bool operator<(Dual<T> const& a, S b)
{
    return value_of(a) < b;
}
template <class T, Arithmetic S>
constexpr bool operator>(Dual<T> const& a, S b)
{
    return value_of(a) > b;
}

template <class T>
Dual<T> sqrt(Dual<T> const& a)
{
    using std::sqrt;
    T r = sqrt(a.re);
    return {r, a.du / (2.0 * r)};
}

template <class T>
Dual<T> abs(Dual<T> const& a)
{
    return value_of(a.re) < 0 ? -a : a;
}

template <class T>
bool isfinite(Dual<T> const& a)
{
    using std::isfinite;
    return isfinite(a.re) && isfinite(a.du);
}

//! Second-order Taylor jet: evaluates a scalar function given its value and
//! first two derivatives at value_of(x). Exact through second derivatives
//! for any nesting depth up to Dual<Dual<T>>.
template <class T>
T taylor2(T const& x, double f0, double f1, double f2)
{
    if constexpr (is_dual_v<T>)
    {
        T h = x - value_of(x);
        return f0 + f1 * h + (0.5 * f2) * h * h;
    }
    else
    {
        return f0;
    }
}

}  // namespace rotator

#pragma once

// Rotator family: parameters, Lagrangian, Lagrangian-level momenta and
// the Casimir invariants.

#include <cmath>
#include <memory>
#include <string>

#include "rotator/errors.hpp"
#include "rotator/family.hpp"
#include "rotator/mass_spin.hpp"
#include "rotator/minkowski.hpp"

namespace rotator {

enum class RotatorKind
{
    phenomenological,
    fundamental,
};

inline char const* to_string(RotatorKind k)
{
    return k == RotatorKind::fundamental ? "fundamental" : "phenomenological";
}

struct CasimirPair
{
    double c_m;  //!< pp / m^2
    double c_j;  //!< spin squared in units of m^4 l^2 / 4

    //! Q = 0 boundary: outside the rotator range, no spin.
    bool spin_zero() const { return c_j == 0.0; }
};

/*!
 * Immutable rotator parameters. Phenomenological families carry their
 * mass-spin relation, built once at construction.
 */
class RotatorSpec
{
  public:
    RotatorSpec(double m, double l, Family family, QRange range = {})
        : m_(m), l_(l), family_(std::move(family)), range_(range)
    {
        if (!(m > 0.0) || !std::isfinite(m))
            throw DomainError("rotator mass m must be positive and finite");
        if (!(l > 0.0) || !std::isfinite(l))
            throw DomainError("rotator length l must be positive and finite");
        if (!(range_.lo > 0.0) || !(range_.hi > range_.lo))
            throw DomainError("Q range must satisfy 0 < lo < hi");
        classify();
        truncate_range();
        if (kind_ == RotatorKind::fundamental)
        {
            auto v0 = family_(0.0);
            if (std::abs(v0.g - 1.0) > 1e-12 || std::abs(std::abs(v0.dg) - 1.0) > 1e-12)
                throw DomainError("linear family must be normalized to G = 1 +/- Q; absorb the scales into m and l");
        }
        else
        {
            relation_ = std::make_shared<MassSpinRelation const>(family_, range_);
        }
    }

    static RotatorSpec quadratic(double m = 1.0, double l = 1.0)
    {
        return RotatorSpec(m, l, Family::quadratic());
    }
    static RotatorSpec fundamental_plus(double m = 1.0, double l = 1.0)
    {
        return RotatorSpec(m, l, Family::fundamental_plus());
    }
    static RotatorSpec fundamental_minus(double m = 1.0, double l = 1.0)
    {
        return RotatorSpec(m, l, Family::fundamental_minus());
    }

    double m() const { return m_; }
    double l() const { return l_; }
    Family const& family() const { return family_; }
    RotatorKind kind() const { return kind_; }
    bool is_fundamental() const { return kind_ == RotatorKind::fundamental; }
    //! Admissible Q interval after truncation at the C_M > 0 boundary.
    QRange q_range() const { return range_; }
    //! Non-empty when classification or range handling had to guess.
    std::string const& warning() const { return warning_; }

    MassSpinRelation const& mass_spin() const
    {
        if (!relation_)
            throw ClassificationError("fundamental rotators have no mass-spin relation f(C_J)");
        return *relation_;
    }

  private:
    void classify()
    {
        if (family_.exactly_linear())
        {
            kind_ = RotatorKind::fundamental;
            return;
        }
        // Near-fundamental: G'' negligible against G'/Q everywhere on the range.
        bool negligible = true;
        constexpr int samples = 256;
        for (int i = 0; i < samples && negligible; ++i)
        {
            double q = range_.lo * std::pow(range_.hi / range_.lo, double(i) / (samples - 1));
            auto v = family_(q);
            if (std::abs(v.d2g) >= 1e-10 * std::abs(v.dg) / q)
                negligible = false;
        }
        if (negligible)
        {
            kind_ = RotatorKind::fundamental;
            warning_ = "G'' is negligible on the Q range; family classified as fundamental";
        }
        else
        {
            kind_ = RotatorKind::phenomenological;
        }
    }

    // Clip the range where C_M = G - Q G' stops being positive.
    void truncate_range()
    {
        auto valid = [this](double q) {
            auto v = family_(q);
            return v.g > 0.0 && v.g - q * v.dg > 0.0;
        };
        if (!valid(range_.lo))
            throw DomainError("G > Q G' fails at the lower end of the Q range");
        constexpr int samples = 2048;
        double prev = range_.lo;
        for (int i = 1; i < samples; ++i)
        {
            double q = range_.lo * std::pow(range_.hi / range_.lo, double(i) / (samples - 1));
            if (!valid(q))
            {
                double a = prev, b = q;
                for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it)
                {
                    double c = 0.5 * (a + b);
                    (valid(c) ? a : b) = c;
                }
                double hi = a * (1.0 - 1e-3);
                warning_ = "Q range truncated to [" + std::to_string(range_.lo) + ", "
                           + std::to_string(hi) + "] where C_M > 0";
                range_.hi = hi;
                return;
            }
            prev = q;
        }
    }

    double m_;
    double l_;
    Family family_;
    QRange range_;
    RotatorKind kind_ = RotatorKind::phenomenological;
    std::string warning_;
    std::shared_ptr<MassSpinRelation const> relation_;
};

//! (G, G', G'') at Q with the family's admissibility checked.
inline FamilyValues eval_family(RotatorSpec const& spec, double q)
{
    if (!(q >= 0.0) || !std::isfinite(q))
        throw DomainError("eval_family: Q must be finite and non-negative");
    auto v = spec.family()(q);
    if (!(v.g > 0.0))
        throw DomainError("eval_family: G(Q) <= 0 at Q = " + std::to_string(q));
    if (!(v.g > q * v.dg))
        throw DomainError("eval_family: G(Q) > Q G'(Q) violated at Q = " + std::to_string(q));
    return v;
}

//! Q = sqrt(-l^2 kdot.kdot / (k.xdot)^2), generic over the scalar type.
template <class T>
T rotation_parameter(double l, FourVector<T> const& xdot, FourVector<T> const& k,
                     FourVector<T> const& kdot)
{
    using std::sqrt;
    T kx = dot(k, xdot);
    return sqrt(-(l * l) * dot(kdot, kdot) / (kx * kx));
}

/*!
 * Unchecked Lagrangian -m sqrt(xdot.xdot) sqrt(G(Q)); usable with dual
 * numbers for Hessians.
 */
template <class T>
T lagrangian_value(RotatorSpec const& spec, FourVector<T> const& xdot, FourVector<T> const& k,
                   FourVector<T> const& kdot)
{
    using std::sqrt;
    T q = rotation_parameter(spec.l(), xdot, k, kdot);
    return -spec.m() * sqrt(dot(xdot, xdot)) * sqrt(spec.family().g(q));
}

namespace detail {
inline void check_kinematics(Vec4 const& xdot, Vec4 const& k, Vec4 const& kdot, bool strict_spin)
{
    double scale = component_norm(k) * component_norm(k);
    if (!(dot(xdot, xdot) > 0.0))
        throw DomainError("xdot must be timelike (xdot.xdot > 0)");
    if (std::abs(dot(k, k)) > 1e-10 * scale)
        throw DomainError("k must be null (kk = 0)");
    if (dot(k, xdot) == 0.0)
        throw DomainError("k.xdot must be nonzero");
    double kk_dot = dot(kdot, kdot);
    double kd_scale = component_norm(kdot) * component_norm(kdot);
    if (kk_dot > 1e-12 * kd_scale)
        throw DomainError("kdot must be spacelike (kdot.kdot <= 0)");
    if (strict_spin && !(kk_dot < 0.0))
        throw DegenerateError("kdot.kdot = 0: degenerate velocity, momentum chi undefined");
}
}  // namespace detail

inline double lagrangian(RotatorSpec const& spec, Vec4 const& xdot, Vec4 const& k, Vec4 const& kdot)
{
    detail::check_kinematics(xdot, k, kdot, false);
    double kx = dot(k, xdot);
    double q = std::sqrt(std::max(0.0, -spec.l() * spec.l() * dot(kdot, kdot) / (kx * kx)));
    auto v = eval_family(spec, q);
    return -spec.m() * std::sqrt(dot(xdot, xdot)) * std::sqrt(v.g);
}

struct Momenta
{
    Vec4 p;
    Vec4 chi;
};

/*!
 * Canonical momenta (minus-sign convention p = -dL/dxdot):
 *   p   = m sqrt(G) xdot/|xdot| - (m/2) Q G'/sqrt(G) |xdot| k/(k.xdot)
 *   chi = (m/2) Q G'/sqrt(G) |xdot| kdot/(kdot.kdot)
 */
inline Momenta momenta_from_velocities(RotatorSpec const& spec, Vec4 const& xdot, Vec4 const& k,
                                       Vec4 const& kdot)
{
    detail::check_kinematics(xdot, k, kdot, true);
    double q = rotation_parameter(spec.l(), xdot, k, kdot);
    auto v = eval_family(spec, q);
    double speed = std::sqrt(dot(xdot, xdot));
    double coupling = 0.5 * spec.m() * q * v.dg / std::sqrt(v.g) * speed;
    Vec4 p = (spec.m() * std::sqrt(v.g) / speed) * xdot - (coupling / dot(k, xdot)) * k;
    Vec4 chi = (coupling / dot(kdot, kdot)) * kdot;
    return {p, chi};
}

//! C_M = pp/m^2, generic over the scalar type.
template <class T>
T casimir_mass(RotatorSpec const& spec, FourVector<T> const& p)
{
    return dot(p, p) / (spec.m() * spec.m());
}

//! C_J = chi.chi (pk)^2 / (-m^4 l^2 / 4), generic over the scalar type.
template <class T>
T casimir_spin(RotatorSpec const& spec, FourVector<T> const& p, FourVector<T> const& k,
               FourVector<T> const& chi)
{
    double m2 = spec.m() * spec.m();
    T pk = dot(p, k);
    return (-4.0 / (m2 * m2 * spec.l() * spec.l())) * dot(chi, chi) * pk * pk;
}

inline CasimirPair casimirs_from_momenta(RotatorSpec const& spec, Vec4 const& p, Vec4 const& k,
                                         Vec4 const& chi)
{
    if (dot(p, k) == 0.0)
        throw DegenerateError("casimirs_from_momenta: pk = 0");
    return {casimir_mass(spec, p), casimir_spin(spec, p, k, chi)};
}

//! C_M = G - Q G', C_J = G'^2.
inline CasimirPair casimirs_from_Q(RotatorSpec const& spec, double q)
{
    auto v = spec.family()(q);
    if (!(q >= 0.0))
        throw DomainError("casimirs_from_Q: Q must be non-negative");
    double c_m = v.g - q * v.dg;
    if (!(c_m > 0.0))
        throw DomainError("casimirs_from_Q: C_M <= 0 at Q = " + std::to_string(q));
    return {c_m, v.dg * v.dg};
}

//! Sign of the branch in +/- sqrt(C_J) = G'(Q).
inline double casimir_branch(RotatorSpec const& spec, double q)
{
    return spec.family()(q).dg >= 0.0 ? 1.0 : -1.0;
}

}  // namespace rotator

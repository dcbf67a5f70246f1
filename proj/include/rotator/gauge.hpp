#pragma once

// Gauge profiles for the fundamental rotator and the centre-of-momentum
// gauge multipliers of both branches.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rotator/constraints.hpp"
#include "rotator/errors.hpp"
#include "rotator/rotator_model.hpp"

namespace rotator {

/*!
 * Natural cubic spline through (t_i, v_i), held constant outside the
 * nodes. Integrates exactly.
 */
class CubicSpline
{
  public:
    CubicSpline(std::vector<double> t, std::vector<double> v) : t_(std::move(t)), v_(std::move(v))
    {
        if (t_.size() < 2 || t_.size() != v_.size())
            throw DomainError("spline: need at least two (t, value) nodes");
        for (std::size_t i = 1; i < t_.size(); ++i)
            if (!(t_[i] > t_[i - 1]))
                throw DomainError("spline: node times must be strictly increasing");
        std::size_t n = t_.size();
        m_.assign(n, 0.0);
        if (n > 2)
        {
            // Thomas algorithm for the natural-spline second derivatives.
            std::vector<double> c(n, 0.0), d(n, 0.0);
            for (std::size_t i = 1; i + 1 < n; ++i)
            {
                double h0 = t_[i] - t_[i - 1], h1 = t_[i + 1] - t_[i];
                double a = h0, b = 2.0 * (h0 + h1), cc = h1;
                double rhs = 6.0 * ((v_[i + 1] - v_[i]) / h1 - (v_[i] - v_[i - 1]) / h0);
                double denom = b - a * c[i - 1];
                c[i] = cc / denom;
                d[i] = (rhs - a * d[i - 1]) / denom;
            }
            for (std::size_t i = n - 2; i >= 1; --i)
                m_[i] = d[i] - c[i] * m_[i + 1];
        }
        cumulative_.assign(n, 0.0);
        for (std::size_t i = 0; i + 1 < n; ++i)
            cumulative_[i + 1] = cumulative_[i] + segment_integral(i, t_[i + 1]);
    }

    double operator()(double t) const
    {
        if (t <= t_.front())
            return v_.front();
        if (t >= t_.back())
            return v_.back();
        std::size_t i = segment(t);
        double h = t_[i + 1] - t_[i];
        double a = (t_[i + 1] - t) / h, b = (t - t_[i]) / h;
        return a * v_[i] + b * v_[i + 1]
               + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
    }

    //! Integral of the spline from t_0 to t (constant extension outside).
    double integral_from_start(double t) const
    {
        if (t <= t_.front())
            return (t - t_.front()) * v_.front();
        if (t >= t_.back())
            return cumulative_.back() + (t - t_.back()) * v_.back();
        std::size_t i = segment(t);
        return cumulative_[i] + segment_integral(i, t);
    }

    std::vector<double> const& times() const { return t_; }
    std::vector<double> const& values() const { return v_; }

  private:
    std::size_t segment(double t) const
    {
        auto it = std::upper_bound(t_.begin(), t_.end(), t);
        return std::min<std::size_t>(std::size_t(it - t_.begin()) - 1, t_.size() - 2);
    }

    double segment_integral(std::size_t i, double t) const
    {
        double h = t_[i + 1] - t_[i];
        // In terms of b = (t - t_i)/h, a = 1 - b.
        double b = (t - t_[i]) / h;
        double a = 1.0 - b;
        auto prim = [&](double aa, double bb) {
            double lin = h * (-0.5 * aa * aa * v_[i] + 0.5 * bb * bb * v_[i + 1]);
            double cub = h * h * h / 6.0
                         * (-(0.25 * aa * aa * aa * aa - 0.5 * aa * aa) * m_[i]
                            + (0.25 * bb * bb * bb * bb - 0.5 * bb * bb) * m_[i + 1]);
            return lin + cub;
        };
        return prim(a, b) - prim(1.0, 0.0);
    }

    std::vector<double> t_, v_, m_, cumulative_;
};

/*!
 * Frequency profile omega~(t) of a fundamental rotator: a deterministic
 * function of time only, with its accumulated phase theta(t) = int_0^t omega~.
 */
class GaugeProfile
{
  public:
    static GaugeProfile constant(double c)
    {
        GaugeProfile g;
        g.omega_ = [c](double) { return c; };
        g.phase_ = [c](double t) { return c * t; };
        g.description_ = "const:" + format(c);
        return g;
    }

    //! a + b sin(nu t)
    static GaugeProfile sinusoid(double a, double b, double nu)
    {
        if (nu == 0.0)
            return constant(a);
        GaugeProfile g;
        g.omega_ = [=](double t) { return a + b * std::sin(nu * t); };
        g.phase_ = [=](double t) { return a * t + (b / nu) * (1.0 - std::cos(nu * t)); };
        g.description_ = "sin:" + format(a) + "," + format(b) + "," + format(nu);
        return g;
    }

    static GaugeProfile spline(std::vector<double> t, std::vector<double> v)
    {
        auto s = std::make_shared<CubicSpline const>(t, v);
        GaugeProfile g;
        g.omega_ = [s](double tt) { return (*s)(tt); };
        double offset = s->integral_from_start(0.0);
        g.phase_ = [s, offset](double tt) { return s->integral_from_start(tt) - offset; };
        std::ostringstream os;
        os << "spline:";
        for (std::size_t i = 0; i < t.size(); ++i)
            os << (i ? "," : "") << format(t[i]) << ":" << format(v[i]);
        g.description_ = os.str();
        g.nodes_ = s;
        return g;
    }

    //! "const:c", "sin:a,b,nu" or "spline:t0:v0,t1:v1,...".
    static GaugeProfile parse(std::string_view text)
    {
        auto colon = text.find(':');
        if (colon == std::string_view::npos)
            throw DomainError("profile '" + std::string(text) + "' lacks a ':'");
        std::string kind(text.substr(0, colon));
        std::string body(text.substr(colon + 1));
        auto numbers = [&](std::string const& s, char sep) {
            std::vector<double> out;
            std::stringstream ss(s);
            std::string item;
            while (std::getline(ss, item, sep))
                out.push_back(parse_number(item));
            return out;
        };
        if (kind == "const")
            return constant(parse_number(body));
        if (kind == "sin")
        {
            auto v = numbers(body, ',');
            if (v.size() != 3)
                throw DomainError("sin profile expects a,b,nu");
            return sinusoid(v[0], v[1], v[2]);
        }
        if (kind == "spline")
        {
            std::vector<double> ts, vs;
            std::stringstream ss(body);
            std::string node;
            while (std::getline(ss, node, ','))
            {
                auto parts = numbers(node, ':');
                if (parts.size() != 2)
                    throw DomainError("spline node '" + node + "' must be t:value");
                ts.push_back(parts[0]);
                vs.push_back(parts[1]);
            }
            return spline(ts, vs);
        }
        throw DomainError("unknown profile kind '" + kind + "' (const, sin, spline)");
    }

    double omega(double t) const { return omega_(t); }
    double phase(double t) const { return phase_(t); }
    std::string const& description() const { return description_; }

  private:
    GaugeProfile() = default;

    static std::string format(double v)
    {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    }
    static double parse_number(std::string const& s)
    {
        std::size_t used = 0;
        double v = 0.0;
        try
        {
            v = std::stod(s, &used);
        }
        catch (std::exception const&)
        {
            used = 0;
        }
        if (used == 0 || used != s.size())
            throw DomainError("bad number '" + s + "' in profile");
        return v;
    }

    std::function<double(double)> omega_;
    std::function<double(double)> phase_;
    std::string description_;
    std::shared_ptr<CubicSpline const> nodes_;
};

struct GaugeCoefficients
{
    RotatorKind kind;
    //! u1..u3 (phenomenological, u[3] unused) or u~1..u~4 (fundamental).
    std::array<double, 4> u{};
    //! Angular velocity: omega (phenomenological) or omega~ (fundamental).
    double omega = 0.0;
};

/*!
 * omega = (2/l) C_M sqrt(C_J) F_{G,C_J} / (C_M F_{G,C_M} + C_J F_{G,C_J}),
 * with F_G = C_M - f(C_J).
 */
inline double angular_velocity(RotatorSpec const& spec, CasimirPair c)
{
    auto rel = spec.mass_spin()(c.c_j);
    double f_cm = 1.0, f_cj = -rel.df;
    double denom = c.c_m * f_cm + c.c_j * f_cj;
    if (std::abs(denom) < 1e-12)
        throw GaugeError("angular_velocity: C_M F_{G,C_M} + C_J F_{G,C_J} vanishes; gauge infeasible");
    return 2.0 / spec.l() * c.c_m * std::sqrt(c.c_j) * f_cj / denom;
}

//! Radius of curvature (l/2) sqrt(C_J) / C_M.
inline double curvature_radius_casimir(RotatorSpec const& spec, CasimirPair c)
{
    return 0.5 * spec.l() * std::sqrt(c.c_j) / c.c_m;
}

//! CM-gauge multipliers (u1, u2, u3) of the phenomenological rotator.
inline GaugeCoefficients gauge_coefficients_phenom(RotatorSpec const& spec, State const& s)
{
    if (spec.is_fundamental())
        throw ClassificationError("gauge_coefficients_phenom needs a phenomenological rotator");
    CasimirPair c{casimir_mass(spec, s), casimir_spin(spec, s)};
    double omega = angular_velocity(spec, c);
    double f_cj = -spec.mass_spin()(c.c_j).df;
    double pp = dot(s.p, s.p), pk = dot(s.p, s.k), pc = dot(s.p, s.chi), cc = dot(s.chi, s.chi);
    double root = std::sqrt(-cc * pp);
    if (!(root > 0.0) || pk == 0.0)
        throw DegenerateError("gauge_coefficients_phenom: zero spin or pk = 0");
    double m4l2 = std::pow(spec.m(), 4) * spec.l() * spec.l();
    GaugeCoefficients g{RotatorKind::phenomenological, {}, omega};
    g.u[0] = -0.5 * (pc * pc - pp * cc) / (pk * root) * omega;
    g.u[1] = pc / root * omega;
    g.u[2] = m4l2 / (8.0 * pk * root) * omega / f_cj;
    return g;
}

//! u~4 = l omega~ / 2, which must stay subluminal.
inline double gauge_rapidity(RotatorSpec const& spec, double omega_tilde)
{
    double u4 = 0.5 * spec.l() * omega_tilde;
    if (!(std::abs(u4) < 1.0))
        throw GaugeError("gauge profile is superluminal: |l omega~/2| = " + std::to_string(std::abs(u4))
                         + " >= 1");
    return u4;
}

//! CM-gauge multipliers (u~1..u~4) of the fundamental rotator at time t.
inline GaugeCoefficients gauge_coefficients_fund(RotatorSpec const& spec, State const& s,
                                                 GaugeProfile const& profile, double t)
{
    if (!spec.is_fundamental())
        throw ClassificationError("gauge_coefficients_fund needs a fundamental rotator");
    double omega_tilde = profile.omega(t);
    double u4 = gauge_rapidity(spec, omega_tilde);
    double m = spec.m(), l = spec.l();
    double pk = dot(s.p, s.k), pc = dot(s.p, s.chi);
    if (pk == 0.0)
        throw DegenerateError("gauge_coefficients_fund: pk = 0");
    GaugeCoefficients g{RotatorKind::fundamental, {}, omega_tilde};
    double m3 = m * m * m;
    g.u[0] = -m3 / (2.0 * pk * pk) * (1.0 + 4.0 * pk * pk * pc * pc / (m3 * m3 * l * l)) * u4;
    g.u[1] = 4.0 * pk * pc / (m3 * l * l) * u4;
    g.u[2] = 0.5 * m * u4;
    g.u[3] = u4;
    return g;
}

}  // namespace rotator

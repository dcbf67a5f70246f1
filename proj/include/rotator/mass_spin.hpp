#pragma once

// Mass-spin relation C_M = f(C_J) of a phenomenological rotator.
//
// Along the family, C_M(Q) = G - Q G' and C_J(Q) = G'^2, so
//   df/dC_J = -Q / (2 G'),   dQ/dC_J = 1 / (2 G' G'').
// The relation is tabulated on a log-spaced Q grid and interpolated with
// cubic Hermite segments; evaluation then polishes Q by Newton iteration on
// G'(Q)^2 = C_J so f, f', f'' are exact to round-off between the nodes.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rotator/dual.hpp"
#include "rotator/errors.hpp"
#include "rotator/family.hpp"

namespace rotator {

struct MassSpinPoint
{
    double f;    //!< C_M
    double df;   //!< dC_M/dC_J
    double d2f;  //!< d^2 C_M / dC_J^2
    double q;    //!< preimage Q
};

class MassSpinRelation
{
  public:
    static constexpr std::size_t default_nodes = 512;

    MassSpinRelation(Family family, QRange range, std::size_t nodes = default_nodes)
        : family_(std::move(family)), range_(range)
    {
        if (!(range.lo > 0.0) || !(range.hi > range.lo))
            throw DomainError("derive_f: Q range must satisfy 0 < lo < hi");
        if (nodes < 4)
            throw DomainError("derive_f: need at least 4 grid nodes");

        q_.resize(nodes);
        cj_.resize(nodes);
        cm_.resize(nodes);
        slope_f_.resize(nodes);
        slope_q_.resize(nodes);
        double log_lo = std::log(range.lo), log_hi = std::log(range.hi);
        for (std::size_t i = 0; i < nodes; ++i)
        {
            double q = std::exp(log_lo + (log_hi - log_lo) * double(i) / double(nodes - 1));
            if (i == nodes - 1)
                q = range.hi;
            auto v = family_(q);
            if (!(v.g > 0.0) || !(v.g - q * v.dg > 0.0))
                throw DomainError("derive_f: G > Q G' > 0 violated at Q = " + std::to_string(q));
            if (v.dg == 0.0 || v.d2g == 0.0)
                throw DomainError("derive_f: G' or G'' vanishes at Q = " + std::to_string(q)
                                  + "; C_J(Q) cannot be inverted");
            q_[i] = q;
            cj_[i] = v.dg * v.dg;
            cm_[i] = v.g - q * v.dg;
            slope_f_[i] = -q / (2.0 * v.dg);
            slope_q_[i] = 1.0 / (2.0 * v.dg * v.d2g);
        }

        bool increasing = cj_[1] > cj_[0];
        for (std::size_t i = 1; i < nodes; ++i)
        {
            bool up = cj_[i] > cj_[i - 1];
            if (up != increasing || cj_[i] == cj_[i - 1])
                throw DomainError("derive_f: C_J(Q) is not monotone on the Q range near Q = "
                                  + std::to_string(q_[i]));
        }
        if (!increasing)
        {
            for (auto* v : {&q_, &cj_, &cm_, &slope_f_, &slope_q_})
                std::reverse(v->begin(), v->end());
        }

        for (std::size_t i = 0; i < nodes; ++i)
        {
            double lhs = q_[i] * q_[i];
            double rhs = 4.0 * cj_[i] * slope_f_[i] * slope_f_[i];
            if (std::abs(lhs - rhs) > 1e-6 * lhs)
                throw NumericError("derive_f: Q^2 = 4 C_J f'^2 fails at Q = "
                                   + std::to_string(q_[i]));
        }
    }

    Family const& family() const { return family_; }
    QRange range() const { return range_; }
    double cj_min() const { return cj_.front(); }
    double cj_max() const { return cj_.back(); }
    std::span<double const> q_nodes() const { return q_; }
    std::span<double const> cj_nodes() const { return cj_; }
    std::span<double const> cm_nodes() const { return cm_; }

    //! f and f' from the Hermite interpolant alone (no Newton polish).
    std::pair<double, double> interpolate(double cj) const
    {
        std::size_t i = locate(cj);
        return hermite(cj_[i], cj_[i + 1], cm_[i], cm_[i + 1], slope_f_[i], slope_f_[i + 1], cj);
    }

    MassSpinPoint operator()(double cj) const
    {
        std::size_t i = locate(cj);
        double q = hermite(cj_[i], cj_[i + 1], q_[i], q_[i + 1], slope_q_[i], slope_q_[i + 1], cj).first;
        double q_a = std::min(q_[i], q_[i + 1]), q_b = std::max(q_[i], q_[i + 1]);
        // Allow the polish to leave the bracket slightly at the table ends.
        q_a *= (i == 0) ? 0.5 : 1.0;
        q_b *= (i + 2 == q_.size()) ? 2.0 : 1.0;
        FamilyValues v = family_(q);
        for (int iter = 0; iter < 20; ++iter)
        {
            double h = v.dg * v.dg - cj;
            double dh = 2.0 * v.dg * v.d2g;
            double step = h / dh;
            double next = std::clamp(q - step, q_a, q_b);
            bool done = std::abs(next - q) <= 1e-15 * std::abs(q);
            q = next;
            v = family_(q);
            if (done)
                break;
        }
        double f = v.g - q * v.dg;
        double df = -q / (2.0 * v.dg);
        double dq = 1.0 / (2.0 * v.dg * v.d2g);
        double d2f = (-1.0 / (2.0 * v.dg) + q * v.d2g / (2.0 * v.dg * v.dg)) * dq;
        return {f, df, d2f, q};
    }

    //! f at a (possibly dual) argument, exact through second derivatives.
    template <class T>
    T f(T const& cj) const
    {
        auto pt = (*this)(value_of(cj));
        return taylor2(cj, pt.f, pt.df, pt.d2f);
    }

    //! f' at a (possibly dual) argument; exact through first derivatives only.
    template <class T>
    T df(T const& cj) const
    {
        auto pt = (*this)(value_of(cj));
        return taylor2(cj, pt.df, pt.d2f, 0.0);
    }

  private:
    std::size_t locate(double cj) const
    {
        double span = cj_.back() - cj_.front();
        if (!(cj >= cj_.front() - 1e-9 * span) || !(cj <= cj_.back() + 1e-9 * span))
            throw DomainError("derive_f: C_J = " + std::to_string(cj) + " outside tabulated range ["
                              + std::to_string(cj_.front()) + ", " + std::to_string(cj_.back()) + "]");
        auto it = std::upper_bound(cj_.begin(), cj_.end(), cj);
        std::size_t i = it == cj_.begin() ? 0 : std::size_t(it - cj_.begin()) - 1;
        return std::min(i, cj_.size() - 2);
    }

    static std::pair<double, double> hermite(double x0, double x1, double y0, double y1,
                                             double m0, double m1, double x)
    {
        double h = x1 - x0;
        double s = (x - x0) / h;
        double s2 = s * s, s3 = s2 * s;
        double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
        double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
        double y = h00 * y0 + h10 * h * m0 + h01 * y1 + h11 * h * m1;
        double d00 = 6 * s2 - 6 * s, d10 = 3 * s2 - 4 * s + 1;
        double d01 = -6 * s2 + 6 * s, d11 = 3 * s2 - 2 * s;
        double dy = (d00 * y0 + d01 * y1) / h + d10 * m0 + d11 * m1;
        return {y, dy};
    }

    Family family_;
    QRange range_;
    std::vector<double> q_, cj_, cm_, slope_f_, slope_q_;
};

//! Builds the mass-spin relation for a phenomenological family.
inline MassSpinRelation derive_f(Family const& family, QRange range,
                                 std::size_t nodes = MassSpinRelation::default_nodes)
{
    return MassSpinRelation(family, range, nodes);
}

}  // namespace rotator

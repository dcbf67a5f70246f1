#pragma once

// The rotator family function G(Q) and its first two derivatives.

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rotator/dual.hpp"
#include "rotator/errors.hpp"

namespace rotator {

struct FamilyValues
{
    double g;
    double dg;
    double d2g;
};

//! Admissible interval of the rotation parameter Q.
struct QRange
{
    double lo = 1e-3;
    double hi = 10.0;
};

class Family
{
  public:
    using Curve = std::function<double(double)>;

    //! G(Q) = sum_i c_i Q^i; derivatives are exact.
    static Family polynomial(std::vector<double> coeffs, std::string name = {})
    {
        if (coeffs.empty())
            throw DomainError("polynomial family needs at least one coefficient");
        while (coeffs.size() > 1 && coeffs.back() == 0.0)
            coeffs.pop_back();
        Family f;
        if (name.empty())
        {
            std::ostringstream os;
            os.precision(17);
            os << "poly:";
            for (std::size_t i = 0; i < coeffs.size(); ++i)
                os << (i ? "," : "") << coeffs[i];
            name = os.str();
        }
        f.name_ = std::move(name);
        f.coeffs_ = coeffs;
        f.curves_ = [c = std::move(coeffs)](double q) {
            FamilyValues v{0.0, 0.0, 0.0};
            for (std::size_t i = c.size(); i-- > 0;)
            {
                v.d2g = v.d2g * q + 2.0 * v.dg;
                v.dg = v.dg * q + v.g;
                v.g = v.g * q + c[i];
            }
            return v;
        };
        return f;
    }

    static Family quadratic() { return polynomial({1.0, 0.0, 1.0}, "quadratic"); }
    static Family fundamental_plus() { return polynomial({1.0, 1.0}, "fundamental+"); }
    static Family fundamental_minus() { return polynomial({1.0, -1.0}, "fundamental-"); }

    //! User-supplied (G, G', G'') callables.
    static Family from_curves(std::string name, Curve g, Curve dg, Curve d2g)
    {
        if (!g || !dg || !d2g)
            throw DomainError("family curves must all be callable");
        Family f;
        f.name_ = std::move(name);
        f.curves_ = [g = std::move(g), dg = std::move(dg), d2g = std::move(d2g)](double q) {
            return FamilyValues{g(q), dg(q), d2g(q)};
        };
        return f;
    }

    //! "quadratic", "fundamental+", "fundamental-" or "poly:c0,c1,...".
    static Family parse(std::string_view text)
    {
        if (text == "quadratic")
            return quadratic();
        if (text == "fundamental+" || text == "fundamental")
            return fundamental_plus();
        if (text == "fundamental-")
            return fundamental_minus();
        if (text.starts_with("poly:"))
        {
            std::vector<double> coeffs;
            std::string body(text.substr(5));
            std::stringstream ss(body);
            std::string item;
            while (std::getline(ss, item, ','))
            {
                std::size_t used = 0;
                double v = 0.0;
                try
                {
                    v = std::stod(item, &used);
                }
                catch (std::exception const&)
                {
                    used = 0;
                }
                if (used == 0 || used != item.size())
                    throw DomainError("bad polynomial coefficient '" + item + "'");
                coeffs.push_back(v);
            }
            return polynomial(std::move(coeffs));
        }
        throw DomainError("unknown family '" + std::string(text)
                          + "' (expected quadratic, fundamental+, fundamental-, poly:c0,c1,...)");
    }

    FamilyValues operator()(double q) const { return curves_(q); }

    //! G at a (possibly dual) argument, exact through second derivatives.
    template <class T>
    T g(T const& q) const
    {
        auto v = curves_(value_of(q));
        return taylor2(q, v.g, v.dg, v.d2g);
    }

    std::string const& name() const { return name_; }
    std::optional<std::vector<double>> const& coefficients() const { return coeffs_; }

    //! True when G is a polynomial of degree <= 1 (G'' vanishes exactly).
    bool exactly_linear() const { return coeffs_ && coeffs_->size() <= 2; }

  private:
    Family() = default;

    std::string name_;
    std::optional<std::vector<double>> coeffs_;
    std::function<FamilyValues(double)> curves_;
};

}  // namespace rotator

#pragma once

// Primary constraints, first-class verification and the regularity
// determinant of the constraint gradients.
//
//   phenomenological: phi1 = kk, phi2 = chi.k, phi3 = F_G = C_M - f(C_J)
//   fundamental:      phi1 = kk, phi2 = chi.k, phi3 = C_J - 1, phi4 = C_M - 1

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "rotator/errors.hpp"
#include "rotator/phase_state.hpp"
#include "rotator/poisson.hpp"
#include "rotator/rotator_model.hpp"

namespace rotator {

template <class T>
T casimir_mass(RotatorSpec const& spec, PhaseState<T> const& s)
{
    return casimir_mass(spec, s.p);
}

template <class T>
T casimir_spin(RotatorSpec const& spec, PhaseState<T> const& s)
{
    return casimir_spin(spec, s.p, s.k, s.chi);
}

//! F_G(C_M, C_J) = C_M - f(C_J).
template <class T>
T mass_spin_constraint(RotatorSpec const& spec, PhaseState<T> const& s)
{
    return casimir_mass(spec, s) - spec.mass_spin().f(casimir_spin(spec, s));
}

inline int constraint_count(RotatorSpec const& spec)
{
    return spec.is_fundamental() ? 4 : 3;
}

//! Value of constraint `index` (0-based) at s.
template <class T>
T constraint_value(RotatorSpec const& spec, int index, PhaseState<T> const& s)
{
    switch (index)
    {
        case 0: return dot(s.k, s.k);
        case 1: return dot(s.chi, s.k);
        case 2:
            return spec.is_fundamental() ? casimir_spin(spec, s) - 1.0
                                         : mass_spin_constraint(spec, s);
        case 3:
            if (spec.is_fundamental())
                return casimir_mass(spec, s) - 1.0;
            [[fallthrough]];
        default: throw DomainError("constraint index out of range");
    }
}

//! Phase function object for constraint `index`.
inline auto constraint_function(RotatorSpec const& spec, int index)
{
    return [&spec, index](auto const& s) { return constraint_value(spec, index, s); };
}

inline std::string constraint_name(RotatorSpec const& spec, int index)
{
    static char const* const phen[] = {"kk", "chi.k", "F_G"};
    static char const* const fund[] = {"kk", "chi.k", "C_J-1", "C_M-1"};
    return spec.is_fundamental() ? fund[index] : phen[index];
}

struct ConstraintSet
{
    RotatorKind kind;
    std::vector<double> residuals;
    //! Dimensional scale of each residual (|k|^2, |chi||k|, 1 ...).
    std::vector<double> scales;

    double max_normalized() const
    {
        double worst = 0.0;
        for (std::size_t i = 0; i < residuals.size(); ++i)
            worst = std::max(worst, std::abs(residuals[i]) / scales[i]);
        return worst;
    }
};

inline std::vector<double> constraint_scales(RotatorSpec const& spec, State const& s)
{
    double nk = component_norm(s.k);
    double nc = component_norm(s.chi);
    std::vector<double> scales{nk * nk, std::max(nk * nc, 1e-300), 1.0};
    if (spec.is_fundamental())
        scales.push_back(1.0);
    if (scales[0] == 0.0)
        scales[0] = 1e-300;
    return scales;
}

inline ConstraintSet eval_constraints(RotatorSpec const& spec, State const& s)
{
    if (dot(s.p, s.k) == 0.0)
        throw DegenerateError("eval_constraints: pk = 0");
    ConstraintSet out{spec.kind(), {}, constraint_scales(spec, s)};
    int n = constraint_count(spec);
    for (int i = 0; i < n; ++i)
        out.residuals.push_back(constraint_value(spec, i, s));
    return out;
}

struct FirstClassReport
{
    RotatorKind kind;
    Eigen::MatrixXd brackets;          //!< {phi_i, phi_j}
    std::vector<double> residuals;     //!< normalized constraint residuals
    bool on_surface = false;
    bool pass = false;
    double tolerance = 0.0;
    std::vector<std::string> failures;
};

/*!
 * Pairwise brackets of the primary constraints. On-surface (normalized
 * residuals below 1e-10), every bracket must be below tol * scale, where the
 * scale is the product of the two constraint gradient norms.
 */
inline FirstClassReport first_class_report(RotatorSpec const& spec, State const& s,
                                           double tol = 1e-7)
{
    FirstClassReport rep;
    rep.kind = spec.kind();
    rep.tolerance = tol;
    auto set = eval_constraints(spec, s);
    for (std::size_t i = 0; i < set.residuals.size(); ++i)
        rep.residuals.push_back(std::abs(set.residuals[i]) / set.scales[i]);
    rep.on_surface = set.max_normalized() < 1e-10;

    int n = constraint_count(spec);
    std::vector<PhaseGradient<double>> grads;
    std::vector<double> norms;
    for (int i = 0; i < n; ++i)
    {
        grads.push_back(phase_gradient(constraint_function(spec, i), s));
        double nn = 0.0;
        for (double g : grads.back())
            nn += g * g;
        norms.push_back(std::sqrt(nn));
    }
    rep.brackets = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            rep.brackets(i, j) = bracket_from_gradients(grads[i], grads[j]);

    rep.pass = rep.on_surface;
    if (!rep.on_surface)
        rep.failures.push_back("state is off the constraint surface");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
        {
            double scale = std::max(norms[i] * norms[j], 1e-300);
            if (std::abs(rep.brackets(i, j)) >= tol * scale)
            {
                rep.pass = false;
                rep.failures.push_back("{" + constraint_name(spec, i) + ", "
                                       + constraint_name(spec, j) + "} = "
                                       + std::to_string(rep.brackets(i, j)));
            }
        }
    return rep;
}

/*!
 * det J, J_mn = eta^{mu nu} (alpha dphi_m/dp dphi_n/dp + beta dphi_m/dk dphi_n/dk
 *                             + gamma dphi_m/dchi dphi_n/dchi).
 * Nonzero on-surface certifies regular, independent constraints.
 */
inline double regularity_determinant(RotatorSpec const& spec, State const& s, double alpha = 1.0,
                                     double beta = 1.0, double gamma = 1.0)
{
    // With chi = 0 the chi.k row of J vanishes identically (spin-zero).
    if (s.chi == Vec4{})
        return 0.0;
    int n = constraint_count(spec);
    std::vector<PhaseGradient<double>> grads;
    for (int i = 0; i < n; ++i)
        grads.push_back(phase_gradient(constraint_function(spec, i), s));
    Eigen::MatrixXd jac(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
        {
            double sum = 0.0;
            for (int mu = 0; mu < 4; ++mu)
            {
                double eta = metric_sign(mu);
                sum += eta
                       * (alpha * grads[a][4 + mu] * grads[b][4 + mu]
                          + beta * grads[a][8 + mu] * grads[b][8 + mu]
                          + gamma * grads[a][12 + mu] * grads[b][12 + mu]);
            }
            jac(a, b) = sum;
        }
    return jac.determinant();
}

/*!
 * Closed-form on-surface values of the regularity determinant:
 * -16 beta^3 chi.chi C_J^2 F_{G,C_J}^2 (phenomenological) and
 * 16 m^2 l^2 alpha beta^3 / (pk)^2 (fundamental).
 */
inline double regularity_determinant_closed_form(RotatorSpec const& spec, State const& s,
                                                 double alpha = 1.0, double beta = 1.0)
{
    if (spec.is_fundamental())
    {
        double pk = dot(s.p, s.k);
        return 16.0 * spec.m() * spec.m() * spec.l() * spec.l() * alpha * beta * beta * beta
               / (pk * pk);
    }
    double cj = casimir_spin(spec, s);
    if (cj == 0.0)
        return 0.0;
    double f_cj = -spec.mass_spin()(cj).df;
    return -16.0 * beta * beta * beta * dot(s.chi, s.chi) * cj * cj * f_cj * f_cj;
}

}  // namespace rotator

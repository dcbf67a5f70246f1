#pragma once

// Fixed-step RK4 integration in CM proper time with per-sample constraint,
// Casimir and gauge-condition logging.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rotator/eom.hpp"

namespace rotator {

struct IntegratorOptions
{
    double duration = 10.0;
    double dt = 1e-3;
    //! Project (k, chi) back onto the surface after every step.
    bool stabilize = false;
    //! Abort when a normalized constraint residual exceeds this.
    double abort_threshold = 1e-6;
    //! Keep every n-th step (the last step is always kept).
    std::size_t sample_every = 1;
};

struct TrajectorySample
{
    double t = 0.0;
    State state;
    CasimirPair casimirs;
    double tanh_psi = 0.0;
    double rho = 0.0;
    double omega = 0.0;
    std::vector<double> residuals;               //!< normalized constraint residuals
    std::array<double, 3> gauge_residuals{};     //!< p.xdot - |p|, pk - |p|, p.chi
};

struct DriftSummary
{
    double max_residual = 0.0;
    double max_gauge_residual = 0.0;
    double casimir_mass_drift = 0.0;
    double casimir_spin_drift = 0.0;
    double momentum_drift = 0.0;
    double tanh_psi_min = 0.0;
    double tanh_psi_max = 0.0;
    double rho_min = 0.0;
    double rho_max = 0.0;
};

struct Trajectory
{
    std::string family;
    RotatorKind kind = RotatorKind::phenomenological;
    std::string profile;
    IntegratorOptions options;
    std::int64_t steps = 0;
    std::vector<TrajectorySample> samples;
    DriftSummary drift;
};

//! Classic fourth-order Runge-Kutta step for ds/dt = rate(t, s).
template <class Rate>
State rk4_step(Rate const& rate, double t, State const& s, double h)
{
    State k1 = rate(t, s);
    State k2 = rate(t + 0.5 * h, axpy(s, 0.5 * h, k1));
    State k3 = rate(t + 0.5 * h, axpy(s, 0.5 * h, k2));
    State k4 = rate(t + h, axpy(s, h, k3));
    State out = s;
    for (int i = 0; i < 16; ++i)
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

/*!
 * Restores kk = 0, k.chi = 0 and the spin Casimir without touching p or pk:
 * k is rebuilt from its components along and across p, chi is cleared of its
 * k-component along the unit normal, then rescaled.
 */
inline void project_to_surface(RotatorSpec const& spec, State& s, double c_j_target)
{
    double pp = dot(s.p, s.p);
    double norm_p = std::sqrt(pp);
    Vec4 p_hat = (1.0 / norm_p) * s.p;
    double along = dot(s.k, p_hat);
    Vec4 across = s.k - along * p_hat;
    double across_len = std::sqrt(-dot(across, across));
    if (!(across_len > 0.0))
        throw DegenerateError("project_to_surface: k parallel to p");
    Vec4 n = (1.0 / across_len) * across;
    s.k = along * (p_hat + n);
    double kn = dot(s.k, n);
    s.chi = s.chi - (dot(s.chi, s.k) / kn) * n;
    double pk = dot(s.p, s.k);
    double m = spec.m(), l = spec.l();
    double target = -m * m * m * m * l * l * c_j_target / (4.0 * pk * pk);
    double cc = dot(s.chi, s.chi);
    if (!(cc < 0.0))
        throw DegenerateError("project_to_surface: chi is not spacelike");
    s.chi = std::sqrt(target / cc) * s.chi;
}

namespace detail {

inline TrajectorySample observe(RotatorSpec const& spec, State const& s, double t, State const& rate,
                                double omega)
{
    TrajectorySample out;
    out.t = t;
    out.state = s;
    out.casimirs = {casimir_mass(spec, s), casimir_spin(spec, s)};
    double pp = dot(s.p, s.p), pk = dot(s.p, s.k), px = dot(s.p, rate.x);
    out.tanh_psi = (pk * px - pp * dot(s.k, rate.x)) / (pk * px);
    out.rho = 0.5 * spec.l() * std::sqrt(std::max(0.0, out.casimirs.c_j)) / out.casimirs.c_m;
    out.omega = omega;
    auto set = eval_constraints(spec, s);
    for (std::size_t i = 0; i < set.residuals.size(); ++i)
        out.residuals.push_back(std::abs(set.residuals[i]) / set.scales[i]);
    double norm_p = std::sqrt(pp);
    double chi_scale = std::max(component_norm(s.chi), 1e-300);
    out.gauge_residuals = {std::abs(px - norm_p) / norm_p, std::abs(pk - norm_p) / norm_p,
                           std::abs(dot(s.p, s.chi)) / (norm_p * chi_scale)};
    return out;
}

}  // namespace detail

/*!
 * Integrates from s0 over opts.duration with round(duration/dt) steps of
 * exactly dt. Fundamental rotators need a profile; phenomenological ones
 * ignore it. Throws IntegrationAborted when a residual passes the threshold.
 */
inline Trajectory integrate(RotatorSpec const& spec, State const& s0,
                            std::optional<GaugeProfile> const& profile, IntegratorOptions const& opts)
{
    if (!(opts.dt > 0.0) || !(opts.duration >= 0.0) || !std::isfinite(opts.duration))
        throw DomainError("integrate: need dt > 0 and a finite duration >= 0");
    if (opts.sample_every == 0)
        throw DomainError("integrate: sample_every must be at least 1");
    if (spec.is_fundamental() && !profile)
        throw DomainError("integrate: a fundamental rotator needs a gauge profile");

    Trajectory traj;
    traj.family = spec.family().name();
    traj.kind = spec.kind();
    traj.profile = spec.is_fundamental() ? profile->description() : "cm";
    traj.options = opts;
    traj.steps = std::llround(opts.duration / opts.dt);

    bool fund = spec.is_fundamental();
    auto rate = [&](double t, State const& s) {
        return fund ? eom_fund(spec, s, *profile, t) : eom_phenom(spec, s);
    };
    auto omega_at = [&](double t, State const& s) {
        return fund ? profile->omega(t)
                    : angular_velocity(spec, {casimir_mass(spec, s), casimir_spin(spec, s)});
    };

    auto initial = eval_constraints(spec, s0);
    if (initial.max_normalized() > opts.abort_threshold)
        throw IntegrationAborted("integrate: initial state is off the constraint surface", 0.0,
                                 initial.max_normalized());
    double c_j0 = casimir_spin(spec, s0);

    State s = s0;
    auto record = [&](double t) {
        traj.samples.push_back(detail::observe(spec, s, t, rate(t, s), omega_at(t, s)));
    };
    record(0.0);
    for (std::int64_t i = 1; i <= traj.steps; ++i)
    {
        double t = double(i - 1) * opts.dt;
        s = rk4_step(rate, t, s, opts.dt);
        if (opts.stabilize)
            project_to_surface(spec, s, c_j0);
        double t_next = double(i) * opts.dt;
        if (!all_finite(s))
            throw IntegrationAborted("integrate: non-finite state", t_next, INFINITY);
        auto set = eval_constraints(spec, s);
        double worst = set.max_normalized();
        if (worst > opts.abort_threshold)
            throw IntegrationAborted("integrate: constraint residual " + std::to_string(worst)
                                         + " exceeds threshold",
                                     t_next, worst);
        if (i % std::int64_t(opts.sample_every) == 0 || i == traj.steps)
            record(t_next);
    }

    auto& d = traj.drift;
    auto const& first = traj.samples.front();
    d.tanh_psi_min = d.tanh_psi_max = first.tanh_psi;
    d.rho_min = d.rho_max = first.rho;
    for (auto const& smp : traj.samples)
    {
        for (double r : smp.residuals)
            d.max_residual = std::max(d.max_residual, r);
        for (double g : smp.gauge_residuals)
            d.max_gauge_residual = std::max(d.max_gauge_residual, g);
        d.casimir_mass_drift = std::max(d.casimir_mass_drift, std::abs(smp.casimirs.c_m - first.casimirs.c_m));
        d.casimir_spin_drift = std::max(d.casimir_spin_drift, std::abs(smp.casimirs.c_j - first.casimirs.c_j));
        for (int mu = 0; mu < 4; ++mu)
            d.momentum_drift = std::max(d.momentum_drift, std::abs(smp.state.p[mu] - first.state.p[mu]));
        d.tanh_psi_min = std::min(d.tanh_psi_min, smp.tanh_psi);
        d.tanh_psi_max = std::max(d.tanh_psi_max, smp.tanh_psi);
        d.rho_min = std::min(d.rho_min, smp.rho);
        d.rho_max = std::max(d.rho_max, smp.rho);
    }
    return traj;
}

}  // namespace rotator

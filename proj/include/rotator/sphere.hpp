#pragma once

// A particle on the light cone qq = 0 with L = -1/2 qdot.qdot / (wq)^2, w a
// constant timelike vector. Projectively it lives on a 2-sphere.
//
// The multiplier term (1/2) Lambda qq leaves Lambda free on the cone
// (q -> lambda q is a symmetry). It is fixed here by w.qddot = 0:
//   Lambda = (2 (w.qdot)^2 - qdot.qdot ww) / (wq)^4
//   qddot  = 2 (w.qdot) qdot / wq - (qdot.qdot / wq) w - Lambda (wq)^2 q

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "rotator/dual.hpp"
#include "rotator/errors.hpp"
#include "rotator/hessian.hpp"
#include "rotator/minkowski.hpp"

namespace rotator {

struct SphereModel
{
    Vec4 w{1.0, 0.0, 0.0, 0.0};

    explicit SphereModel(Vec4 w_ = {1.0, 0.0, 0.0, 0.0}) : w(w_)
    {
        if (!(dot(w, w) > 0.0))
            throw DomainError("sphere model: w must be timelike (ww > 0)");
    }
};

struct SphereState
{
    Vec4 q;
    Vec4 qdot;
};

namespace detail {
inline double checked_wq(SphereModel const& model, Vec4 const& q)
{
    double wq = dot(model.w, q);
    if (wq == 0.0)
        throw DomainError("sphere model: wq = 0");
    return wq;
}
}  // namespace detail

template <class T>
T sphere_lagrangian_value(Vec4 const& w, FourVector<T> const& q, FourVector<T> const& qdot)
{
    T wq = dot(lift<T>(w), q);
    return -0.5 * dot(qdot, qdot) / (wq * wq);
}

inline double sphere_lagrangian(SphereModel const& model, Vec4 const& q, Vec4 const& qdot)
{
    detail::checked_wq(model, q);
    return sphere_lagrangian_value(model.w, q, qdot);
}

//! p = -dL/dqdot = qdot / (wq)^2.
inline Vec4 sphere_momentum(SphereModel const& model, Vec4 const& q, Vec4 const& qdot)
{
    double wq = detail::checked_wq(model, q);
    return (1.0 / (wq * wq)) * qdot;
}

//! Lambda in the gauge w.qddot = 0, from (q, qdot) alone.
inline double sphere_multiplier(SphereModel const& model, Vec4 const& q, Vec4 const& qdot)
{
    double wq = detail::checked_wq(model, q);
    double wqd = dot(model.w, qdot);
    double wq2 = wq * wq;
    return (2.0 * wqd * wqd - dot(qdot, qdot) * dot(model.w, model.w)) / (wq2 * wq2);
}

inline Vec4 sphere_acceleration(SphereModel const& model, Vec4 const& q, Vec4 const& qdot)
{
    double wq = detail::checked_wq(model, q);
    double lambda = sphere_multiplier(model, q, qdot);
    double wqd = dot(model.w, qdot);
    return (2.0 * wqd / wq) * qdot - (dot(qdot, qdot) / wq) * model.w - (lambda * wq * wq) * q;
}

/*!
 * Residual of w.pdot / (qw) + (qdot.qdot / (wq)^4) ww + Lambda, with pdot
 * from the chain rule on p = qdot / (wq)^2.
 */
inline double sphere_multiplier_identity(SphereModel const& model, Vec4 const& q, Vec4 const& qdot,
                                         Vec4 const& qddot, double lambda)
{
    double wq = detail::checked_wq(model, q);
    double wqd = dot(model.w, qdot);
    Vec4 pdot = (1.0 / (wq * wq)) * qddot - (2.0 * wqd / (wq * wq * wq)) * qdot;
    double wq4 = wq * wq * wq * wq;
    return dot(model.w, pdot) / wq + dot(qdot, qdot) / wq4 * dot(model.w, model.w) + lambda;
}

/*!
 * Projected equations of motion with lowered free index:
 *   qddot_nu (delta - w^nu q_mu / wq - q^nu w_mu / wq + ww q^nu q_mu / (wq)^2)
 *     - 2 (w.qdot / wq) (qdot_mu - (w.qdot / wq) q_mu)
 */
template <class T>
FourVector<T> sphere_projected_residual(Vec4 const& w, Vec4 const& q, Vec4 const& qdot,
                                        FourVector<T> const& qddot)
{
    double wq = dot(w, q), wqd = dot(w, qdot), ww = dot(w, w);
    T q_acc = dot(lift<T>(q), qddot);
    T w_acc = dot(lift<T>(w), qddot);
    FourVector<T> r;
    for (int mu = 0; mu < 4; ++mu)
    {
        double eta = metric_sign(mu);
        double w_low = eta * w[mu], q_low = eta * q[mu], qd_low = eta * qdot[mu];
        r[mu] = eta * qddot[mu] - w_low * q_acc / wq - q_low * w_acc / wq
                + (ww / (wq * wq)) * q_low * q_acc
                - (2.0 * wqd / wq) * (qd_low - (wqd / wq) * q_low);
    }
    return r;
}

struct SphereHessianReport
{
    Eigen::Matrix4d hessian;
    RankDiagnostics rank;
    double null_q = 0.0;  //!< |H q| / |H|
    double null_w = 0.0;  //!< |H w| / |H|
    bool on_cone = true;
};

//! Jacobian of the projected equations with respect to qddot.
inline SphereHessianReport sphere_hessian(SphereModel const& model, Vec4 const& q, Vec4 const& qdot = {})
{
    detail::checked_wq(model, q);
    SphereHessianReport rep;
    rep.on_cone = std::abs(dot(q, q)) <= 1e-12 * component_norm(q) * component_norm(q);
    using D = Dual<double>;
    for (int nu = 0; nu < 4; ++nu)
    {
        FourVector<D> acc;
        for (int mu = 0; mu < 4; ++mu)
            acc[mu] = D(0.0, mu == nu ? 1.0 : 0.0);
        auto r = sphere_projected_residual(model.w, q, qdot, acc);
        for (int mu = 0; mu < 4; ++mu)
            rep.hessian(mu, nu) = r[mu].du;
    }
    rep.rank = rank_from_singular_values(singular_values(rep.hessian));
    Eigen::Vector4d qv(q.t, q.x, q.y, q.z), wv(model.w.t, model.w.x, model.w.y, model.w.z);
    double norm = rep.hessian.norm();
    rep.null_q = (rep.hessian * qv).norm() / (norm * qv.norm());
    rep.null_w = (rep.hessian * wv).norm() / (norm * wv.norm());
    return rep;
}

struct SphereSample
{
    double t = 0.0;
    SphereState state;
    Vec4 p;
    double lambda = 0.0;
    double qq = 0.0;
    double q_qdot = 0.0;
    double p_q = 0.0;
};

//! RK4 over `duration` in steps of dt, sampling every `sample_every` steps.
inline std::vector<SphereSample> integrate_sphere(SphereModel const& model, SphereState s0, double duration,
                                                  double dt, std::size_t sample_every = 1)
{
    if (!(dt > 0.0) || !(duration >= 0.0) || sample_every == 0)
        throw DomainError("integrate_sphere: need dt > 0, duration >= 0, sample_every >= 1");
    double scale = component_norm(s0.q);
    if (std::abs(dot(s0.q, s0.q)) > 1e-12 * scale * scale)
        throw DomainError("integrate_sphere: q must start on the light cone");
    if (std::abs(dot(s0.q, s0.qdot)) > 1e-12 * scale * component_norm(s0.qdot))
        throw DomainError("integrate_sphere: q.qdot must vanish initially");
    detail::checked_wq(model, s0.q);

    auto rate = [&](SphereState const& s) {
        return SphereState{s.qdot, sphere_acceleration(model, s.q, s.qdot)};
    };
    auto axpy4 = [](SphereState const& a, double h, SphereState const& b) {
        return SphereState{a.q + h * b.q, a.qdot + h * b.qdot};
    };
    std::vector<SphereSample> out;
    auto record = [&](double t, SphereState const& s) {
        SphereSample smp;
        smp.t = t;
        smp.state = s;
        smp.p = sphere_momentum(model, s.q, s.qdot);
        smp.lambda = sphere_multiplier(model, s.q, s.qdot);
        smp.qq = dot(s.q, s.q);
        smp.q_qdot = dot(s.q, s.qdot);
        smp.p_q = dot(smp.p, s.q);
        out.push_back(smp);
    };
    std::int64_t steps = std::llround(duration / dt);
    SphereState s = s0;
    record(0.0, s);
    for (std::int64_t i = 1; i <= steps; ++i)
    {
        SphereState k1 = rate(s);
        SphereState k2 = rate(axpy4(s, 0.5 * dt, k1));
        SphereState k3 = rate(axpy4(s, 0.5 * dt, k2));
        SphereState k4 = rate(axpy4(s, dt, k3));
        s.q += (dt / 6.0) * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q);
        s.qdot += (dt / 6.0) * (k1.qdot + 2.0 * k2.qdot + 2.0 * k3.qdot + k4.qdot);
        if (i % std::int64_t(sample_every) == 0 || i == steps)
            record(double(i) * dt, s);
    }
    return out;
}

}  // namespace rotator

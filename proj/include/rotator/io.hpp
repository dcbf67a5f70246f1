#pragma once

// Deterministic CSV export of trajectories.

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "rotator/integrator.hpp"
#include "rotator/sphere.hpp"

namespace rotator {

inline constexpr char const* version_string = "rotator 1.0.0";

//! Shortest round-trip text for a double ("%.17g"), locale independent.
inline std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::vector<std::string> trajectory_columns(RotatorKind kind)
{
    std::vector<std::string> cols{"t"};
    for (char const* name : {"x", "p", "k", "chi"})
        for (int mu = 0; mu < 4; ++mu)
            cols.push_back(std::string(name) + std::to_string(mu));
    for (char const* name : {"C_M", "C_J", "tanh_psi", "rho", "omega", "res_kk", "res_chik"})
        cols.emplace_back(name);
    if (kind == RotatorKind::fundamental)
    {
        cols.emplace_back("res_CJ");
        cols.emplace_back("res_CM");
    }
    else
    {
        cols.emplace_back("res_FG");
    }
    for (char const* name : {"gauge_pxdot", "gauge_pk", "gauge_pchi"})
        cols.emplace_back(name);
    return cols;
}

namespace detail {
inline void write_row(std::ostream& os, std::vector<double> const& row)
{
    for (std::size_t i = 0; i < row.size(); ++i)
        os << (i ? "," : "") << format_number(row[i]);
    os << '\n';
}

inline void write_header(std::ostream& os, std::vector<std::string> const& cols)
{
    for (std::size_t i = 0; i < cols.size(); ++i)
        os << (i ? "," : "") << cols[i];
    os << '\n';
}
}  // namespace detail

inline void write_trajectory_csv(std::ostream& os, Trajectory const& traj)
{
    detail::write_header(os, trajectory_columns(traj.kind));
    for (auto const& s : traj.samples)
    {
        std::vector<double> row{s.t};
        for (int i = 0; i < 16; ++i)
            row.push_back(s.state[i]);
        row.insert(row.end(), {s.casimirs.c_m, s.casimirs.c_j, s.tanh_psi, s.rho, s.omega});
        row.insert(row.end(), s.residuals.begin(), s.residuals.end());
        row.insert(row.end(), s.gauge_residuals.begin(), s.gauge_residuals.end());
        detail::write_row(os, row);
    }
}

inline void write_sphere_csv(std::ostream& os, std::vector<SphereSample> const& samples)
{
    std::vector<std::string> cols{"t"};
    for (char const* name : {"q", "qdot", "p"})
        for (int mu = 0; mu < 4; ++mu)
            cols.push_back(std::string(name) + std::to_string(mu));
    for (char const* name : {"lambda", "qq", "q_qdot", "p_q"})
        cols.emplace_back(name);
    detail::write_header(os, cols);
    for (auto const& s : samples)
    {
        std::vector<double> row{s.t};
        for (Vec4 const* v : {&s.state.q, &s.state.qdot, &s.p})
            for (int mu = 0; mu < 4; ++mu)
                row.push_back((*v)[mu]);
        row.insert(row.end(), {s.lambda, s.qq, s.q_qdot, s.p_q});
        detail::write_row(os, row);
    }
}

}  // namespace rotator

#pragma once

// Subcommand implementations. Each returns the process exit code:
// 0 pass, 1 check failure, 2 usage or configuration error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rotator/rotator.hpp"
#include "scenario.hpp"

namespace rotator::cli {

using Json = nlohmann::ordered_json;

enum ExitCode
{
    exit_pass = 0,
    exit_check_failed = 1,
    exit_usage = 2,
};

// ---------------------------------------------------------------- output files

inline std::filesystem::path output_path(std::string const& dir, std::string const& file)
{
    std::filesystem::path d(dir);
    std::filesystem::create_directories(d);
    return d / file;
}

inline void write_text(std::filesystem::path const& path, std::string const& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
}

inline std::string csv_field(std::string const& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s)
        q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

// --------------------------------------------------------------- run summaries

//! One row of named values describing a finished rotator run.
struct SummaryRow
{
    std::vector<std::string> names;
    std::vector<std::string> values;

    void add(std::string name, std::string value)
    {
        names.push_back(std::move(name));
        values.push_back(std::move(value));
    }
    void add(std::string name, double value) { add(std::move(name), format_number(value)); }

    std::string header() const
    {
        std::string s;
        for (std::size_t i = 0; i < names.size(); ++i)
            s += (i ? "," : "") + names[i];
        return s + "\n";
    }
    std::string line() const
    {
        std::string s;
        for (std::size_t i = 0; i < values.size(); ++i)
            s += (i ? "," : "") + csv_field(values[i]);
        return s + "\n";
    }
};

//! Largest position deviation of the samples from the analytic solution.
inline double closed_form_error(Scenario const& sc, Trajectory const& traj)
{
    double worst = 0.0;
    for (auto const& s : traj.samples)
    {
        State exact = sc.spec.is_fundamental() ? closed_form_fund(sc.spec, sc.initial, *sc.profile, s.t)
                                               : closed_form_phenom(sc.spec, sc.initial, s.t);
        for (int mu = 0; mu < 4; ++mu)
            worst = std::max(worst, std::abs(exact.x[mu] - s.state.x[mu]));
    }
    return worst;
}

//! Orbit radius over the whole periods covered by uniformly spaced samples (NaN if none).
inline double whole_period_radius(Scenario const& sc, Trajectory const& traj)
{
    if (!(sc.period > 0.0))
        return std::nan("");
    double span = traj.samples.back().t;
    double periods = std::floor(span / sc.period * (1.0 + 1e-12));
    if (periods < 1.0)
        return std::nan("");
    double end = periods * sc.period;
    std::vector<TrajectorySample> window;
    for (auto const& s : traj.samples)
        if (s.t < end - 1e-9 * sc.period)
            window.push_back(s);
    return measured_orbit_radius(window);
}

//! Kinematic curvature radius at the middle of the trajectory (NaN if too short).
inline double mid_curvature_radius(Scenario const& sc, Trajectory const& traj)
{
    std::size_t n = traj.samples.size();
    if (n < 6)
        return std::nan("");
    std::size_t mid = (n - 1) / 2;
    std::span<TrajectorySample const> all(traj.samples);
    try
    {
        return curvature_radius(sc.spec, all.subspan(mid - 2, 5)).kinematic;
    }
    catch (DomainError const&)
    {
        return std::nan("");
    }
}

inline SummaryRow summarize(Scenario const& sc, Trajectory const& traj)
{
    SummaryRow row;
    auto const& first = traj.samples.front();
    auto const& last = traj.samples.back();
    double mean = 0.0, var = 0.0;
    for (auto const& s : traj.samples)
        mean += s.tanh_psi;
    mean /= double(traj.samples.size());
    for (auto const& s : traj.samples)
        var += (s.tanh_psi - mean) * (s.tanh_psi - mean);
    double stdev = traj.samples.size() > 1 ? std::sqrt(var / double(traj.samples.size() - 1)) : 0.0;

    row.add("family", sc.spec.family().name());
    row.add("kind", to_string(sc.spec.kind()));
    row.add("profile", traj.profile);
    row.add("Q", sc.spec.is_fundamental() ? std::string("nan") : format_number(sc.config.q));
    row.add("m", sc.spec.m());
    row.add("l", sc.spec.l());
    row.add("T", traj.options.duration);
    row.add("dt", traj.options.dt);
    row.add("steps", std::to_string(traj.steps));
    row.add("C_M", first.casimirs.c_m);
    row.add("C_J", first.casimirs.c_j);
    row.add("omega", first.omega);
    row.add("rho", first.rho);
    row.add("tanh_psi_mean", mean);
    row.add("tanh_psi_std", stdev);
    row.add("curvature_radius", mid_curvature_radius(sc, traj));
    row.add("orbit_radius", whole_period_radius(sc, traj));
    row.add("closed_form_error", closed_form_error(sc, traj));
    row.add("max_residual", traj.drift.max_residual);
    row.add("max_gauge_residual", traj.drift.max_gauge_residual);
    row.add("casimir_mass_drift", traj.drift.casimir_mass_drift);
    row.add("casimir_spin_drift", traj.drift.casimir_spin_drift);
    for (int mu = 0; mu < 4; ++mu)
        row.add("final_x" + std::to_string(mu), last.state.x[mu]);
    return row;
}

inline Json manifest(Scenario const& sc, Trajectory const& traj, SummaryRow const& row,
                     std::vector<std::string> const& files)
{
    Json j;
    j["version"] = version_string;
    j["command"] = "simulate";
    Json cfg;
    for (auto const& [k, v] : describe(sc.config))
        cfg[k] = v;
    j["config"] = cfg;
    j["spec"] = {{"family", sc.spec.family().name()},
                 {"kind", to_string(sc.spec.kind())},
                 {"m", sc.spec.m()},
                 {"l", sc.spec.l()},
                 {"q_range", {sc.spec.q_range().lo, sc.spec.q_range().hi}},
                 {"warning", sc.spec.warning()}};
    j["gauge"] = traj.profile;
    j["integrator"] = {{"method", "rk4"},
                       {"T", traj.options.duration},
                       {"dt", traj.options.dt},
                       {"steps", traj.steps},
                       {"stabilize", traj.options.stabilize},
                       {"abort_threshold", traj.options.abort_threshold},
                       {"sample_every", traj.options.sample_every}};
    Json summary;
    for (std::size_t i = 0; i < row.names.size(); ++i)
        summary[row.names[i]] = row.values[i];
    j["summary"] = summary;
    j["outputs"] = files;
    return j;
}

// ------------------------------------------------------------------ simulate

inline SphereModel sphere_model(ScenarioConfig const& cfg)
{
    try
    {
        return SphereModel(cfg.w);
    }
    catch (std::exception const& e)
    {
        throw ConfigError("w", e.what());
    }
}

inline int simulate_sphere(ScenarioConfig const& cfg, std::string const& out_dir, std::ostream& out)
{
    auto model = sphere_model(cfg);
    double duration = cfg.duration.value_or(10.0), dt = cfg.dt.value_or(1e-3);
    if (!(dt > 0.0))
        throw ConfigError("dt", "step must be positive");
    std::vector<SphereSample> samples;
    try
    {
        samples = integrate_sphere(model, {cfg.q0, cfg.qdot0}, duration, dt, cfg.sample_every);
    }
    catch (DomainError const& e)
    {
        throw ConfigError("q0", e.what());
    }
    double qq = 0.0, qqd = 0.0, pq = 0.0;
    for (auto const& s : samples)
    {
        qq = std::max(qq, std::abs(s.qq));
        qqd = std::max(qqd, std::abs(s.q_qdot));
        pq = std::max(pq, std::abs(s.p_q));
    }
    std::ostringstream csv;
    write_sphere_csv(csv, samples);
    auto csv_path = output_path(out_dir, cfg.name + ".csv");
    write_text(csv_path, csv.str());
    Json j;
    j["version"] = version_string;
    j["command"] = "simulate";
    Json c;
    for (auto const& [k, v] : describe(cfg))
        c[k] = v;
    j["config"] = c;
    j["integrator"] = {{"method", "rk4"}, {"T", duration}, {"dt", dt}};
    j["summary"] = {{"max_qq", qq}, {"max_q_qdot", qqd}, {"max_p_q", pq}};
    j["outputs"] = {csv_path.string()};
    write_text(output_path(out_dir, cfg.name + ".json"), j.dump(2) + "\n");
    out << "sphere: samples=" << samples.size() << " max|qq|=" << format_number(qq)
        << " max|q.qdot|=" << format_number(qqd) << " max|p.q|=" << format_number(pq) << "\n";
    return exit_pass;
}

inline int cmd_simulate(ScenarioConfig const& cfg, std::string const& out_dir, std::ostream& out,
                        std::ostream& err)
{
    if (cfg.model == "sphere")
        return simulate_sphere(cfg, out_dir, out);
    Scenario sc = resolve(cfg);
    if (!sc.spec.warning().empty())
        err << "warning: " << sc.spec.warning() << "\n";
    Trajectory traj;
    try
    {
        traj = integrate(sc.spec, sc.initial, sc.profile, sc.options);
    }
    catch (IntegrationAborted const& e)
    {
        err << "integration aborted at t = " << format_number(e.time) << ": " << e.what() << "\n";
        return exit_check_failed;
    }
    catch (GaugeError const& e)
    {
        err << "gauge error: " << e.what() << "\n";
        return exit_check_failed;
    }
    auto row = summarize(sc, traj);
    std::ostringstream csv;
    write_trajectory_csv(csv, traj);
    auto csv_path = output_path(out_dir, cfg.name + ".csv");
    auto summary_path = output_path(out_dir, cfg.name + "_summary.csv");
    write_text(csv_path, csv.str());
    write_text(summary_path, row.header() + row.line());
    auto man = manifest(sc, traj, row, {csv_path.string(), summary_path.string()});
    write_text(output_path(out_dir, cfg.name + ".json"), man.dump(2) + "\n");

    out << sc.spec.family().name() << " (" << to_string(sc.spec.kind()) << ")";
    for (std::size_t i = 0; i < row.names.size(); ++i)
    {
        auto const& n = row.names[i];
        if (n == "C_M" || n == "C_J" || n == "rho" || n == "tanh_psi_mean" || n == "orbit_radius"
            || n == "max_residual" || n == "casimir_mass_drift" || n == "casimir_spin_drift"
            || n == "closed_form_error")
            out << " " << n << "=" << row.values[i];
    }
    out << " samples=" << traj.samples.size() << "\n";
    return exit_pass;
}

// -------------------------------------------------------------------- verify

struct CheckResult
{
    std::string name;
    bool pass = false;
    double value = 0.0;
    double tolerance = 0.0;
    std::string detail;
    //! Value must equal the tolerance field (integer checks such as ranks).
    bool exact = false;
};

inline CheckResult check_below(std::string name, double value, double tol, std::string detail = {})
{
    return {std::move(name), std::isfinite(value) && value < tol, value, tol, std::move(detail)};
}

inline double max_abs_diff(State const& a, State const& b)
{
    double worst = 0.0;
    for (int i = 0; i < 16; ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

//! The three bracket identities of the phenomenological constraints.
inline std::array<double, 3> phenomenological_identities(RotatorSpec const& spec, State const& s)
{
    auto phi = [&](int i) { return constraint_function(spec, i); };
    double m = spec.m(), l = spec.l();
    double pk = dot(s.p, s.k);
    double f_cj = -spec.mass_spin()(casimir_spin(spec, s)).df;
    double b12 = poisson_bracket(phi(0), phi(1), s);
    double b23 = poisson_bracket(phi(1), phi(2), s);
    double b31 = poisson_bracket(phi(2), phi(0), s);
    double coeff = 16.0 * pk * pk / (m * m * m * m * l * l) * f_cj;
    return {std::abs(b12 - 2.0 * constraint_value(spec, 0, s)), std::abs(b23),
            std::abs(b31 - coeff * constraint_value(spec, 1, s))};
}

inline State eom_at(Scenario const& sc, State const& s, double t)
{
    return sc.spec.is_fundamental() ? eom_fund(sc.spec, s, *sc.profile, t) : eom_phenom(sc.spec, s);
}

inline State flow_at(Scenario const& sc, State const& s, double t)
{
    if (sc.spec.is_fundamental())
    {
        double w = sc.profile->omega(t);
        return hamiltonian_flow([&](auto const& st) { return hamiltonian_cm_fund(sc.spec, st, w); }, s);
    }
    return hamiltonian_flow([&](auto const& st) { return hamiltonian_cm(sc.spec, st); }, s);
}

inline std::vector<CheckResult> verify_rotator(Scenario const& sc, bool inject_corruption)
{
    std::vector<CheckResult> checks;
    auto const& spec = sc.spec;
    State s = sc.initial;
    if (inject_corruption)
        s.chi.t += 1e-3 * component_norm(s.chi);

    auto set = eval_constraints(spec, s);
    for (int i = 0; i < constraint_count(spec); ++i)
        checks.push_back(check_below("constraint " + constraint_name(spec, i),
                                     std::abs(set.residuals[i]) / set.scales[i], 1e-12));

    std::mt19937_64 rng(sc.config.seed);
    std::vector<State> states{s};
    for (int i = 0; i < 20; ++i)
        states.push_back(random_on_surface_state(spec, rng));

    if (spec.is_fundamental())
    {
        double worst = 0.0;
        std::string where;
        for (auto const& st : states)
        {
            auto rep = first_class_report(spec, st);
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    if (std::abs(rep.brackets(i, j)) > worst)
                    {
                        worst = std::abs(rep.brackets(i, j));
                        where = "{" + constraint_name(spec, i) + ", " + constraint_name(spec, j) + "}";
                    }
        }
        checks.push_back(check_below("first-class 4x4 brackets", worst, 1e-8, "largest " + where));
    }
    else
    {
        std::array<double, 3> worst{};
        for (auto const& st : states)
        {
            auto v = phenomenological_identities(spec, st);
            for (int i = 0; i < 3; ++i)
                worst[i] = std::max(worst[i], v[i]);
        }
        checks.push_back(check_below("bracket {kk, chi.k} - 2 kk", worst[0], 1e-8));
        checks.push_back(check_below("bracket {chi.k, F_G}", worst[1], 1e-8));
        checks.push_back(check_below("bracket {F_G, kk} - 16 (pk)^2 F_G,C_J chi.k / (m^4 l^2)", worst[2], 1e-8));
    }

    double det_err = 0.0;
    for (auto const& st : states)
    {
        double num = regularity_determinant(spec, st), exact = regularity_determinant_closed_form(spec, st);
        det_err = std::max(det_err, std::abs(num - exact) / std::max(std::abs(exact), 1e-300));
    }
    checks.push_back(check_below("regularity determinant", det_err, 1e-7));

    double q_probe = spec.is_fundamental() ? 0.5 : sc.config.q;
    auto rank = hessian_rank(spec, kinematic_point_at(spec, q_probe));
    int expected = spec.is_fundamental() ? 4 : 5;
    checks.push_back({"hessian rank", rank.rank == expected && !rank.indeterminate, double(rank.rank),
                      double(expected), "gap " + format_number(rank.gap), true});

    double flow_err = 0.0;
    for (auto const& st : states)
    {
        State a = flow_at(sc, st, 0.0), b = eom_at(sc, st, 0.0);
        double scale = 0.0;
        for (int i = 0; i < 16; ++i)
            scale = std::max(scale, std::abs(b[i]));
        flow_err = std::max(flow_err, max_abs_diff(a, b) / std::max(scale, 1.0));
    }
    checks.push_back(check_below("hamiltonian flow vs equations of motion", flow_err, 1e-8));

    if (inject_corruption)
        return checks;
    try
    {
        auto traj = integrate(spec, sc.initial, sc.profile, sc.options);
        double cf_tol = spec.is_fundamental() ? 1e-8 : 1e-6;
        checks.push_back(check_below("closed-form trajectory", closed_form_error(sc, traj), cf_tol));
        checks.push_back(check_below("constraint drift", traj.drift.max_residual, 1e-9));
        checks.push_back(check_below("casimir drift",
                                     std::max(traj.drift.casimir_mass_drift, traj.drift.casimir_spin_drift), 1e-9));
        checks.push_back(check_below("gauge conditions", traj.drift.max_gauge_residual, 1e-9));
        if (spec.is_fundamental())
        {
            double worst = 0.0;
            for (auto const& smp : traj.samples)
                worst = std::max(worst, std::abs(smp.tanh_psi - 0.5 * spec.l() * sc.profile->omega(smp.t)));
            checks.push_back(check_below("rapidity equals l omega~/2", worst, 1e-8));
        }
        else
        {
            auto const& first = traj.samples.front();
            double family = std::abs(rapidity_from_family(spec, sc.config.q));
            checks.push_back(check_below("rapidity equals rho omega",
                                         std::abs(std::abs(first.tanh_psi) - first.rho * std::abs(first.omega)), 1e-10));
            checks.push_back(check_below("rapidity equals |QG'/(2G-QG')|",
                                         std::abs(std::abs(first.tanh_psi) - family), 1e-10));
            checks.push_back(check_below("rapidity constant",
                                         traj.drift.tanh_psi_max - traj.drift.tanh_psi_min, 1e-9));
        }
    }
    catch (std::exception const& e)
    {
        checks.push_back({"integration", false, 0.0, 0.0, e.what()});
    }
    return checks;
}

inline std::vector<CheckResult> verify_sphere(ScenarioConfig const& cfg, bool inject_corruption)
{
    auto model = sphere_model(cfg);
    Vec4 q = cfg.q0;
    if (inject_corruption)
        q.t += 1e-3 * component_norm(q);
    std::vector<CheckResult> checks;
    double qn = component_norm(q);
    checks.push_back(check_below("constraint qq", std::abs(dot(q, q)) / (qn * qn), 1e-12));
    auto rep = sphere_hessian(model, q, cfg.qdot0);
    checks.push_back({"sphere hessian rank", rep.rank.rank == 2 && !rep.rank.indeterminate, double(rep.rank.rank),
                      2.0, "gap " + format_number(rep.rank.gap), true});
    checks.push_back(check_below("sphere null vector q", rep.null_q, 1e-8));
    checks.push_back(check_below("sphere null vector w", rep.null_w, 1e-8));
    if (inject_corruption)
        return checks;
    double duration = cfg.duration.value_or(10.0), dt = cfg.dt.value_or(1e-3);
    auto a = integrate_sphere(model, {q, cfg.qdot0}, duration, dt);
    auto b = integrate_sphere(model, {2.0 * q, 2.0 * cfg.qdot0}, duration, dt);
    double drift = 0.0, proj = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        drift = std::max({drift, std::abs(a[i].qq), std::abs(a[i].q_qdot), std::abs(a[i].p_q)});
        double wa = dot(model.w, a[i].state.q), wb = dot(model.w, b[i].state.q);
        for (int mu = 0; mu < 4; ++mu)
            proj = std::max(proj, std::abs(a[i].state.q[mu] / wa - b[i].state.q[mu] / wb));
    }
    checks.push_back(check_below("sphere constraint drift", drift, 1e-9));
    checks.push_back(check_below("sphere projective invariance", proj, 1e-9));
    return checks;
}

inline int cmd_verify(ScenarioConfig const& cfg, std::string const& out_dir, bool inject_corruption,
                      std::ostream& out)
{
    std::vector<CheckResult> checks;
    if (cfg.model == "sphere")
        checks = verify_sphere(cfg, inject_corruption);
    else
        checks = verify_rotator(resolve(cfg), inject_corruption);

    bool all = true;
    Json report;
    report["version"] = version_string;
    report["command"] = "verify";
    Json c;
    for (auto const& [k, v] : describe(cfg))
        c[k] = v;
    report["config"] = c;
    report["injected_corruption"] = inject_corruption;
    Json list = Json::array();
    for (auto const& ch : checks)
    {
        all = all && ch.pass;
        out << (ch.pass ? "PASS " : "FAIL ") << ch.name << ": " << format_number(ch.value)
            << (ch.exact ? " (expected " : " (tolerance ") << format_number(ch.tolerance) << ")";
        if (!ch.detail.empty())
            out << " " << ch.detail;
        out << "\n";
        list.push_back({{"name", ch.name},
                        {"pass", ch.pass},
                        {"value", ch.value},
                        {"tolerance", ch.tolerance},
                        {"detail", ch.detail}});
    }
    report["checks"] = list;
    report["pass"] = all;
    write_text(output_path(out_dir, cfg.name + "_verify.json"), report.dump(2) + "\n");
    return all ? exit_pass : exit_check_failed;
}

// --------------------------------------------------------------------- sweep

/*!
 * Grid values: "lo:hi:n" (inclusive, numeric keys only) or a list separated
 * by ';'. Numeric lists may also use ','.
 */
inline std::vector<std::string> parse_grid(std::string const& key, std::string const& text)
{
    bool numeric = key != "profile" && key != "family" && key != "model";
    std::vector<std::string> out;
    if (numeric && std::count(text.begin(), text.end(), ':') == 2)
    {
        std::stringstream ss(text);
        std::string a, b, n;
        std::getline(ss, a, ':');
        std::getline(ss, b, ':');
        std::getline(ss, n);
        double lo = detail::to_number("values", a), hi = detail::to_number("values", b);
        auto count = detail::to_count("values", n);
        if (count == 0)
            throw ConfigError("values", "grid needs at least one point");
        for (std::uint64_t i = 0; i < count; ++i)
            out.push_back(format_number(count == 1 ? lo : lo + (hi - lo) * double(i) / double(count - 1)));
        return out;
    }
    std::string sep = numeric ? ";," : ";";
    std::string item;
    for (char ch : text)
    {
        if (sep.find(ch) != std::string::npos)
        {
            out.push_back(detail::trim(item));
            item.clear();
        }
        else
            item += ch;
    }
    out.push_back(detail::trim(item));
    out.erase(std::remove(out.begin(), out.end(), std::string{}), out.end());
    if (out.empty())
        throw ConfigError("values", "empty grid");
    return out;
}

inline int cmd_sweep(ScenarioConfig const& cfg, std::string const& key, std::string const& values,
                     std::string const& out_dir, std::ostream& out, std::ostream& err)
{
    if (cfg.model != "rotator")
        throw ConfigError("model", "sweeps support the rotator model only");
    auto grid = parse_grid(key, values);
    std::vector<Scenario> scenarios;
    for (auto const& v : grid)
    {
        ScenarioConfig point = cfg;
        apply_setting(point, key, v);
        scenarios.push_back(resolve(point));
    }

    struct Outcome
    {
        std::optional<SummaryRow> row;
        std::string error;
    };
    std::vector<std::future<Outcome>> tasks;
    for (auto const& sc : scenarios)
        tasks.push_back(std::async(std::launch::async, [&sc]() -> Outcome {
            try
            {
                auto traj = integrate(sc.spec, sc.initial, sc.profile, sc.options);
                return {summarize(sc, traj), {}};
            }
            catch (std::exception const& e)
            {
                return {std::nullopt, e.what()};
            }
        }));

    std::string body, header;
    bool ok = true;
    for (std::size_t i = 0; i < tasks.size(); ++i)
    {
        Outcome o = tasks[i].get();
        if (!o.row)
        {
            ok = false;
            err << "sweep point " << key << "=" << grid[i] << " failed: " << o.error << "\n";
            continue;
        }
        if (header.empty())
            header = o.row->header();
        body += o.row->line();
    }
    if (!header.empty())
        write_text(output_path(out_dir, cfg.name + "_sweep.csv"), header + body);
    out << "sweep " << key << ": " << grid.size() << " points"
        << (ok ? "" : " (with failures)") << " -> " << (output_path(out_dir, cfg.name + "_sweep.csv")).string()
        << "\n";
    return ok ? exit_pass : exit_check_failed;
}

// ------------------------------------------------------------------- hessian

inline int cmd_hessian(ScenarioConfig const& cfg, std::string const& mode, std::string const& out_dir,
                       std::ostream& out)
{
    DerivativeMode dm;
    if (mode == "dual")
        dm = DerivativeMode::dual;
    else if (mode == "fd")
        dm = DerivativeMode::finite_difference;
    else
        throw ConfigError("mode", "must be 'dual' or 'fd'");

    Json j;
    j["version"] = version_string;
    j["command"] = "hessian";
    j["mode"] = mode;
    RankDiagnostics rank;
    int expected = 0;
    bool extra_ok = true;
    if (cfg.model == "sphere")
    {
        auto model = sphere_model(cfg);
        auto rep = sphere_hessian(model, cfg.q0, cfg.qdot0);
        rank = rep.rank;
        expected = 2;
        extra_ok = rep.null_q < 1e-8 && rep.null_w < 1e-8;
        j["model"] = "sphere";
        j["null_q"] = rep.null_q;
        j["null_w"] = rep.null_w;
        j["on_cone"] = rep.on_cone;
    }
    else
    {
        Scenario sc = resolve(cfg);
        double q = sc.spec.is_fundamental() ? 0.5 : cfg.q;
        rank = hessian_rank(sc.spec, kinematic_point_at(sc.spec, q), dm);
        expected = sc.spec.is_fundamental() ? 4 : 5;
        j["model"] = "rotator";
        j["family"] = sc.spec.family().name();
        j["kind"] = to_string(sc.spec.kind());
        j["Q"] = q;
        j["full_rank"] = rank.full_rank;
        j["full_singular_values"] = rank.full_singular_values;
    }
    j["rank"] = rank.rank;
    j["expected_rank"] = expected;
    j["gap"] = std::isfinite(rank.gap) ? Json(rank.gap) : Json("inf");
    j["singular_values"] = rank.singular_values;
    j["warning"] = rank.warning;
    bool pass = rank.rank == expected && !rank.indeterminate && extra_ok;
    j["pass"] = pass;
    write_text(output_path(out_dir, cfg.name + "_hessian.json"), j.dump(2) + "\n");

    out << "rank " << rank.rank << " (expected " << expected << ") gap " << format_number(rank.gap) << "\n";
    out << "singular values:";
    for (double v : rank.singular_values)
        out << " " << format_number(v);
    out << "\n";
    if (!rank.warning.empty())
        out << "warning: " << rank.warning << "\n";
    return pass ? exit_pass : exit_check_failed;
}

}  // namespace rotator::cli

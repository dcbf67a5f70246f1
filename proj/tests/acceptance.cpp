// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "commands.hpp"

namespace fs = std::filesystem;
using namespace rotator;

namespace {

struct Measure
{
    std::string label;
    double value;
    double tolerance;
    bool above = false;  // pass when value > tolerance instead of below

    bool pass() const { return above ? value > tolerance : value < tolerance; }
};

struct Outcome
{
    std::vector<Measure> measures;
    std::string note;

    bool pass() const
    {
        for (auto const& m : measures)
            if (!m.pass())
                return false;
        return !measures.empty();
    }
};

double max_abs(Vec4 const& v)
{
    return std::max({std::abs(v.t), std::abs(v.x), std::abs(v.y), std::abs(v.z)});
}

double max_abs(State const& a, State const& b)
{
    double worst = 0.0;
    for (int i = 0; i < 16; ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

std::vector<RotatorSpec> all_families()
{
    return {RotatorSpec::quadratic(), RotatorSpec(1.3, 0.8, Family::parse("poly:1,0.3,0.7")),
            RotatorSpec::fundamental_plus(), RotatorSpec::fundamental_minus(1.5, 0.6)};
}

double f_cj(RotatorSpec const& spec, State const& s)
{
    return -spec.mass_spin()(casimir_spin(spec, s)).df;
}

// 1. Constraint algebra on random on-surface states.
Outcome constraint_algebra()
{
    std::mt19937_64 rng(101);
    double phen[3] = {0, 0, 0}, fund = 0.0;
    for (auto const& spec : all_families())
    {
        auto phi = [&](int i) { return constraint_function(spec, i); };
        int n = constraint_count(spec);
        for (int trial = 0; trial < 100; ++trial)
        {
            State s = random_on_surface_state(spec, rng);
            if (spec.is_fundamental())
            {
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        fund = std::max(fund, std::abs(poisson_bracket(phi(i), phi(j), s)));
                continue;
            }
            double m = spec.m(), l = spec.l(), pk = dot(s.p, s.k);
            double coeff = 16.0 * pk * pk / (m * m * m * m * l * l) * f_cj(spec, s);
            phen[0] = std::max(phen[0], std::abs(poisson_bracket(phi(0), phi(1), s) - 2.0 * dot(s.k, s.k)));
            phen[1] = std::max(phen[1], std::abs(poisson_bracket(phi(1), phi(2), s)));
            phen[2] = std::max(phen[2], std::abs(poisson_bracket(phi(2), phi(0), s) - coeff * dot(s.k, s.chi)));
        }
    }
    return {{{"{kk,chi.k}-2kk", phen[0], 1e-8},
             {"{chi.k,F_G}", phen[1], 1e-8},
             {"{F_G,kk}-c chi.k", phen[2], 1e-8},
             {"fundamental 4x4", fund, 1e-8}},
            "100 states per family"};
}

// 2. Regularity determinant against its closed forms.
Outcome regularity()
{
    std::mt19937_64 rng(102);
    std::uniform_real_distribution<double> weight(0.5, 2.0);
    double worst = 0.0;
    for (auto const& spec : all_families())
        for (int trial = 0; trial < 50; ++trial)
        {
            State s = random_on_surface_state(spec, rng);
            double a = weight(rng), b = weight(rng), g = weight(rng);
            double want;
            if (spec.is_fundamental())
            {
                double pk = dot(s.p, s.k);
                want = 16.0 * std::pow(spec.m() * spec.l(), 2) * a * b * b * b / (pk * pk);
            }
            else
            {
                double cj = casimir_spin(spec, s), fc = f_cj(spec, s);
                want = -16.0 * b * b * b * dot(s.chi, s.chi) * cj * cj * fc * fc;
            }
            worst = std::max(worst, std::abs(regularity_determinant(spec, s, a, b, g) - want) / std::abs(want));
        }
    return {{{"relative error", worst, 1e-7}}, "random weights"};
}

// 3. Phenomenological circular motion.
Outcome phenomenological_motion()
{
    auto spec = RotatorSpec::quadratic();
    State s0 = build_initial_state(spec, 0.5, {1, 0, 0});
    CasimirPair c{casimir_mass(spec, s0), casimir_spin(spec, s0)};
    double period = 2.0 * M_PI / angular_velocity(spec, c);
    IntegratorOptions opts;
    opts.dt = period / 1000.0;
    opts.duration = 10.0 * period;
    auto traj = integrate(spec, s0, std::nullopt, opts);

    double pos = 0.0, psi_dev = 0.0, mean = 0.0;
    for (auto const& smp : traj.samples)
    {
        pos = std::max(pos, max_abs(smp.state.x - closed_form_phenom(spec, s0, smp.t).x));
        psi_dev = std::max(psi_dev, std::abs(smp.tanh_psi - 0.25));
        mean += smp.tanh_psi;
    }
    mean /= double(traj.samples.size());
    double var = 0.0;
    for (auto const& smp : traj.samples)
        var += (smp.tanh_psi - mean) * (smp.tanh_psi - mean);
    double stddev = std::sqrt(var / double(traj.samples.size() - 1));

    std::span<TrajectorySample const> all(traj.samples);
    double radius = measured_orbit_radius(all.first(all.size() - 1));
    double drift = std::max(traj.drift.casimir_mass_drift, traj.drift.casimir_spin_drift);
    return {{{"position error", pos, 1e-6},
             {"constraint drift", traj.drift.max_residual, 1e-9},
             {"Casimir drift", drift, 1e-9},
             {"|radius-2/3|", std::abs(radius - 2.0 / 3.0), 1e-6},
             {"|tanh psi-0.25|", psi_dev, 1e-9},
             {"std tanh psi", stddev, 1e-9},
             {"torsion", torsion_residual(traj.samples), 1e-6}},
            "10 periods at period/1000"};
}

// 4. Rapidity identities across a Q sweep.
Outcome rapidity_sweep()
{
    double rho_omega = 0.0, family = 0.0, largest = 0.0;
    for (auto const& spec : {RotatorSpec::quadratic(), RotatorSpec(1.3, 0.8, Family::parse("poly:1,0.3,0.7"))})
    {
        auto r = spec.q_range();
        double lo = std::max(r.lo, 0.02), hi = r.hi * 0.98;
        for (int i = 0; i < 50; ++i)
        {
            double q = lo + (hi - lo) * i / 49.0;
            State s = build_initial_state(spec, q, {0, 1, 0});
            double tp = rapidity(s, eom_phenom(spec, s).x);
            CasimirPair c{casimir_mass(spec, s), casimir_spin(spec, s)};
            double ro = curvature_radius_casimir(spec, c) * angular_velocity(spec, c);
            auto v = spec.family()(q);
            double closed = std::abs(q * v.dg / (2.0 * v.g - q * v.dg));
            rho_omega = std::max(rho_omega, std::abs(tp - ro));
            family = std::max(family, std::abs(std::abs(tp) - closed));
            largest = std::max(largest, std::abs(tp));
        }
    }
    return {{{"|tanh psi - rho omega|", rho_omega, 1e-10},
             {"|tanh psi - QG'/(2G-QG')|", family, 1e-10},
             {"max |tanh psi|", largest, 1.0}},
            "50 points per family"};
}

struct FundamentalRun
{
    std::string label;
    Trajectory traj;
    double casimir_dev = 0.0;
    double paradox = 0.0;
};

FundamentalRun fundamental_run(std::string label, GaugeProfile const& profile, double duration)
{
    auto spec = RotatorSpec::fundamental_plus();
    IntegratorOptions opts;
    opts.duration = duration;
    opts.dt = 1e-3;
    FundamentalRun run{std::move(label), integrate(spec, build_initial_state(spec, 0.0, {1, 0, 0}), profile, opts)};
    for (auto const& smp : run.traj.samples)
    {
        run.casimir_dev = std::max({run.casimir_dev, std::abs(smp.casimirs.c_m - 1.0), std::abs(smp.casimirs.c_j - 1.0)});
        run.paradox = std::max(run.paradox, std::abs(smp.tanh_psi - 0.5 * spec.l() * profile.omega(smp.t)));
    }
    return run;
}

GaugeProfile random_spline(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> value(-1.5, 1.5);
    std::vector<double> t, v;
    for (int i = 0; i < 8; ++i)
    {
        t.push_back(20.0 * i / 7.0);
        v.push_back(value(rng));
    }
    return GaugeProfile::spline(t, v);
}

// 5. Fixed Casimirs and the rapidity-equals-gauge identity.
Outcome fundamental_invariants()
{
    Outcome out;
    auto spline = random_spline(105);
    double peak = 0.0;
    for (int i = 0; i <= 20000; ++i)
        peak = std::max(peak, std::abs(spline.omega(i * 1e-3)));
    out.note = "spline peak |l omega/2| = " + format_number(0.5 * peak);
    for (auto const& run : {fundamental_run("const", GaugeProfile::constant(1.0), 20.0),
                            fundamental_run("sin", GaugeProfile::sinusoid(1.0, 0.5, 1.0), 20.0),
                            fundamental_run("spline", spline, 20.0)})
    {
        out.measures.push_back({run.label + " Casimir", run.casimir_dev, 1e-9});
        out.measures.push_back({run.label + " tanh psi - l omega/2", run.paradox, 1e-8});
    }
    return out;
}

// 6. Different frequency profiles from the same initial data separate.
Outcome indeterminacy()
{
    auto a = fundamental_run("const", GaugeProfile::constant(1.0), 10.0);
    auto b = fundamental_run("sin", GaugeProfile::sinusoid(1.0, 0.5, 1.0), 10.0);
    double sep = 0.0;
    for (std::size_t i = 0; i < a.traj.samples.size(); ++i)
    {
        Vec3 d = spatial(a.traj.samples[i].state.x - b.traj.samples[i].state.x);
        sep = std::max(sep, std::hypot(d[0], d[1], d[2]));
    }
    return {{{"separation / l", sep, 0.1, true},
             {"const Casimir", a.casimir_dev, 1e-9},
             {"sin Casimir", b.casimir_dev, 1e-9},
             {"const paradox", a.paradox, 1e-8},
             {"sin paradox", b.paradox, 1e-8}},
            "T = 10"};
}

// 7. Hessian ranks.
Outcome hessian_ranks()
{
    Outcome out;
    auto add_rank = [&](std::string const& label, RankDiagnostics const& d, int expected) {
        out.measures.push_back({label + " |rank-" + std::to_string(expected) + "|", double(std::abs(d.rank - expected)), 0.5});
        out.measures.push_back({label + " gap", d.gap, 1e2, true});
    };
    auto quad = RotatorSpec::quadratic();
    add_rank("quadratic", hessian_rank(quad, kinematic_point_at(quad, 0.5)), 5);
    for (auto const& spec : {RotatorSpec::fundamental_plus(), RotatorSpec::fundamental_minus()})
        add_rank(spec.family().name(), hessian_rank(spec, kinematic_point_at(spec, 0.5)), 4);
    auto sphere = sphere_hessian(SphereModel(Vec4{1.2, 0.1, -0.2, 0.3}), Vec4{1.0, 0.0, 0.6, 0.8},
                                 Vec4{0.1, 0.2, 0.0, 0.3});
    add_rank("sphere", sphere.rank, 2);
    out.measures.push_back({"|Hq|/|H|", sphere.null_q, 1e-8});
    out.measures.push_back({"|Hw|/|H|", sphere.null_w, 1e-8});
    return out;
}

// 8. Bracket flow of the CM Hamiltonians against the coded equations.
Outcome hamiltonian_consistency()
{
    std::mt19937_64 rng(108);
    Outcome out;
    for (auto const& spec : {RotatorSpec::quadratic(), RotatorSpec::fundamental_plus(), RotatorSpec::fundamental_minus()})
    {
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial)
        {
            // Alternate between CM-gauge states and states with p.chi != 0.
            State s = random_on_surface_state(spec, rng, {0.6, trial % 2 == 0});
            State flow, eom;
            if (spec.is_fundamental())
            {
                double w = 0.3 + 0.05 * trial;
                flow = hamiltonian_flow([&](auto const& z) { return hamiltonian_cm_fund(spec, z, w); }, s);
                eom = eom_fund(spec, s, w);
            }
            else
            {
                flow = hamiltonian_flow([&](auto const& z) { return hamiltonian_cm(spec, z); }, s);
                eom = eom_phenom(spec, s);
            }
            worst = std::max(worst, max_abs(flow, eom));
        }
        out.measures.push_back({spec.family().name(), worst, 1e-8});
    }
    out.note = "20 states per branch";
    return out;
}

// 9. Light-cone model integration.
Outcome sphere_integration()
{
    SphereModel model(Vec4{1.0, 0.1, 0.0, 0.2});
    Vec4 q{1.0, 0.6, 0.8, 0.0}, qd{0.0, -0.8, 0.6, 0.3};
    auto a = integrate_sphere(model, {q, qd}, 10.0, 1e-3);
    auto b = integrate_sphere(model, {2.0 * q, 2.0 * qd}, 10.0, 1e-3);
    double drift = 0.0, proj = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        drift = std::max({drift, std::abs(a[i].qq), std::abs(a[i].q_qdot), std::abs(a[i].p_q)});
        proj = std::max(proj, max_abs(0.5 * b[i].state.q - a[i].state.q));
    }
    return {{{"qq, q.qdot, p.q drift", drift, 1e-9}, {"rescaling invariance", proj, 1e-9}}, "10 time units"};
}

// 10. Identical configs give identical files.
Outcome determinism()
{
    fs::path root = fs::temp_directory_path() / "rotator_acceptance";
    fs::remove_all(root);
    auto slurp = [](fs::path const& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    Outcome out;
    std::vector<cli::ScenarioConfig> configs(3);
    configs[0].family = "quadratic";
    configs[0].duration = 20.0;
    configs[1].profile = "sin:1,0.5,1";
    configs[1].duration = 5.0;
    configs[2].model = "sphere";
    configs[2].duration = 5.0;
    int differing = 0;
    for (std::size_t i = 0; i < configs.size(); ++i)
    {
        std::string first, second;
        for (int rep = 0; rep < 2; ++rep)
        {
            fs::path dir = root / (std::to_string(i) + "_" + std::to_string(rep));
            fs::create_directories(dir);
            std::ostringstream sink;
            cli::cmd_simulate(configs[i], dir.string(), sink, sink);
            (rep ? second : first) = slurp(dir / "run.csv");
        }
        if (first.empty() || first != second)
            ++differing;
    }
    fs::remove_all(root);
    out.measures.push_back({"differing CSVs", double(differing), 0.5});
    out.note = "quadratic, fundamental, sphere";
    return out;
}

}  // namespace

int main()
{
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"constraint algebra", constraint_algebra},
        {"regularity determinant", regularity},
        {"phenomenological motion", phenomenological_motion},
        {"rapidity identities", rapidity_sweep},
        {"fundamental fixed invariants", fundamental_invariants},
        {"frequency indeterminacy", indeterminacy},
        {"Hessian ranks", hessian_ranks},
        {"Hamiltonian consistency", hamiltonian_consistency},
        {"light-cone model integration", sphere_integration},
        {"determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        Outcome o;
        std::string error;
        try
        {
            o = criteria[i].second();
        }
        catch (std::exception const& e)
        {
            error = e.what();
        }
        bool ok = error.empty() && o.pass();
        failures += ok ? 0 : 1;
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first;
        if (!o.note.empty())
            std::cout << " [" << o.note << "]";
        std::cout << "\n";
        for (auto const& m : o.measures)
            std::cout << "    " << (m.pass() ? "ok  " : "BAD ") << m.label << " = " << std::setprecision(4)
                      << m.value << (m.above ? " (> " : " (< ") << m.tolerance << ")\n";
        if (!error.empty())
            std::cout << "    error: " << error << "\n";
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
    return failures == 0 ? 0 : 1;
}

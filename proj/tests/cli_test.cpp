#include <gtest/gtest.h>

#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"

namespace fs = std::filesystem;
using namespace rotator;
using namespace rotator::cli;

namespace {

class ScratchDir
{
  public:
    ScratchDir()
    {
        auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        path_ = fs::temp_directory_path() / (std::string("rotator_") + info->test_suite_name() + "_" + info->name());
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~ScratchDir() { fs::remove_all(path_); }
    ScratchDir(ScratchDir const&) = delete;
    ScratchDir& operator=(ScratchDir const&) = delete;

    std::string str() const { return path_.string(); }
    fs::path operator/(std::string const& leaf) const { return path_ / leaf; }

  private:
    fs::path path_;
};

std::string slurp(fs::path const& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_tool(std::string const& args)
{
    std::string cmd = std::string(ROTATOR_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

ScenarioConfig quick_quadratic()
{
    ScenarioConfig cfg;
    cfg.family = "quadratic";
    cfg.q = 0.5;
    cfg.duration = 5.0;
    cfg.dt = 0.01;
    return cfg;
}

}  // namespace

TEST(Config, ParsesFlatFile)
{
    std::istringstream in(
        "# scenario\n"
        "family = quadratic\n"
        "Q = 0.3   # rotation\n"
        "axis = 0, 1, 0\n"
        "\n"
        "stabilize = yes\n"
        "T = 2\n");
    ScenarioConfig cfg;
    load_config(cfg, in);
    EXPECT_EQ(cfg.family, "quadratic");
    EXPECT_DOUBLE_EQ(cfg.q, 0.3);
    EXPECT_EQ(cfg.axis, (Vec3{0, 1, 0}));
    EXPECT_TRUE(cfg.stabilize);
    EXPECT_EQ(cfg.duration, 2.0);
    EXPECT_FALSE(cfg.dt.has_value());
}

TEST(Config, FieldLevelErrors)
{
    ScenarioConfig cfg;
    auto field_of = [&](std::string const& key, std::string const& value) {
        try
        {
            apply_setting(cfg, key, value);
        }
        catch (ConfigError const& e)
        {
            return e.field;
        }
        return std::string("<none>");
    };
    EXPECT_EQ(field_of("bogus", "1"), "bogus");
    EXPECT_EQ(field_of("m", "heavy"), "m");
    EXPECT_EQ(field_of("axis", "1,2"), "axis");
    EXPECT_EQ(field_of("sample_every", "-3"), "sample_every");
    EXPECT_EQ(field_of("model", "cube"), "model");

    std::istringstream broken("family quadratic\n");
    EXPECT_THROW(load_config(cfg, broken), ConfigError);
}

TEST(Config, ResolveValidatesScenario)
{
    ScenarioConfig cfg = quick_quadratic();
    cfg.q = 1.2;
    EXPECT_THROW(resolve(cfg), ConfigError);
    cfg = ScenarioConfig{};
    cfg.profile = "const:3";
    try
    {
        resolve(cfg);
        FAIL() << "superluminal profile accepted";
    }
    catch (ConfigError const& e)
    {
        EXPECT_EQ(e.field, "profile");
    }
    cfg = ScenarioConfig{};
    cfg.m = -1;
    EXPECT_THROW(resolve(cfg), ConfigError);
}

TEST(Config, DefaultDurations)
{
    ScenarioConfig cfg;
    cfg.family = "quadratic";
    auto sc = resolve(cfg);
    EXPECT_NEAR(sc.period, 2.0 * M_PI / 0.375, 1e-6);
    EXPECT_NEAR(sc.options.duration, 10.0 * sc.period, 1e-12);
    EXPECT_NEAR(sc.options.dt, sc.period / 1000.0, 1e-12);
    auto fund = resolve(ScenarioConfig{});
    EXPECT_EQ(fund.options.duration, 20.0);
    EXPECT_EQ(fund.options.dt, 1e-3);
}

TEST(Simulate, WritesTrajectorySummaryAndManifest)
{
    ScratchDir dir;
    ScenarioConfig cfg = quick_quadratic();
    std::ostringstream out, err;
    ASSERT_EQ(cmd_simulate(cfg, dir.str(), out, err), exit_pass) << err.str();
    auto csv = slurp(dir / "run.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')).find("t,x0,x1,x2,x3"), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 502);
    auto manifest = nlohmann::json::parse(slurp(dir / "run.json"));
    EXPECT_EQ(manifest["version"], version_string);
    EXPECT_EQ(manifest["config"]["family"], "quadratic");
    EXPECT_TRUE(fs::exists(dir / "run_summary.csv"));
}

TEST(Simulate, ByteIdenticalReruns)
{
    ScratchDir dir;
    ScenarioConfig cfg;
    cfg.profile = "sin:1,0.5,1";
    cfg.duration = 3.0;
    std::ostringstream out, err;
    cfg.name = "a";
    ASSERT_EQ(cmd_simulate(cfg, dir.str(), out, err), exit_pass);
    cfg.name = "b";
    ASSERT_EQ(cmd_simulate(cfg, dir.str(), out, err), exit_pass);
    EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
    EXPECT_EQ(slurp(dir / "a_summary.csv"), slurp(dir / "b_summary.csv"));
}

TEST(Sweep, SinglePointEqualsSimulateSummary)
{
    ScratchDir dir;
    ScenarioConfig cfg = quick_quadratic();
    std::ostringstream out, err;
    ASSERT_EQ(cmd_simulate(cfg, dir.str(), out, err), exit_pass);
    ASSERT_EQ(cmd_sweep(cfg, "Q", "0.5", dir.str(), out, err), exit_pass);
    EXPECT_EQ(slurp(dir / "run_sweep.csv"), slurp(dir / "run_summary.csv"));
}

TEST(Sweep, RapidityEqualsQSquaredForQuadratic)
{
    ScratchDir dir;
    ScenarioConfig cfg = quick_quadratic();
    cfg.duration = 2.0;
    std::ostringstream out, err;
    ASSERT_EQ(cmd_sweep(cfg, "Q", "0.1:0.9:9", dir.str(), out, err), exit_pass) << err.str();
    std::istringstream csv(slurp(dir / "run_sweep.csv"));
    std::string line;
    std::getline(csv, line);
    std::vector<std::string> cols;
    {
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ','))
            cols.push_back(c);
    }
    auto col = [&](std::string const& name) {
        return std::size_t(std::find(cols.begin(), cols.end(), name) - cols.begin());
    };
    std::size_t iq = col("Q"), ipsi = col("tanh_psi_mean");
    ASSERT_LT(ipsi, cols.size());
    int rows = 0;
    double last = -1.0;
    while (std::getline(csv, line))
    {
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ','))
            f.push_back(c);
        double q = std::stod(f[iq]), psi = std::stod(f[ipsi]);
        EXPECT_NEAR(psi, q * q, 1e-9);
        EXPECT_GT(psi, last);
        last = psi;
        ++rows;
    }
    EXPECT_EQ(rows, 9);
}

TEST(Sweep, ProfileGridSharesCasimirs)
{
    ScratchDir dir;
    ScenarioConfig cfg;
    cfg.duration = 5.0;
    std::ostringstream out, err;
    ASSERT_EQ(cmd_sweep(cfg, "profile", "const:1;sin:1,0.5,1", dir.str(), out, err), exit_pass) << err.str();
    std::istringstream csv(slurp(dir / "run_sweep.csv"));
    std::string header, a, b;
    std::getline(csv, header);
    std::getline(csv, a);
    std::getline(csv, b);
    auto split = [](std::string const& line) {
        std::vector<std::string> f(1);
        bool quoted = false;
        for (char ch : line)
        {
            if (ch == '"')
                quoted = !quoted;
            else if (ch == ',' && !quoted)
                f.emplace_back();
            else
                f.back() += ch;
        }
        return f;
    };
    auto names = split(header);
    auto ra = split(a), rb = split(b);
    double spread = 0.0;
    for (std::size_t i = 0; i < names.size(); ++i)
    {
        auto gap = [&] { return std::abs(std::stod(ra[i]) - std::stod(rb[i])); };
        if (names[i] == "C_M" || names[i] == "C_J")
        {
            EXPECT_LT(gap(), 1e-12) << names[i];
        }
        else if (names[i].rfind("final_x", 0) == 0 && names[i] != "final_x0")
            spread = std::max(spread, gap());
    }
    EXPECT_GT(spread, 1e-3);
}

TEST(Verify, DefaultScenariosPassAndCorruptionFails)
{
    ScratchDir dir;
    std::ostringstream out;
    EXPECT_EQ(cmd_verify(ScenarioConfig{}, dir.str(), false, out), exit_pass) << out.str();
    EXPECT_NE(out.str().find("PASS"), std::string::npos);

    std::ostringstream quad_out;
    ScenarioConfig quad = quick_quadratic();
    EXPECT_EQ(cmd_verify(quad, dir.str(), false, quad_out), exit_pass) << quad_out.str();
    EXPECT_NE(quad_out.str().find("PASS bracket {F_G, kk}"), std::string::npos);

    std::ostringstream bad;
    EXPECT_EQ(cmd_verify(quad, dir.str(), true, bad), exit_check_failed);
    EXPECT_NE(bad.str().find("FAIL"), std::string::npos);
    auto report = nlohmann::json::parse(slurp(dir / "run_verify.json"));
    EXPECT_FALSE(report["pass"].get<bool>());

    ScenarioConfig sphere;
    sphere.model = "sphere";
    std::ostringstream sph;
    EXPECT_EQ(cmd_verify(sphere, dir.str(), false, sph), exit_pass) << sph.str();
}

TEST(Hessian, ReportsExpectedRanks)
{
    ScratchDir dir;
    std::ostringstream out;
    EXPECT_EQ(cmd_hessian(quick_quadratic(), "dual", dir.str(), out), exit_pass);
    auto j = nlohmann::json::parse(slurp(dir / "run_hessian.json"));
    EXPECT_EQ(j["rank"], 5);
    EXPECT_EQ(cmd_hessian(ScenarioConfig{}, "fd", dir.str(), out), exit_pass);
    EXPECT_EQ(nlohmann::json::parse(slurp(dir / "run_hessian.json"))["rank"], 4);
    ScenarioConfig sphere;
    sphere.model = "sphere";
    EXPECT_EQ(cmd_hessian(sphere, "dual", dir.str(), out), exit_pass);
    EXPECT_EQ(nlohmann::json::parse(slurp(dir / "run_hessian.json"))["rank"], 2);
    EXPECT_THROW(cmd_hessian(sphere, "symbolic", dir.str(), out), ConfigError);
}

TEST(Binary, ExitCodes)
{
    ScratchDir dir;
    EXPECT_EQ(run_tool(""), exit_usage);
    EXPECT_EQ(run_tool("simulate --bogus 1"), exit_usage);
    EXPECT_EQ(run_tool("simulate --m -1 --out-dir " + dir.str()), exit_usage);
    EXPECT_EQ(run_tool("sweep --Q 0.5"), exit_usage);
    EXPECT_EQ(run_tool("simulate --family quadratic --Q 0.5 --T 2 --out-dir " + dir.str()), exit_pass);
    EXPECT_TRUE(fs::exists(dir / "run.csv"));
    EXPECT_EQ(run_tool("verify --family quadratic --T 2 --inject-corruption --out-dir " + dir.str()),
              exit_check_failed);
}

TEST(Binary, ConfigFileAndEnvironmentOverride)
{
    ScratchDir dir;
    fs::create_directories(dir / "env");
    {
        std::ofstream cfg(dir / "scenario.cfg");
        cfg << "family = fundamental-\nprofile = const:0.5\nT = 1\nname = fromfile\n";
    }
    std::string env = "ROTATOR_OUT_DIR=" + (dir / "env").string() + " ";
    std::string cmd = env + std::string(ROTATOR_CLI_PATH) + " simulate --config " + (dir / "scenario.cfg").string()
                      + " >/dev/null 2>&1";
    ASSERT_EQ(WEXITSTATUS(std::system(cmd.c_str())), 0);
    EXPECT_TRUE(fs::exists(dir / "env" / "fromfile.csv"));
    auto manifest = nlohmann::json::parse(slurp(dir / "env" / "fromfile.json"));
    EXPECT_EQ(manifest["config"]["family"], "fundamental-");
}

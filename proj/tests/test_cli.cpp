#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "fracutm/config.hpp"
#include "json.hpp"

using namespace fracutm;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    static fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("fracutm_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

json load_json(const fs::path& p) {
    std::ifstream in(p);
    return json::parse(in);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Repository config with outputs redirected into the scratch directory.
fs::path staged_config(const std::string& name, const std::function<void(json&)>& edit = {}) {
    json j = load_json(fs::path(FRACUTM_SOURCE_DIR) / "configs" / (name + ".json"));
    j["output"]["field_path"] = (scratch_dir() / (name + ".csv")).string();
    j["output"]["report_path"] = (scratch_dir() / (name + ".report.json")).string();
    if (edit) edit(j);
    fs::path p = scratch_dir() / (name + ".config.json");
    std::ofstream(p) << j.dump(2);
    return p;
}

std::vector<std::vector<double>> read_csv(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "x,t,re_q,im_q,err_est");
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> r;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) r.push_back(std::stod(cell));
        rows.push_back(r);
    }
    return rows;
}

}  // namespace

TEST(Config, RepositoryConfigsParse) {
    for (const char* n : {"heat_alpha2", "frac_alpha22", "zero", "neumann_forced"})
        EXPECT_NO_THROW(load_config(staged_config(n).string())) << n;
}

TEST(Config, RejectsAlphaOutsideSolveRange) {
    auto p = staged_config("heat_alpha2", [](json& j) { j["alpha"] = 1.2; });
    std::ostringstream out, err;
    EXPECT_EQ(cli::cmd_solve(p.string(), out, err), cli::validation);
    auto e = json::parse(err.str());
    EXPECT_EQ(e["error"], "validation");
    EXPECT_EQ(e["message"], "alpha outside solve range (3/2, 7/3)");
}

TEST(Config, MissingKeysAndBadTypes) {
    json base = load_json(staged_config("heat_alpha2"));
    for (const char* key : {"alpha", "A", "T", "q0", "bc", "grid", "output"}) {
        json j = base;
        j.erase(key);
        EXPECT_THROW(parse_config(j), ValidationError) << key;
    }
    json j = base;
    j["grid"]["x"] = json::array({0.5, 1.0});
    EXPECT_THROW(parse_config(j), ValidationError);
    j = base;
    j["q0"]["family"] = "sine";
    EXPECT_THROW(parse_config(j), ValidationError);
    j = base;
    j["bc"]["kind"] = "robin";
    EXPECT_THROW(parse_config(j), ValidationError);
    EXPECT_THROW(load_config((scratch_dir() / "absent.json").string()), ValidationError);
}

// Independent statement of the ProblemSpec invariants for the randomized fields.
bool expected_valid(const json& j) {
    double a = j["alpha"], A = j["A"], T = j["T"];
    double eps = j["quadrature"]["eps_rot"];
    double nodes = j["quadrature"]["nodes_per_ray"];
    double x0 = j["grid"]["x"][0], x1 = j["grid"]["x"][1];
    double t0 = j["grid"]["t"][0], t1 = j["grid"]["t"][1];
    if (!(a > 1.5 && a < 7.0 / 3.0)) return false;
    if (!(A > 0.0 && T > 0.0)) return false;
    double half_gap = 0.5 * (3.0 - a) * M_PI / (2.0 * a);
    if (!(eps > 0.0 && eps < half_gap)) return false;
    if (nodes < 30) return false;
    if (!(x0 > 0.0 && x0 <= x1)) return false;
    if (!(t0 > 0.0 && t0 <= t1 && t1 <= T)) return false;
    return true;
}

TEST(Config, ValidationMatchesInvariantsOnRandomConfigs) {
    json base = load_json(staged_config("heat_alpha2"));
    std::mt19937_64 rng(2024);
    // each field is valid most of the time so both outcomes are well represented
    std::uniform_real_distribution<double> ua(1.4, 2.4), uA(-0.1, 2.0), uT(-0.05, 1.0), ue(-0.01, 0.25),
        ux(-0.05, 1.0), ud(-0.1, 1.0);
    std::uniform_int_distribution<int> un(20, 80);
    int accepted = 0, rejected = 0;
    for (int i = 0; i < 400; ++i) {
        json j = base;
        j["alpha"] = ua(rng);
        j["A"] = uA(rng);
        double T = uT(rng);
        j["T"] = T;
        j["quadrature"]["eps_rot"] = ue(rng);
        j["quadrature"]["nodes_per_ray"] = un(rng);
        double x0 = ux(rng), x1 = x0 + ud(rng);
        double t0 = ux(rng) * T, t1 = t0 + ud(rng) * T;
        j["grid"]["x"] = json::array({x0, x1, 3});
        j["grid"]["t"] = json::array({t0, t1, 2});
        bool want = expected_valid(j);
        bool got = true;
        try {
            parse_config(j);
        } catch (const ValidationError&) {
            got = false;
        }
        EXPECT_EQ(got, want) << j.dump();
        (got ? accepted : rejected)++;
    }
    EXPECT_GT(accepted, 40);
    EXPECT_GT(rejected, 40);
}

TEST(Format, ShortestRoundTrip) {
    for (double v : {0.1, 1.0 / 3.0, 2.0, 1e-300, -0.2144409711803, 6.02e23}) {
        std::string s = format_double(v);
        EXPECT_EQ(std::stod(s), v) << s;
    }
    EXPECT_EQ(format_double(0.1), "0.1");
}

TEST(Solve, ZeroConfig) {
    auto p = staged_config("zero");
    std::ostringstream out, err;
    ASSERT_EQ(cli::cmd_solve(p.string(), out, err), cli::ok) << err.str();
    auto rows = read_csv(scratch_dir() / "zero.csv");
    EXPECT_EQ(rows.size(), 16u);
    for (const auto& r : rows) {
        EXPECT_EQ(r[2], 0.0);
        EXPECT_EQ(r[3], 0.0);
    }
    auto rep = load_json(scratch_dir() / "zero.report.json");
    for (const char* k : {"gr_residual_max", "gr_residual_median", "pde_residual_rel", "runtime_s", "quadrature"})
        EXPECT_TRUE(rep.contains(k)) << k;
}

TEST(Solve, HeatConfigMatchesOracle) {
    auto p = staged_config("heat_alpha2", [](json& j) { j["diagnostics"] = {{"gr", false}, {"pde", false}}; });
    std::ostringstream out, err;
    ASSERT_EQ(cli::cmd_solve(p.string(), out, err), cli::ok) << err.str();
    auto rows = read_csv(scratch_dir() / "heat_alpha2.csv");
    ASSERT_EQ(rows.size(), 72u);
    // row-major in t then x
    EXPECT_EQ(rows[0][1], rows[7][1]);
    EXPECT_LT(rows[7][1], rows[8][1]);
    for (const auto& r : rows) EXPECT_NEAR(r[2], heat_oracle(1.0, 1.0, r[0], r[1]), 1e-3);
}

TEST(Solve, ByteIdenticalOutputs) {
    setenv("FRACUTM_DETERMINISTIC", "1", 1);
    auto p = staged_config("frac_alpha22", [](json& j) { j["diagnostics"] = {{"gr", false}, {"pde", true}}; });
    std::ostringstream out, err;
    ASSERT_EQ(cli::cmd_solve(p.string(), out, err), cli::ok) << err.str();
    std::string csv1 = slurp(scratch_dir() / "frac_alpha22.csv");
    std::string rep1 = slurp(scratch_dir() / "frac_alpha22.report.json");
    ASSERT_EQ(cli::cmd_solve(p.string(), out, err), cli::ok) << err.str();
    unsetenv("FRACUTM_DETERMINISTIC");
    EXPECT_EQ(csv1, slurp(scratch_dir() / "frac_alpha22.csv"));
    EXPECT_EQ(rep1, slurp(scratch_dir() / "frac_alpha22.report.json"));
}

TEST(Solve, ToleranceNotMetExitCode) {
    auto p = staged_config("heat_alpha2", [](json& j) {
        j["diagnostics"] = {{"gr", false}, {"pde", false}};
        j["quadrature"]["nodes_per_ray"] = 30;
        j["quadrature"]["eps_rel"] = 1e-12;
        j["quadrature"]["eps_abs"] = 1e-15;
    });
    std::ostringstream out, err;
    EXPECT_EQ(cli::cmd_solve(p.string(), out, err), cli::tolerance);
    EXPECT_EQ(json::parse(err.str())["error"], "tolerance");
}

TEST(Regions, JsonValues) {
    auto j2 = cli::regions_json(2.0);
    ASSERT_EQ(j2["sectors"].size(), 1u);
    EXPECT_NEAR(j2["sectors"][0][0].get<double>(), 0.7853981, 1e-7);
    EXPECT_NEAR(j2["sectors"][0][1].get<double>(), 2.3561944, 1e-7);
    EXPECT_NEAR(j2["nu"][0].get<double>(), -1.0, 1e-15);
    EXPECT_TRUE(cli::regions_json(1.4)["sectors"].empty());
    auto j22 = cli::regions_json(2.2);
    EXPECT_NEAR(j22["gamma_rays"][0].get<double>(), 2.5704, 1e-4);
    EXPECT_NEAR(j22["gamma_rays"][1].get<double>(), 0.5712, 1e-4);
    EXPECT_TRUE(cli::regions_json(2.4)["nu"].is_null());
}

TEST(Regions, ExitCodesAndFiles) {
    std::ostringstream out, err;
    EXPECT_EQ(cli::cmd_regions(2.6, "", "", out, err), cli::validation);
    EXPECT_EQ(cli::cmd_regions(1.0, "", "", out, err), cli::validation);
    auto jp = scratch_dir() / "regions.json", cp = scratch_dir() / "regions.csv";
    EXPECT_EQ(cli::cmd_regions(2.2, jp.string(), cp.string(), out, err), cli::ok);
    EXPECT_EQ(load_json(jp)["alpha"], 2.2);
    std::ifstream in(cp);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "ray_id,re,im");
}

TEST(Check, SuiteExitCodes) {
    std::ostringstream out, err;
    EXPECT_EQ(cli::cmd_check("geometry", out, err), cli::ok) << out.str();
    EXPECT_NE(out.str().find("PASS"), std::string::npos);
    EXPECT_EQ(cli::cmd_check("nonsense", out, err), cli::validation);
}

TEST(Converge, ZeroDataReportsMaxOrder) {
    std::ostringstream out, err;
    EXPECT_EQ(cli::cmd_converge(staged_config("zero").string(), 3, 60, out, err), cli::ok);
    auto j = json::parse(out.str());
    for (const auto& d : j["differences"]) EXPECT_EQ(d.get<double>(), 0.0);
    EXPECT_EQ(j["orders"][0], "max");
}

TEST(Converge, NeedsThreeLevels) {
    std::ostringstream out, err;
    EXPECT_EQ(cli::cmd_converge(staged_config("zero").string(), 2, 60, out, err), cli::validation);
}

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "catspec/config.hpp"
#include "catspec/errors.hpp"
#include "catspec/runner.hpp"

using namespace catspec;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / "catspec_tests" / name;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("spectrum subcommand reproduces the analytic N=2 rows") {
    const auto dir = fresh_dir("spectrum");
    const auto cfg = Config::parse_string("n_atoms = 2\nu0 = 0\nu1 = 2\nlambda = 1\n");
    const auto manifest = run_subcommand("spectrum", cfg, dir.string());
    CHECK(manifest.outputs.size() == 1);
    const auto text = slurp(dir / "spectrum.csv");
    CHECK(text.find("k,energy") != std::string::npos);
    CHECK(text.find("0,-1.2360679775") != std::string::npos);
    CHECK(text.find("2,3.2360679775") != std::string::npos);
    CHECK(text.find("# tilde_rescale: off") != std::string::npos);
}

TEST_CASE("determinism: identical configs give byte-identical outputs") {
    const auto cfg = Config::parse_string(
        "n_atoms = 40\nu0 = 0.025\nu1 = 0.075\ngrid.values = 0.7 1.0 1.3\n");
    const auto d1 = fresh_dir("det1");
    const auto d2 = fresh_dir("det2");
    run_subcommand("fig2", cfg, d1.string(), 2);
    run_subcommand("fig2", cfg, d2.string(), 1);  // thread count must not matter
    for (const auto* name : {"fig2_N40.csv", "fig2_N40_zoom.csv", "manifest.json"})
        CHECK(slurp(d1 / name) == slurp(d2 / name));
}

TEST_CASE("empty Lambda grid: header-only CSV, success") {
    const auto dir = fresh_dir("empty");
    const auto cfg = Config::parse_string("n_atoms = 10\ngrid.values =\n");
    run_subcommand("fig1", cfg, dir.string());
    const auto text = slurp(dir / "fig1.csv");
    // header comments + column row, no data rows
    std::istringstream in(text);
    std::string line;
    int data_rows = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.rfind("#", 0) == 0) continue;
        if (line == "Lambda,E0") {
            saw_header = true;
            continue;
        }
        if (!line.empty()) ++data_rows;
    }
    CHECK(saw_header);
    CHECK(data_rows == 0);
}

TEST_CASE("unknown subcommand and bad config are config errors") {
    const auto dir = fresh_dir("err");
    CHECK_THROWS_AS(run_subcommand("nope", Config{}, dir.string()), ConfigError);
    const auto cfg = Config::parse_string("lambda = 1\nLambda = 2\n");
    CHECK_THROWS_AS(run_subcommand("spectrum", cfg, dir.string()), ConfigError);
}

TEST_CASE("fig4 emits normalized symmetric distributions") {
    const auto dir = fresh_dir("fig4");
    const auto cfg = Config::parse_string(
        "n_atoms = 60\nu0 = 0.016666666667\nu1 = 0.05\nfig4.lambda_values = 1.2\n");
    const auto manifest = run_subcommand("fig4", cfg, dir.string());
    const auto text = slurp(dir / "fig4_L1p2.csv");
    CHECK(text.find("m,prob") != std::string::npos);
    double sum = 0.0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("#", 0) == 0 || line == "m,prob" || line.empty()) continue;
        sum += std::stod(line.substr(line.find(',') + 1));
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("meanfield subcommand appends the cat-ansatz columns") {
    const auto dir = fresh_dir("meanfield");
    const auto cfg =
        Config::parse_string("n_atoms = 50\nu0 = 0.02\nu1 = 0.06\ngrid.values = 0.9 1.5\n");
    run_subcommand("meanfield", cfg, dir.string());
    const auto text = slurp(dir / "meanfield.csv");
    CHECK(text.find("Lambda,E0,gap01,gap12,ratio,gap03,eps,E_plus,E_minus") != std::string::npos);
    // Lambda = 1.5 is outside the cat regime: eps column is nan there
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("1.5,", 0) == 0) CHECK(line.find("nan") != std::string::npos);
}

TEST_CASE("tf and gaussian subcommands emit profile and summary files") {
    const auto dir = fresh_dir("tf");
    const auto cfg = Config::parse_string(
        "n_atoms = 100\nu0 = 0.2\nu1 = 0.6\nLambda = 2.0\nLambda_convention = field\n");
    const auto manifest = run_subcommand("tf", cfg, dir.string());
    CHECK(fs::exists(dir / "tf_summary.csv"));
    CHECK(fs::exists(dir / "tf_profile_plus.csv"));
    CHECK(fs::exists(dir / "tf_profile_minus.csv"));
    CHECK(fs::exists(dir / "tf_profiles.svg"));
    CHECK(fs::exists(dir / "manifest.json"));

    const auto gdir = fresh_dir("gaussian");
    const auto gcfg = Config::parse_string("n_atoms = 100\nu0 = 0.2\nu1 = 0.6\nlambda = 1.0\n");
    run_subcommand("gaussian", gcfg, gdir.string());
    const auto text = slurp(gdir / "gaussian.csv");
    CHECK(text.find("Lambda,branch,mu,energy,A,a,B,b") != std::string::npos);
}

TEST_CASE("adiabatic subcommand writes the fidelity table") {
    const auto dir = fresh_dir("adiabatic");
    const auto cfg = Config::parse_string(
        "n_atoms = 16\nu0 = 0.0625\nu1 = 0.1875\nramp.duration = 5\nramp.shape = smoothstep\n"
        "adiabatic.max_rows = 9\n");
    run_subcommand("adiabatic", cfg, dir.string());
    const auto text = slurp(dir / "adiabatic.csv");
    CHECK(text.find("t,Lambda,fid0,fid01,norm") != std::string::npos);
    CHECK(text.find("# ramp.shape: smoothstep") != std::string::npos);
}

TEST_CASE("varifield subcommand writes sweep plus widths dump") {
    const auto dir = fresh_dir("varifield");
    const auto cfg = Config::parse_string(
        "n_atoms = 60\nu0 = 0.2\nu1 = 0.6\ngrid.rel_values = 0.5 1.4\n");
    run_subcommand("varifield", cfg, dir.string());
    CHECK(fs::exists(dir / "varifield.csv"));
    const auto widths = slurp(dir / "varifield_widths.csv");
    CHECK(widths.find("m,a_m") != std::string::npos);
    const auto sweep = slurp(dir / "varifield.csv");
    CHECK(sweep.find("# vari_coupling: 2lambda") != std::string::npos);
}

TEST_CASE("seed-free flag is recorded in the manifest") {
    const auto dir = fresh_dir("seedfree");
    const auto cfg = Config::parse_string("n_atoms = 2\nu0 = 0\nu1 = 2\nlambda = 1\n");
    run_subcommand("spectrum", cfg, dir.string(), 0, true);
    const auto manifest = slurp(dir / "manifest.json");
    CHECK(manifest.find("seed_free") != std::string::npos);
}

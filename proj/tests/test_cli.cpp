#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/settings.hpp"
#include "clutterscan/error.hpp"

namespace fs = std::filesystem;
using clutterscan::Error;
using clutterscan::ErrorCode;
using clutterscan::cli::Settings;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("clutterscan_cli_" + std::to_string(::getpid())) / name;
    fs::remove_all(p);
    fs::create_directories(p.parent_path());
    return p;
}

int run_tool(const std::string& args) {
    const std::string cmd = std::string(CLUTTERSCAN_TOOL) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::size_t count_of(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST(Settings, DefaultsOverridesAndUnknownKeys) {
    Settings s("exponent-sweep");
    EXPECT_EQ(s.get("k"), "1");
    s.set("n_grid", "10,20,30");
    EXPECT_EQ(s.get_size_list("n-grid"), (std::vector<std::size_t>{10, 20, 30}));
    EXPECT_THROW(s.set("colour", "red"), Error);
    s.set("beta", "abc");
    EXPECT_THROW((void)s.get_double("beta"), Error);
    s.set("n-grid", "1e3, 3e3");
    EXPECT_EQ(s.get_size_list("n-grid"), (std::vector<std::size_t>{1000, 3000}));
    s.set("timing", "maybe");
    EXPECT_THROW((void)s.get_bool("timing"), Error);
}

TEST(Settings, ConfigFileAndManifestRoundTrip) {
    const fs::path dir = scratch("settings");
    fs::create_directories(dir);
    {
        std::ofstream cfg(dir / "run.cfg");
        cfg << "# comment\n\nbeta = 3\nn_grid = 100, 200,300\n";
    }
    Settings s("exponent-sweep");
    s.load_file(dir / "run.cfg");
    EXPECT_EQ(s.get_double("beta"), 3.0);
    std::ostringstream manifest;
    s.write_manifest(manifest);
    {
        std::ofstream out(dir / "manifest.txt");
        out << manifest.str();
    }
    Settings back("exponent-sweep");
    back.load_file(dir / "manifest.txt");
    for (const auto& key : Settings::known_keys()) EXPECT_EQ(back.get(key), s.get(key)) << key;

    {
        std::ofstream bad(dir / "bad.cfg");
        bad << "beta = 1\nwhatever = 2\n";
    }
    Settings t("power");
    EXPECT_THROW(t.load_file(dir / "bad.cfg"), Error);
    {
        std::ofstream bad(dir / "noeq.cfg");
        bad << "beta 1\n";
    }
    EXPECT_THROW(t.load_file(dir / "noeq.cfg"), Error);
}

TEST(ExitCodes, Mapping) {
    using clutterscan::cli::exit_code_for;
    EXPECT_EQ(exit_code_for(Error(ErrorCode::ParseError, "x")), 2);
    EXPECT_EQ(exit_code_for(Error(ErrorCode::UnsupportedDims, "x")), 2);
    EXPECT_EQ(exit_code_for(Error(ErrorCode::DegenerateFit, "x")), 3);
    EXPECT_EQ(exit_code_for(Error(ErrorCode::BudgetExceeded, "x")), 3);
}

TEST(RenderStimulus, NullAlternativeAndEmpty) {
    const fs::path a = scratch("render_null");
    ASSERT_EQ(run_tool("render-stimulus --n 100 --n1 0 --seed 5 --out-dir " + a.string()), 0);
    const std::string svg = slurp(a / "stimulus.svg");
    EXPECT_EQ(count_of(svg, "<line "), 100u);
    EXPECT_NE(svg.find("viewBox=\"0 0 1000 1000\""), std::string::npos);
    EXPECT_TRUE(fs::exists(a / "manifest.txt"));

    const fs::path b = scratch("render_alt");
    ASSERT_EQ(run_tool("render-stimulus --n 100 --n1 40 --seed 5 --out-dir " + b.string()), 0);
    EXPECT_EQ(count_of(slurp(b / "stimulus.svg"), "<line "), 100u);
    EXPECT_EQ(count_of(slurp(b / "stimulus.csv"), ",1,"), 40u);

    const fs::path c = scratch("render_empty");
    ASSERT_EQ(run_tool("render-stimulus --n 0 --out-dir " + c.string()), 0);
    const std::string empty = slurp(c / "stimulus.svg");
    EXPECT_EQ(count_of(empty, "<line "), 0u);
    EXPECT_NE(empty.find("</svg>"), std::string::npos);
}

TEST(RenderStimulus, SegmentsHaveTheRequestedLength) {
    const fs::path a = scratch("render_len");
    ASSERT_EQ(run_tool("render-stimulus --n 20 --n1 5 --length 0.1 --out-dir " + a.string()), 0);
    std::istringstream svg(slurp(a / "stimulus.svg"));
    std::string line;
    int seen = 0;
    while (std::getline(svg, line)) {
        if (line.rfind("<line ", 0) != 0) continue;
        double v[4];
        const char* keys[] = {"x1=\"", "y1=\"", "x2=\"", "y2=\""};
        for (int i = 0; i < 4; ++i) v[i] = std::stod(line.substr(line.find(keys[i]) + 4));
        EXPECT_NEAR(std::hypot(v[2] - v[0], v[3] - v[1]), 100.0, 1e-9);
        ++seen;
    }
    EXPECT_EQ(seen, 20);
}

TEST(RenderStimulus, OnlyInThePlane) {
    EXPECT_EQ(run_tool("render-stimulus --d 3 --out-dir " + scratch("render_3d").string()), 2);
}

TEST(ExponentSweep, ErrorsAndExitCodes) {
    EXPECT_EQ(run_tool("exponent-sweep --n-grid 1000 --out-dir " + scratch("single").string()), 3);
    EXPECT_EQ(run_tool("exponent-sweep --bogus 1 --out-dir " + scratch("bogus").string()), 2);
    EXPECT_EQ(run_tool("exponent-sweep --beta x --out-dir " + scratch("badnum").string()), 2);
    EXPECT_EQ(run_tool("exponent-sweep --r0 2 --out-dir " + scratch("order").string()), 2);
    EXPECT_EQ(run_tool("launch --out-dir " + scratch("unknown").string()), 2);
    const fs::path cfg = scratch("badcfg");
    fs::create_directories(cfg);
    {
        std::ofstream out(cfg / "x.cfg");
        out << "betta = 2\n";
    }
    EXPECT_EQ(run_tool("exponent-sweep --config " + (cfg / "x.cfg").string() + " --out-dir " + cfg.string()), 2);
}

TEST(ExponentSweep, ManifestRerunAndWorkersAreByteIdentical) {
    const fs::path a = scratch("sweep_a");
    ASSERT_EQ(run_tool("exponent-sweep --problem oriented --beta 300 --trials 40 --n1 3 --seed 9 --out-dir " +
                       a.string()),
              0);
    const fs::path b = scratch("sweep_b");
    ASSERT_EQ(run_tool("exponent-sweep --config " + (a / "manifest.txt").string() + " --workers 3 --out-dir " +
                       b.string()),
              0);
    for (const char* f : {"records.csv", "summary.csv", "fit.csv"}) EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
    const std::string records = slurp(a / "records.csv");
    EXPECT_EQ(records.substr(0, records.find('\n')),
              "trial,problem,k,d,alpha,beta,r0,n,n1,eps,statistic,cells_total,seed,millis");
    EXPECT_EQ(count_of(records, "\n"), 1u + 5 * 40);
}

TEST(VolumeScan, WritesEstimatesAndFits) {
    const fs::path a = scratch("volume");
    ASSERT_EQ(run_tool("volume-scan --k 1 --d 3 --samples 20000 --eps-grid 0.4,0.2,0.1 --out-dir " + a.string()), 0);
    const std::string csv = slurp(a / "volume.csv");
    EXPECT_EQ(count_of(csv, "\nball,"), 3u);
    EXPECT_EQ(count_of(csv, "\nchart_cube,"), 3u);
    EXPECT_TRUE(fs::exists(a / "volume_fit.csv"));
    EXPECT_EQ(run_tool("volume-scan --k 2 --d 2 --out-dir " + scratch("volume_bad").string()), 2);
}

TEST(NetsDemo, WritesFamilies) {
    const fs::path a = scratch("nets");
    ASSERT_EQ(run_tool("nets-demo --k 1 --d 2 --eps-grid 0.5 --probes 100 --out-dir " + a.string()), 0);
    const std::string csv = slurp(a / "nets.csv");
    EXPECT_NE(csv.find("packing,1,2,0.5,3,"), std::string::npos);
    EXPECT_EQ(count_of(slurp(a / "packing_0.csv"), "\n"), 4u);
    EXPECT_TRUE(fs::exists(a / "covering_0.csv"));
}

TEST(Power, WritesThresholdAndPower) {
    const fs::path a = scratch("power");
    ASSERT_EQ(run_tool("power --beta 300 --n 1000 --n1 1000 --trials 100 --null-trials 200 --out-dir " + a.string()), 0);
    const std::string csv = slurp(a / "power.csv");
    EXPECT_EQ(count_of(csv, "\n"), 2u);
    EXPECT_NE(csv.find(",1,0\n"), std::string::npos);  // power 1, stderr 0
}

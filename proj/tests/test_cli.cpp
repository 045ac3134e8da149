#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "xcsn/commands.hpp"
#include "xcsn/config.hpp"
#include "xcsniche/niche.hpp"
#include "xcsniche/population.hpp"

namespace fs = std::filesystem;
using namespace xcsn;

namespace {

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("xcsn_test_" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
}

std::string small_mp6_config(std::size_t runs) {
    return "problem.kind = multiplexer\nproblem.size = 6\nparams.N = 400\n"
           "run.learningProblems = 4000\nrun.condensationProblems = 4000\n"
           "run.checkpointInterval = 1000\nrun.runs = " +
           std::to_string(runs) + "\nrun.seed = 3\nrun.threads = 1\noutput.dir = out\n";
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::map<std::string, std::string> csv_row(const std::string& text, std::size_t row) {
    const auto lines = lines_of(text);
    std::map<std::string, std::string> out;
    std::istringstream header(lines.at(0)), values(lines.at(row));
    for (std::string h, v; std::getline(header, h, ',') && std::getline(values, v, ',');) out[h] = v;
    return out;
}

int run_tool(const std::string& args) {
    const std::string command = std::string(XCSN_BINARY) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, ParsesKeysAndResolvesPaths) {
    const auto c = parse_config(
        "# comment\nproblem.kind = grid\nproblem.map = maps/woods1.txt\nproblem.name = woods1\n"
        "params.beta = 0.1\nparams.useGradient = true\nrun.exploration = biased\noutput.dir = o\n",
        XCSN_SOURCE_DIR);
    EXPECT_EQ(c.outputDir, fs::path(XCSN_SOURCE_DIR) / "o");
    EXPECT_EQ(std::get<xcsniche::Grid>(c.experiment.problem).empty_cells().size(), 16u);
    EXPECT_DOUBLE_EQ(c.experiment.params.beta, 0.1);
    EXPECT_TRUE(c.experiment.params.useGradient);
    EXPECT_EQ(c.experiment.exploration, xcsniche::SelectionMode::Biased);
    EXPECT_EQ(c.experiment.name, "woods1");
}

TEST(Config, MisspelledKeyIsNamedWithItsLine) {
    try {
        parse_config("problem.kind = multiplexer\nproblem.size = 6\nparams.betta = 0.2\n");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_NE(std::string(e.what()).find("params.betta"), std::string::npos);
    }
}

TEST(Config, RejectsDuplicatesBadValuesAndMissingKeys) {
    EXPECT_THROW(parse_config("problem.kind = majority\nproblem.size = 3\nproblem.size = 4\n"), ConfigError);
    EXPECT_THROW(parse_config("problem.kind = majority\nproblem.size = three\n"), ConfigError);
    EXPECT_THROW(parse_config("problem.size = 6\n"), ConfigError);
    EXPECT_THROW(parse_config("problem.kind = multiplexer\nproblem.size = 7\n"), ConfigError);
    EXPECT_THROW(parse_config("problem.kind = majority\nproblem.size = 3\nparams.beta = 2\n"), ConfigError);
    EXPECT_THROW(parse_config("problem.kind = majority\nproblem.size = 3\nno equals sign\n"), ConfigError);
}

TEST(Config, ShippedConfigsLoad) {
    std::size_t count = 0;
    for (const auto& entry : fs::directory_iterator(fs::path(XCSN_SOURCE_DIR) / "configs")) {
        if (entry.path().extension() != ".conf") continue;
        const std::string text = read_file(entry.path());
        const auto map_key = text.find("problem.map = ../maps/");
        if (map_key != std::string::npos) {
            const auto name = text.substr(map_key + 22, text.find('\n', map_key) - map_key - 22);
            if (!fs::exists(fs::path(XCSN_SOURCE_DIR) / "maps" / name)) continue;  // map not shipped
        }
        const auto c = load_config(entry.path());
        EXPECT_EQ(c.experiment.runs, 20u) << entry.path();
        ++count;
    }
    EXPECT_GE(count, 13u);  // every Boolean config plus woods1
}

TEST(CmdRun, WritesOutputsThatAgreeWithEachOther) {
    TempDir dir;
    write_file(dir.path() / "mp6.conf", small_mp6_config(1));
    const auto config = load_config(dir.path() / "mp6.conf");
    std::ostringstream log;
    cmd_run(config, log);
    const fs::path out = dir.path() / "out";

    std::size_t run_csvs = 0;
    for (const auto& entry : fs::directory_iterator(out)) {
        if (entry.path().filename().string().starts_with("run_")) ++run_csvs;
    }
    EXPECT_EQ(run_csvs, 1u);
    for (const char* name : {"aggregate.csv", "config.conf", "manifest.txt", "run0_before.pop", "run0_after.pop"}) {
        EXPECT_TRUE(fs::exists(out / name)) << name;
    }
    EXPECT_EQ(read_file(out / "config.conf"), config.text);

    const auto agg = csv_row(read_file(out / "aggregate.csv"), 1);
    EXPECT_EQ(agg.at("problem"), "MP6");
    EXPECT_EQ(agg.at("can_ac_std"), "0");

    // The after-condensation dump reproduces the last checkpoint's niche statistics.
    std::ifstream pop_in(out / "run0_after.pop");
    const auto loaded = xcsniche::Population::load(pop_in, config.experiment.params.L_max());
    const auto summary = xcsniche::summarize(loaded.population);
    const auto run_lines = lines_of(read_file(out / "run_0.csv"));
    const auto last = csv_row(read_file(out / "run_0.csv"), run_lines.size() - 1);
    EXPECT_EQ(last.at("pop_macro"), std::to_string(summary.popMacro));
    EXPECT_EQ(last.at("can"), std::to_string(summary.can));
    EXPECT_EQ(last.at("man_mean"), xcsniche::format_real(summary.manMean));
    EXPECT_EQ(agg.at("can_ac_mean"), std::to_string(summary.can));
}

TEST(CmdRun, RerunIsByteIdentical) {
    TempDir dir;
    write_file(dir.path() / "mp6.conf", small_mp6_config(2));
    std::ostringstream log;
    cmd_run(load_config(dir.path() / "mp6.conf"), log);
    std::map<std::string, std::string> first;
    for (const auto& entry : fs::directory_iterator(dir.path() / "out")) {
        first[entry.path().filename().string()] = read_file(entry.path());
    }
    fs::remove_all(dir.path() / "out");
    cmd_run(load_config(dir.path() / "mp6.conf"), log);
    for (const auto& [name, content] : first) {
        EXPECT_EQ(read_file(dir.path() / "out" / name), content) << name;
    }
}

TEST(CmdNiches, TimelineMatchesRunCsv) {
    TempDir dir;
    write_file(dir.path() / "mp6.conf", small_mp6_config(1));
    const auto config = load_config(dir.path() / "mp6.conf");
    std::ostringstream log;
    for (bool composition : {false, true}) {
        cmd_niches(config, composition, log);
        const auto timeline = lines_of(read_file(dir.path() / "out" / "niches.jsonl"));
        const auto csv = lines_of(read_file(dir.path() / "out" / "run_0.csv"));
        ASSERT_EQ(timeline.size() + 1, csv.size());
        for (std::size_t i = 0; i < timeline.size(); ++i) {
            const auto entry = xcsniche::timeline_entry_from_json(timeline[i]);
            const auto row = csv_row(read_file(dir.path() / "out" / "run_0.csv"), i + 1);
            EXPECT_EQ(std::to_string(entry.canSize), row.at("can"));
            EXPECT_EQ(xcsniche::format_real(entry.manMean), row.at("man_mean"));
            EXPECT_EQ(entry.niches.empty(), !composition);
            if (composition) EXPECT_EQ(entry.niches.size(), entry.canSize);
        }
    }
}

TEST(CmdOracle, PrintsSizesAndSteps) {
    TempDir dir;
    std::ostringstream a, b, c;
    cmd_oracle_optimal_pop("mp6", dir.path() / "o.pop", a);
    EXPECT_EQ(a.str(), "16\n");
    std::ifstream in(dir.path() / "o.pop");
    EXPECT_EQ(xcsniche::Population::load(in, 40).population.size(), 16u);
    cmd_oracle_optimal_pop("maj4", "", b);
    EXPECT_EQ(b.str(), "20\n");
    write_file(dir.path() / "m.txt", "toroidal=false\nF.\n");
    cmd_oracle_grid_steps(dir.path() / "m.txt", c);
    EXPECT_EQ(c.str(), "1\n");
}

TEST(CmdPlotdata, SingleRunHasZeroSpread) {
    TempDir dir;
    write_file(dir.path() / "run_0.csv",
               "checkpoint,performance,error,pop_macro,can,man_mean,man_std\n100,0.5,3,10,4,4.5,0.5\n");
    std::ostringstream log;
    cmd_plotdata(dir.path(), log);
    EXPECT_EQ(read_file(dir.path() / "plot_can.csv"), "checkpoint,can_mean,can_std\n100,4,0\n");
}

TEST(CmdPlotdata, AveragesAcrossRuns) {
    TempDir dir;
    const std::string header = "checkpoint,performance,error,pop_macro,can,man_mean,man_std\n";
    write_file(dir.path() / "run_0.csv", header + "100,0.5,3,10,4,4.5,0.5\n");
    write_file(dir.path() / "run_1.csv", header + "100,1,3,10,8,4.5,0.5\n");
    std::ostringstream log;
    cmd_plotdata(dir.path(), log);
    EXPECT_EQ(read_file(dir.path() / "plot_can.csv"), "checkpoint,can_mean,can_std\n100,6,2\n");
    EXPECT_EQ(read_file(dir.path() / "plot_performance.csv"),
              "checkpoint,performance_mean,performance_std\n100,0.75,0.25\n");
}

TEST(CmdPlotdata, MismatchedCheckpointsNameTheFiles) {
    TempDir dir;
    const std::string header = "checkpoint,performance,error,pop_macro,can,man_mean,man_std\n";
    write_file(dir.path() / "run_0.csv", header + "100,0.5,3,10,4,4.5,0.5\n");
    write_file(dir.path() / "run_1.csv", header + "200,0.5,3,10,4,4.5,0.5\n");
    std::ostringstream log;
    try {
        cmd_plotdata(dir.path(), log);
        FAIL() << "expected an error";
    } catch (const std::exception& e) {
        EXPECT_NE(std::string(e.what()).find("run_1.csv"), std::string::npos) << e.what();
    }
}

TEST(Binary, ExitCodes) {
    TempDir dir;
    write_file(dir.path() / "bad.conf", "problem.kind = multiplexer\nproblem.size = 6\nparams.betta = 0.2\n");
    EXPECT_EQ(run_tool("run " + (dir.path() / "bad.conf").string()), 1);
    EXPECT_EQ(run_tool("frobnicate"), 1);
    EXPECT_EQ(run_tool("oracle optimal-pop mp20"), 2);
    EXPECT_EQ(run_tool("oracle grid-steps " + (dir.path() / "missing.txt").string()), 2);
    EXPECT_EQ(run_tool("oracle optimal-pop mp6"), 0);
    EXPECT_EQ(run_tool("--version"), 0);
}

#include "xcsn/commands.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "xcsniche/niche.hpp"
#include "xcsniche/oracles.hpp"

namespace xcsn {

using namespace xcsniche;
namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

void write_manifest(const Config& config, const std::string& command) {
    fs::create_directories(config.outputDir);
    open_out(config.outputDir / "config.conf") << config.text;
    auto out = open_out(config.outputDir / "manifest.txt");
    out << "tool = " << kToolVersion << '\n'
        << "command = " << command << '\n'
        << "problem = " << config.experiment.name << '\n'
        << "seed = " << config.experiment.seed << '\n'
        << "runs = " << config.experiment.runs << '\n'
        << "config = config.conf\n";
}

/// Keeps copies of run 0's population at the end of each phase.
class PhaseDumps : public RunObserver {
public:
    void on_phase_end(Phase phase, const Xcs& xcs) override {
        std::ostringstream out;
        xcs.population().dump(out, xcs.input_bits(), xcs.num_actions());
        (phase == Phase::Learning ? before : after) = out.str();
    }
    std::string before, after;
};

class TimelineWriter : public RunObserver {
public:
    TimelineWriter(std::ostream& out, bool composition) : out_(out), composition_(composition) {}
    void on_checkpoint(std::size_t, const Xcs& xcs) override {
        out_ << to_json_line(timeline_checkpoint(xcs.population(), xcs.time(), composition_)) << '\n';
    }

private:
    std::ostream& out_;
    bool composition_;
};

}  // namespace

void cmd_run(const Config& config, std::ostream& log) {
    const ExperimentConfig& exp = config.experiment;
    write_manifest(config, "run");
    PhaseDumps dumps;
    const BatchResult batch =
        run_batch(exp, [&dumps](std::size_t run) -> RunObserver* { return run == 0 ? &dumps : nullptr; });

    for (std::size_t run = 0; run < batch.runs.size(); ++run) {
        auto out = open_out(config.outputDir / ("run_" + std::to_string(run) + ".csv"));
        write_run_csv(out, batch.runs[run]);
    }
    {
        auto out = open_out(config.outputDir / "aggregate.csv");
        write_aggregate_csv(out, exp, batch.aggregate);
    }
    open_out(config.outputDir / "run0_before.pop") << dumps.before;
    open_out(config.outputDir / "run0_after.pop") << dumps.after;

    log << "problem | N | n_lp | P_bc | CAN_bc | MAN_bc | P_ac | CAN_ac | MAN_ac\n"
        << table_row(exp, batch.aggregate) << '\n'
        << "wrote " << config.outputDir.string() << '\n';
}

void cmd_niches(const Config& config, bool composition, std::ostream& log) {
    write_manifest(config, composition ? "niches --composition" : "niches");
    auto timeline = open_out(config.outputDir / "niches.jsonl");
    TimelineWriter writer(timeline, composition);
    const RunStats stats = run_single(config.experiment, 0, &writer);
    auto csv = open_out(config.outputDir / "run_0.csv");
    write_run_csv(csv, stats);
    log << "wrote " << stats.checkpoints.size() << " timeline entries to "
        << (config.outputDir / "niches.jsonl").string() << '\n';
}

void cmd_oracle_optimal_pop(const std::string& problem, const fs::path& out_path, std::ostream& log) {
    const BooleanProblem p = BooleanProblem::parse(problem);
    const auto optimal = optimal_population_oracle(p);
    if (!out_path.empty()) {
        if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
        auto out = open_out(out_path);
        oracle_population(optimal).dump(out, p.bits(), p.num_actions());
    }
    log << optimal.size() << '\n';
}

void cmd_oracle_grid_steps(const fs::path& map_path, std::ostream& log) {
    log << format_real(optimal_steps_oracle(Grid::load(map_path.string()))) << '\n';
}

namespace {

struct RunTable {
    fs::path file;
    std::vector<std::string> checkpoints;
    std::vector<std::vector<double>> columns;  // one per metric
};

const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names = {"performance", "error", "pop_macro",
                                                   "can", "man_mean", "man_std"};
    return names;
}

RunTable read_run_csv(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw Error("cannot read " + file.string());
    RunTable table{file, {}, std::vector<std::vector<double>>(metric_names().size())};
    std::string line;
    std::getline(in, line);
    if (line != "checkpoint,performance,error,pop_macro,can,man_mean,man_std") {
        throw Error(file.string() + ": unexpected header");
    }
    for (std::size_t line_no = 2; std::getline(in, line); ++line_no) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string cell;
        std::getline(fields, cell, ',');
        table.checkpoints.push_back(cell);
        for (auto& column : table.columns) {
            if (!std::getline(fields, cell, ',')) {
                throw Error(file.string() + ": line " + std::to_string(line_no) + " is short");
            }
            try {
                column.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw Error(file.string() + ": line " + std::to_string(line_no) + ": bad number '" + cell + "'");
            }
        }
    }
    return table;
}

}  // namespace

void cmd_plotdata(const fs::path& dir, std::ostream& log) {
    std::vector<std::pair<std::size_t, fs::path>> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("run_", 0) != 0 || entry.path().extension() != ".csv") continue;
        const std::string index = name.substr(4, name.size() - 8);
        if (index.empty() || index.find_first_not_of("0123456789") != std::string::npos) continue;
        files.emplace_back(std::stoul(index), entry.path());
    }
    if (files.empty()) throw Error("no run_<i>.csv files in " + dir.string());
    std::sort(files.begin(), files.end());

    std::vector<RunTable> runs;
    for (const auto& [index, path] : files) runs.push_back(read_run_csv(path));

    std::vector<std::string> offending;
    for (const auto& run : runs) {
        if (run.checkpoints != runs.front().checkpoints) offending.push_back(run.file.filename().string());
    }
    if (!offending.empty()) {
        std::string list;
        for (const auto& name : offending) list += " " + name;
        throw Error("checkpoints differ from " + runs.front().file.filename().string() + " in:" + list);
    }

    for (std::size_t m = 0; m < metric_names().size(); ++m) {
        const std::string& metric = metric_names()[m];
        auto out = open_out(dir / ("plot_" + metric + ".csv"));
        out << "checkpoint," << metric << "_mean," << metric << "_std\n";
        for (std::size_t row = 0; row < runs.front().checkpoints.size(); ++row) {
            std::vector<double> values;
            for (const auto& run : runs) values.push_back(run.columns[m][row]);
            const MeanStd s = mean_std(values);
            out << runs.front().checkpoints[row] << ',' << format_real(s.mean) << ',' << format_real(s.std) << '\n';
        }
    }
    log << "wrote " << metric_names().size() << " plot files from " << runs.size() << " runs\n";
}

}  // namespace xcsn

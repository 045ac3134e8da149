#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "xcsniche/boolean_problem.hpp"
#include "xcsniche/engine.hpp"
#include "xcsniche/grid.hpp"
#include "xcsniche/parameters.hpp"

namespace xcsniche {

using Problem = std::variant<BooleanProblem, Grid>;

std::size_t input_bits(const Problem& problem);
int num_actions(const Problem& problem);
bool is_multi_step(const Problem& problem);

struct ExperimentConfig {
    std::string name;  // label used in reports, e.g. "MP6" or "woods1"
    Problem problem = BooleanProblem(BooleanProblem::Kind::Multiplexer, 6);
    Parameters params;
    std::size_t learningProblems = 10000;
    std::size_t condensationProblems = 10000;
    std::size_t runs = 1;
    std::uint64_t seed = 1;
    std::size_t checkpointInterval = 1000;
    SelectionMode exploration = SelectionMode::Explore;  // learning problems only
    std::size_t performanceWindow = 50;   // test problems in each checkpoint's moving window
    std::size_t finalWindow = 1000;       // test problems in the end-of-run summary
    std::size_t threads = 0;              // 0: one per hardware thread

    void validate() const;
};

struct Checkpoint {
    std::size_t problem = 0;  // learning problems completed so far
    double performance = 0.0; // fraction correct, or mean steps to goal
    double error = 0.0;       // mean absolute prediction error
    std::size_t popMacro = 0;
    std::size_t can = 0;
    double manMean = 0.0;
    double manStd = 0.0;

    friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

struct PhaseSummary {
    std::size_t popMacro = 0;
    std::size_t popNumerosity = 0;
    std::size_t can = 0;
    double manMean = 0.0;
    double manStd = 0.0;

    friend bool operator==(const PhaseSummary&, const PhaseSummary&) = default;
};

/// |P|, |CAN| and MAN of a population (MAN is zero when nothing is active).
PhaseSummary summarize(const Population& pop);

struct RunStats {
    std::vector<Checkpoint> checkpoints;
    PhaseSummary beforeCondensation;
    PhaseSummary afterCondensation;
    double finalPerformance = 0.0;  // over the last finalWindow test problems
    double finalError = 0.0;

    friend bool operator==(const RunStats&, const RunStats&) = default;
};

enum class Phase { Learning, Condensation };

/// Hooks into a run. Calls arrive on the thread executing the run.
class RunObserver {
public:
    virtual ~RunObserver() = default;
    virtual void on_checkpoint(std::size_t /*problem*/, const Xcs& /*xcs*/) {}
    /// End of a phase, before the next one starts.
    virtual void on_phase_end(Phase /*phase*/, const Xcs& /*xcs*/) {}
};

/// Seed of run `run_index`.
std::uint64_t run_seed(const ExperimentConfig& config, std::size_t run_index);

/// One experiment: learningProblems learn/test pairs, then condensationProblems
/// pairs with crossover and mutation off. Deterministic in (config, run_index).
RunStats run_single(const ExperimentConfig& config, std::size_t run_index,
                    RunObserver* observer = nullptr);

struct EpisodeResult {
    std::size_t steps = 0;
    bool reachedGoal = false;
    double error = 0.0;  // exploit episodes: mean absolute error of the one-step backup
};

enum class EpisodeMode { Learn, Test };

/// One multi-step problem from `start` (random empty cell when unset).
/// Learn: actions per `selection`; the previous action set is reinforced with
/// r + gamma * max PA of the current state and then goes through the GA; the
/// action set that reaches the goal gets the goal reward. Test: greedy, no learning.
EpisodeResult multi_step_episode(Xcs& xcs, const Grid& grid, EpisodeMode mode,
                                 SelectionMode selection, Rng& rng,
                                 std::optional<Position> start = std::nullopt);

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;  // population standard deviation
};

MeanStd mean_std(const std::vector<double>& values);

struct AggregateStats {
    std::size_t runs = 0;
    MeanStd popBefore, canBefore, manBefore;
    MeanStd popAfter, canAfter, manAfter;
    MeanStd finalPerformance;
};

AggregateStats aggregate(const std::vector<RunStats>& runs);

struct BatchResult {
    std::vector<RunStats> runs;  // indexed by run
    AggregateStats aggregate;
};

/// Runs every run of the experiment (concurrently when threads allow) and
/// aggregates them. A failing run aborts the batch with its index in the message.
/// `observer_for(run)` may return an observer for that run, or nullptr.
using ObserverFactory = std::function<RunObserver*(std::size_t run)>;
BatchResult run_batch(const ExperimentConfig& config, const ObserverFactory& observer_for = {});

/// `checkpoint,performance,error,pop_macro,can,man_mean,man_std`
void write_run_csv(std::ostream& out, const RunStats& stats);

/// Header plus one row mirroring the population/niche table:
/// `problem,N,n_lp,pop_bc_mean,pop_bc_std,can_bc_mean,can_bc_std,man_bc_mean,man_bc_std,
///  pop_ac_mean,pop_ac_std,can_ac_mean,can_ac_std,man_ac_mean,man_ac_std`
void write_aggregate_csv(std::ostream& out, const ExperimentConfig& config,
                         const AggregateStats& stats);

/// Human-readable row: values as `mean ± std` with one decimal.
std::string table_row(const ExperimentConfig& config, const AggregateStats& stats);

/// Shortest round-trip decimal text of a double.
std::string format_real(double v);

}  // namespace xcsniche

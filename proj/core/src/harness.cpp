#include "xcsniche/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <deque>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "xcsniche/error.hpp"
#include "xcsniche/niche.hpp"

namespace xcsniche {

std::size_t input_bits(const Problem& problem) {
    return std::visit(
        [](const auto& p) -> std::size_t {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Grid>) return p.input_bits();
            else return p.bits();
        },
        problem);
}

int num_actions(const Problem& problem) {
    return std::holds_alternative<Grid>(problem) ? Grid::kNumActions : 2;
}

bool is_multi_step(const Problem& problem) { return std::holds_alternative<Grid>(problem); }

void ExperimentConfig::validate() const {
    params.validate();
    if (runs < 1) throw PreconditionError("run count must be at least 1");
    if (checkpointInterval < 1) throw PreconditionError("checkpoint interval must be at least 1");
    if (performanceWindow < 1 || finalWindow < 1) throw PreconditionError("windows must be at least 1");
    if (params.N < static_cast<std::size_t>(num_actions(problem))) {
        throw PreconditionError("N must be at least the number of actions");
    }
}

std::string format_real(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

PhaseSummary summarize(const Population& pop) {
    PhaseSummary s;
    s.popMacro = pop.size();
    s.popNumerosity = pop.numerosity();
    s.can = active_niches(pop).size();
    if (s.can > 0) {
        const auto man = mean_active_niches(pop);
        s.manMean = man.mean;
        s.manStd = man.stddev;
    }
    return s;
}

std::uint64_t run_seed(const ExperimentConfig& config, std::size_t run_index) {
    return config.seed + run_index;
}

namespace {

constexpr std::uint64_t kEnvironmentStream = 0x9E3779B97F4A7C15ull;

/// Sliding mean over the most recent test problems.
class Window {
public:
    explicit Window(std::size_t capacity) : capacity_(capacity) {}
    void add(double v) {
        values_.push_back(v);
        sum_ += v;
        if (values_.size() > capacity_) {
            sum_ -= values_.front();
            values_.pop_front();
        }
    }
    double mean() const { return values_.empty() ? 0.0 : sum_ / static_cast<double>(values_.size()); }

private:
    std::size_t capacity_;
    std::deque<double> values_;
    double sum_ = 0.0;
};

struct TestOutcome {
    double performance;
    double error;
};

BitString random_input(std::size_t bits, Rng& rng) { return BitString(rng.engine()(), bits); }

TestOutcome single_step_learn_and_test(Xcs& xcs, const BooleanProblem& problem,
                                       SelectionMode selection, Rng& env) {
    const BitString learn_input = random_input(problem.bits(), env);
    auto step = xcs.explore_step(learn_input, selection);
    const double reward = problem.reward(learn_input, step.action);
    xcs.reinforce(step.action_set, reward);
    xcs.discover(step.action_set, learn_input);

    const BitString test_input = random_input(problem.bits(), env);
    PredictionArray pa(problem.num_actions());
    const int action = xcs.exploit_step(test_input, &pa);
    const double test_reward = problem.reward(test_input, action);
    return {test_reward > 0.0 ? 1.0 : 0.0, std::abs(test_reward - pa[action].value_or(0.0))};
}

}  // namespace

EpisodeResult multi_step_episode(Xcs& xcs, const Grid& grid, EpisodeMode mode,
                                 SelectionMode selection, Rng& rng,
                                 std::optional<Position> start) {
    const double gamma = xcs.parameters().gamma;
    const std::size_t max_steps = xcs.parameters().maxStepsPerEpisode;
    Position pos = start ? *start : grid.random_start(rng);

    if (mode == EpisodeMode::Test) {
        double error_sum = 0.0;
        std::optional<double> prev_prediction;
        double prev_reward = 0.0;
        for (std::size_t step = 1; step <= max_steps; ++step) {
            PredictionArray pa(Grid::kNumActions);
            const int action = xcs.exploit_step(grid.sense(pos), &pa);
            if (prev_prediction) error_sum += std::abs(compute_target(prev_reward, &pa, gamma) - *prev_prediction);
            const auto out = grid.act(pos, action);
            prev_prediction = pa[action].value_or(0.0);
            prev_reward = out.reward;
            if (out.done) {
                error_sum += std::abs(out.reward - *prev_prediction);
                return {step, true, error_sum / static_cast<double>(step)};
            }
            pos = out.position;
        }
        return {max_steps, false, error_sum / static_cast<double>(max_steps)};
    }

    std::optional<ActionSet> prev_set;
    BitString prev_input;
    double prev_reward = 0.0;
    for (std::size_t step = 1; step <= max_steps; ++step) {
        const BitString input = grid.sense(pos);
        auto current = xcs.explore_step(input, selection);
        const auto out = grid.act(pos, current.action);
        if (prev_set) {
            xcs.reinforce(*prev_set, compute_target(prev_reward, &current.prediction, gamma));
            xcs.discover(*prev_set, prev_input);
        }
        if (out.done) {
            xcs.reinforce(current.action_set, out.reward);
            xcs.discover(current.action_set, input);
            return {step, true, 0.0};
        }
        prev_set = std::move(current.action_set);
        prev_input = input;
        prev_reward = out.reward;
        pos = out.position;
    }
    return {max_steps, false, 0.0};
}

RunStats run_single(const ExperimentConfig& config, std::size_t run_index, RunObserver* observer) {
    config.validate();
    const std::uint64_t seed = run_seed(config, run_index);
    Xcs xcs(config.params, input_bits(config.problem), num_actions(config.problem), seed);
    Rng env(seed ^ kEnvironmentStream);

    RunStats stats;
    Window perf(config.performanceWindow), err(config.performanceWindow);
    Window final_perf(config.finalWindow), final_err(config.finalWindow);

    const std::size_t total = config.learningProblems + config.condensationProblems;
    for (std::size_t i = 0; i < total; ++i) {
        if (i == config.learningProblems) {
            stats.beforeCondensation = summarize(xcs.population());
            if (observer) observer->on_phase_end(Phase::Learning, xcs);
            xcs.set_condensation(true);
        }

        TestOutcome outcome{};
        if (const auto* boolean = std::get_if<BooleanProblem>(&config.problem)) {
            outcome = single_step_learn_and_test(xcs, *boolean, config.exploration, env);
        } else {
            const Grid& grid = std::get<Grid>(config.problem);
            multi_step_episode(xcs, grid, EpisodeMode::Learn, config.exploration, env);
            const auto test = multi_step_episode(xcs, grid, EpisodeMode::Test, SelectionMode::Exploit, env);
            outcome = {static_cast<double>(test.steps), test.error};
        }
        perf.add(outcome.performance);
        err.add(outcome.error);
        final_perf.add(outcome.performance);
        final_err.add(outcome.error);

        if ((i + 1) % config.checkpointInterval == 0) {
            const auto summary = summarize(xcs.population());
            stats.checkpoints.push_back({i + 1, perf.mean(), err.mean(), summary.popMacro,
                                         summary.can, summary.manMean, summary.manStd});
            if (observer) observer->on_checkpoint(i + 1, xcs);
        }
    }
    if (config.learningProblems == total) {
        stats.beforeCondensation = summarize(xcs.population());
        if (observer) observer->on_phase_end(Phase::Learning, xcs);
        xcs.set_condensation(true);
    }
    stats.afterCondensation = summarize(xcs.population());
    if (observer) observer->on_phase_end(Phase::Condensation, xcs);
    stats.finalPerformance = final_perf.mean();
    stats.finalError = final_err.mean();
    return stats;
}

MeanStd mean_std(const std::vector<double>& values) {
    MeanStd out;
    if (values.empty()) return out;
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / static_cast<double>(values.size());
    double sq = 0.0;
    for (double v : values) sq += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(sq / static_cast<double>(values.size()));
    return out;
}

AggregateStats aggregate(const std::vector<RunStats>& runs) {
    AggregateStats agg;
    agg.runs = runs.size();
    auto collect = [&](auto field) {
        std::vector<double> v;
        v.reserve(runs.size());
        for (const auto& r : runs) v.push_back(static_cast<double>(field(r)));
        // summation order fixed so the result does not depend on run order
        std::sort(v.begin(), v.end());
        return mean_std(v);
    };
    agg.popBefore = collect([](const RunStats& r) { return r.beforeCondensation.popMacro; });
    agg.canBefore = collect([](const RunStats& r) { return r.beforeCondensation.can; });
    agg.manBefore = collect([](const RunStats& r) { return r.beforeCondensation.manMean; });
    agg.popAfter = collect([](const RunStats& r) { return r.afterCondensation.popMacro; });
    agg.canAfter = collect([](const RunStats& r) { return r.afterCondensation.can; });
    agg.manAfter = collect([](const RunStats& r) { return r.afterCondensation.manMean; });
    agg.finalPerformance = collect([](const RunStats& r) { return r.finalPerformance; });
    return agg;
}

BatchResult run_batch(const ExperimentConfig& config, const ObserverFactory& observer_for) {
    config.validate();
    BatchResult result;
    result.runs.resize(config.runs);

    std::size_t workers = config.threads ? config.threads : std::thread::hardware_concurrency();
    workers = std::clamp<std::size_t>(workers, 1, config.runs);

    std::atomic<std::size_t> next{0};
    std::mutex failure_mutex;
    std::optional<std::size_t> failed_run;
    std::string failure;

    auto work = [&] {
        for (std::size_t run = next++; run < config.runs; run = next++) {
            try {
                result.runs[run] = run_single(config, run, observer_for ? observer_for(run) : nullptr);
            } catch (const std::exception& e) {
                std::lock_guard lock(failure_mutex);
                if (!failed_run || run < *failed_run) {
                    failed_run = run;
                    failure = e.what();
                }
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failed_run) throw Error("run " + std::to_string(*failed_run) + " failed: " + failure);

    result.aggregate = aggregate(result.runs);
    return result;
}

void write_run_csv(std::ostream& out, const RunStats& stats) {
    out << "checkpoint,performance,error,pop_macro,can,man_mean,man_std\n";
    for (const auto& c : stats.checkpoints) {
        out << c.problem << ',' << format_real(c.performance) << ',' << format_real(c.error) << ','
            << c.popMacro << ',' << c.can << ',' << format_real(c.manMean) << ','
            << format_real(c.manStd) << '\n';
    }
}

void write_aggregate_csv(std::ostream& out, const ExperimentConfig& config,
                         const AggregateStats& stats) {
    out << "problem,N,n_lp,pop_bc_mean,pop_bc_std,can_bc_mean,can_bc_std,man_bc_mean,man_bc_std,"
           "pop_ac_mean,pop_ac_std,can_ac_mean,can_ac_std,man_ac_mean,man_ac_std\n";
    out << config.name << ',' << config.params.N << ',' << config.learningProblems;
    for (const MeanStd* m : {&stats.popBefore, &stats.canBefore, &stats.manBefore,
                             &stats.popAfter, &stats.canAfter, &stats.manAfter}) {
        out << ',' << format_real(m->mean) << ',' << format_real(m->std);
    }
    out << '\n';
}

std::string table_row(const ExperimentConfig& config, const AggregateStats& stats) {
    std::string row = config.name + " | " + std::to_string(config.params.N) + " | " +
                      std::to_string(config.learningProblems);
    char buf[64];
    for (const MeanStd* m : {&stats.popBefore, &stats.canBefore, &stats.manBefore,
                             &stats.popAfter, &stats.canAfter, &stats.manAfter}) {
        std::snprintf(buf, sizeof buf, " | %6.1f ± %5.1f", m->mean, m->std);
        row += buf;
    }
    return row;
}

}  // namespace xcsniche

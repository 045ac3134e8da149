#include <benchmark/benchmark.h>

#include "xcsniche/boolean_problem.hpp"
#include "xcsniche/engine.hpp"
#include "xcsniche/niche.hpp"
#include "xcsniche/oracles.hpp"

using namespace xcsniche;

namespace {

BitString random_input(Rng& rng, std::size_t bits) {
    return BitString(rng.engine()() & ((std::uint64_t{1} << bits) - 1), bits);
}

/// A learner trained on `problem` for `problems` explore steps.
Xcs trained(const BooleanProblem& problem, int N, int problems) {
    Parameters params;
    params.N = N;
    Xcs xcs(params, problem.bits(), problem.num_actions(), 1);
    Rng env(2);
    for (int i = 0; i < problems; ++i) {
        const auto x = random_input(env, problem.bits());
        auto step = xcs.explore_step(x, SelectionMode::Explore);
        xcs.reinforce(step.action_set, problem.reward(x, step.action));
        xcs.discover(step.action_set, x);
    }
    return xcs;
}

void BM_MatchSet(benchmark::State& state) {
    const auto problem = BooleanProblem(BooleanProblem::Kind::Multiplexer, static_cast<std::size_t>(state.range(0)));
    const auto xcs = trained(problem, 2000, 5000);
    Rng rng(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(collect_matching(xcs.population(), random_input(rng, problem.bits())));
    }
    state.counters["pop"] = static_cast<double>(xcs.population().size());
}
BENCHMARK(BM_MatchSet)->Arg(11)->Arg(20)->Arg(37);

void BM_ExploreStep(benchmark::State& state) {
    const auto problem = BooleanProblem(BooleanProblem::Kind::Multiplexer, 11);
    auto xcs = trained(problem, 1000, 2000);
    Rng env(4);
    for (auto _ : state) {
        const auto x = random_input(env, problem.bits());
        auto step = xcs.explore_step(x, SelectionMode::Explore);
        xcs.reinforce(step.action_set, problem.reward(x, step.action));
        xcs.discover(step.action_set, x);
    }
}
BENCHMARK(BM_ExploreStep);

void BM_NicheStatistics(benchmark::State& state) {
    const auto problem = BooleanProblem(BooleanProblem::Kind::Majority, 5);
    const auto xcs = trained(problem, static_cast<int>(state.range(0)), 10000);
    for (auto _ : state) {
        benchmark::DoNotOptimize(active_niches(xcs.population()));
        benchmark::DoNotOptimize(mean_active_niches(xcs.population()));
    }
    state.counters["pop"] = static_cast<double>(xcs.population().size());
}
BENCHMARK(BM_NicheStatistics)->Arg(500)->Arg(2000);

void BM_OptimalPopulationOracle(benchmark::State& state) {
    const auto problem = BooleanProblem(BooleanProblem::Kind::Multiplexer, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(optimal_population_oracle(problem));
}
BENCHMARK(BM_OptimalPopulationOracle)->Arg(6)->Arg(11)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

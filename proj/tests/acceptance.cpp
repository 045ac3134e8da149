// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit when an
// unexpected criterion fails. Criteria listed with --known-shortfall still print
// FAIL but do not change the exit code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "support.hpp"
#include "xcsn/commands.hpp"
#include "xcsn/config.hpp"
#include "xcsniche/boolean_problem.hpp"
#include "xcsniche/engine.hpp"
#include "xcsniche/harness.hpp"
#include "xcsniche/niche.hpp"
#include "xcsniche/oracles.hpp"

namespace fs = std::filesystem;
using namespace xcsniche;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

/// Appends "label=value (ok|FAIL)" to a detail string and folds the verdict.
class Checks {
public:
    void add(const std::string& label, const std::string& value, bool ok) {
        if (!text_.empty()) text_ += "; ";
        text_ += label + "=" + value + (ok ? "" : " (FAIL)");
        pass_ = pass_ && ok;
    }
    Outcome outcome() const { return {pass_, text_}; }

private:
    bool pass_ = true;
    std::string text_;
};

std::string fmt(double v, int decimals = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string fmt(const MeanStd& m) { return fmt(m.mean) + "±" + fmt(m.std); }

ExperimentConfig shipped(const std::string& name, std::size_t threads) {
    auto config = xcsn::load_config(fs::path(XCSN_SOURCE_DIR) / "configs" / (name + ".conf")).experiment;
    config.threads = threads;
    return config;
}

std::string describe(const ExperimentConfig& c) {
    return "N=" + std::to_string(c.params.N) + " n_lp=" + std::to_string(c.learningProblems) +
           " runs=" + std::to_string(c.runs);
}

Outcome oracle_sizes() {
    Checks checks;
    const std::vector<std::pair<const char*, std::size_t>> expected{
        {"mp6", 16}, {"mp11", 32}, {"maj3", 12}, {"maj4", 20}, {"maj5", 40}, {"maj6", 70}};
    for (const auto& [name, size] : expected) {
        const auto got = optimal_population_oracle(BooleanProblem::parse(name)).size();
        checks.add(name, std::to_string(got) + "/" + std::to_string(size), got == size);
    }
    return checks.outcome();
}

Outcome mp6(std::size_t threads) {
    const auto config = shipped("mp6", threads);
    const auto batch = run_batch(config);
    std::size_t exact = 0, perfect = 0;
    for (const auto& r : batch.runs) {
        const auto& s = r.afterCondensation;
        if (s.popMacro == 16 && s.can == 16 && s.manMean == 16.0) ++exact;
        if (r.finalPerformance == 1.0) ++perfect;
    }
    Checks checks;
    checks.add("runs with P=CAN=MAN=16", std::to_string(exact) + "/" + std::to_string(config.runs), exact >= 18);
    checks.add("runs at 100%", std::to_string(perfect) + "/" + std::to_string(config.runs), perfect == config.runs);
    auto out = checks.outcome();
    out.detail = describe(config) + ": " + out.detail;
    return out;
}

Outcome mp11(std::size_t threads) {
    const auto config = shipped("mp11", threads);
    const auto agg = run_batch(config).aggregate;
    Checks checks;
    // "32.0" at one decimal.
    checks.add("CAN_ac", fmt(agg.canAfter), std::abs(agg.canAfter.mean - 32.0) < 0.05 && agg.canAfter.std <= 0.5);
    auto out = checks.outcome();
    out.detail = describe(config) + ": " + out.detail;
    return out;
}

Outcome maj3(std::size_t threads) {
    const auto config = shipped("maj3", threads);
    const auto batch = run_batch(config);
    const auto& agg = batch.aggregate;
    std::size_t overlap = 0;
    for (const auto& r : batch.runs) {
        if (r.afterCondensation.manMean > static_cast<double>(r.afterCondensation.can)) ++overlap;
    }
    Checks checks;
    checks.add("CAN_ac", fmt(agg.canAfter) + " want 12.9±2.5", std::abs(agg.canAfter.mean - 12.9) <= 2.5);
    checks.add("MAN_ac", fmt(agg.manAfter) + " want 15.9±5.0", std::abs(agg.manAfter.mean - 15.9) <= 5.0);
    checks.add("runs with MAN>CAN", std::to_string(overlap) + "/" + std::to_string(config.runs), overlap >= 18);
    checks.add("P_ac", fmt(agg.popAfter), true);
    auto out = checks.outcome();
    out.detail = describe(config) + ": " + out.detail;
    return out;
}

Outcome woods1(std::size_t threads) {
    const auto config = shipped("woods1", threads);
    const auto agg = run_batch(config).aggregate;
    const double optimum = optimal_steps_oracle(std::get<Grid>(config.problem));
    const double steps = agg.finalPerformance.mean;
    Checks checks;
    checks.add("P_ac", fmt(agg.popAfter) + " want 32±2", std::abs(agg.popAfter.mean - 32.0) <= 2.0);
    checks.add("CAN_ac", fmt(agg.canAfter) + " want 31.8±2", std::abs(agg.canAfter.mean - 31.8) <= 2.0);
    checks.add("steps", fmt(steps, 4) + " vs optimum " + fmt(optimum, 4),
               std::abs(steps - optimum) <= 0.05 * optimum);
    auto out = checks.outcome();
    out.detail = describe(config) + ": " + out.detail;
    return out;
}

Outcome split_niche() {
    Population pop;
    pop.insert(test_support::with_history(test_support::make_classifier("11#", 1), {405, 400}));
    pop.insert(test_support::with_history(test_support::make_classifier("#11", 1), {403, 400}));
    const auto can = active_niches(pop);
    const auto man = mean_active_niches(pop);
    Checks checks;
    checks.add("|CAN|", std::to_string(can.size()), can.size() == 2);
    checks.add("can_1={400}", active_niches_at(pop, 1) == std::set<Time>{400} ? "yes" : "no",
               active_niches_at(pop, 1) == std::set<Time>{400});
    checks.add("MAN", fmt(man.mean), man.mean == 1.5);
    return checks.outcome();
}

void learn_once(Xcs& xcs, const BooleanProblem& problem, Rng& env) {
    const BitString x(env.engine()() & ((std::uint64_t{1} << problem.bits()) - 1), problem.bits());
    auto step = xcs.explore_step(x, SelectionMode::Explore);
    xcs.reinforce(step.action_set, problem.reward(x, step.action));
    xcs.discover(step.action_set, x);
}

std::map<std::string, std::string> run_outputs(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        out[entry.path().filename().string()] = s.str();
    }
    return out;
}

Outcome properties() {
    Checks checks;

    bool generality = true;
    for (std::size_t n = 1; n <= 6 && generality; ++n) {
        const auto conds = test_support::all_conditions(n);
        const auto inputs = test_support::all_inputs(n);
        std::vector<std::uint64_t> matched(conds.size(), 0);
        for (std::size_t c = 0; c < conds.size(); ++c) {
            for (std::size_t x = 0; x < inputs.size(); ++x) {
                if (condition_matches(conds[c], inputs[x])) matched[c] |= std::uint64_t{1} << x;
            }
        }
        for (std::size_t a = 0; a < conds.size() && generality; ++a) {
            for (std::size_t b = 0; b < conds.size(); ++b) {
                const bool superset = (matched[a] & matched[b]) == matched[b] && matched[a] != matched[b];
                if (is_more_general(conds[a], conds[b]) != superset) generality = false;
            }
        }
    }
    checks.add("generality<=>inclusion n<=6", generality ? "holds" : "violated", generality);

    // theta_ga = 0 fires the GA (and with it deletion) on every learning problem.
    const auto problem = BooleanProblem::parse("mp6");
    Parameters params;
    params.N = 60;
    params.theta_ga = 0;
    Xcs xcs(params, problem.bits(), problem.num_actions(), 17);
    Rng env(17);
    bool budget = true, history = true;
    std::size_t max_num = 0;
    for (int i = 0; i < 100000; ++i) {
        learn_once(xcs, problem, env);
        max_num = std::max(max_num, xcs.population().numerosity());
        if (xcs.population().numerosity() > static_cast<std::size_t>(params.N)) budget = false;
        if (i % 50 != 0) continue;
        for (const auto& cl : xcs.population()) {
            if (cl.history.size() > params.L_max()) history = false;
            for (std::size_t k = 1; k < cl.history.size(); ++k) {
                if (cl.history[k - 1] <= cl.history[k]) history = false;
            }
        }
    }
    checks.add("max sum num over 1e5 GA cycles", std::to_string(max_num) + "<=" + std::to_string(params.N), budget);
    checks.add("L decreasing and bounded", history ? "holds" : "violated", history);

    const fs::path tmp = fs::temp_directory_path() / "xcsn_acceptance_determinism";
    fs::remove_all(tmp);
    fs::create_directories(tmp);
    {
        std::ofstream(tmp / "maj4.conf") << "problem.kind = majority\nproblem.size = 4\nparams.N = 400\n"
                                            "run.learningProblems = 2000\nrun.condensationProblems = 2000\n"
                                            "run.checkpointInterval = 500\nrun.runs = 3\noutput.dir = a\n";
    }
    std::ostringstream log;
    auto config = xcsn::load_config(tmp / "maj4.conf");
    xcsn::cmd_run(config, log);
    config.outputDir = tmp / "b";
    xcsn::cmd_run(config, log);
    const bool identical = run_outputs(tmp / "a") == run_outputs(tmp / "b");
    fs::remove_all(tmp);
    checks.add("seeded reruns byte-identical", identical ? "yes" : "no", identical);

    Xcs cx(Parameters{}, problem.bits(), problem.num_actions(), 23);
    Rng cenv(23);
    for (int i = 0; i < 5000; ++i) learn_once(cx, problem, cenv);
    cx.set_condensation(true);
    auto rules = [](const Population& pop) {
        std::set<std::pair<std::string, int>> out;
        for (const auto& cl : pop) out.insert({cl.condition.str(), cl.action});
        return out;
    };
    bool condensing = true;
    for (int i = 0; i < 5000; ++i) {
        const BitString x(cenv.engine()() & 63u, 6);
        const auto before = rules(cx.population());
        // Covering may add rules for an unrepresented action; nothing else may.
        const auto match = collect_matching(cx.population(), x);
        std::set<int> actions;
        for (auto id : match.members) actions.insert(cx.population()[*cx.population().find(id)].action);
        const bool covered = static_cast<int>(actions.size()) == problem.num_actions();
        auto step = cx.explore_step(x, SelectionMode::Explore);
        cx.reinforce(step.action_set, problem.reward(x, step.action));
        cx.discover(step.action_set, x);
        if (covered && rules(cx.population()).size() > before.size()) condensing = false;
    }
    checks.add("condensation never grows distinct rules", condensing ? "holds" : "violated", condensing);
    return checks.outcome();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance suite"};
    std::vector<int> known;
    std::size_t threads = 0;
    app.add_option("--known-shortfall", known, "Criteria whose failure is documented and tolerated");
    app.add_option("--threads", threads, "Worker threads per batch (0: hardware)");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"oracle |O| for MP6 MP11 MAJ3..MAJ6", oracle_sizes},
        {"MP6 end-to-end", [&] { return mp6(threads); }},
        {"MP11 end-to-end", [&] { return mp11(threads); }},
        {"MAJ3 end-to-end", [&] { return maj3(threads); }},
        {"Woods1 multi-step", [&] { return woods1(threads); }},
        {"two-classifier niche scenario", split_niche},
        {"property suites", properties},
    };

    int unexpected = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool tolerated = std::find(known.begin(), known.end(), id) != known.end();
        std::cout << (outcome.pass ? "PASS" : "FAIL") << " C" << id << " " << criteria[i].first << " | "
                  << outcome.detail << " | " << fmt(seconds, 1) << "s";
        if (!outcome.pass && tolerated) std::cout << " [known shortfall]";
        if (outcome.pass && tolerated) std::cout << " [listed as known shortfall but passed]";
        std::cout << std::endl;
        if (!outcome.pass && !tolerated) ++unexpected;
    }
    return unexpected == 0 ? 0 : 1;
}

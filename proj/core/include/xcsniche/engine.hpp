#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "xcsniche/classifier.hpp"
#include "xcsniche/parameters.hpp"
#include "xcsniche/population.hpp"
#include "xcsniche/random.hpp"

namespace xcsniche {

/// Classifiers matching the current input.
struct MatchSet {
    std::vector<ClassifierId> members;
};

/// Match-set members advocating one action. Held by id, so it stays usable across
/// later insertions and deletions (members that disappear are skipped).
struct ActionSet {
    int action = 0;
    std::vector<ClassifierId> members;
};

/// Fitness-weighted payoff estimate per action; empty where no classifier advocates it.
class PredictionArray {
public:
    explicit PredictionArray(int num_actions) : values_(static_cast<std::size_t>(num_actions)) {}

    int size() const noexcept { return static_cast<int>(values_.size()); }
    const std::optional<double>& operator[](int a) const { return values_[static_cast<std::size_t>(a)]; }
    void set(int a, double v) { values_[static_cast<std::size_t>(a)] = v; }

    bool any() const noexcept;
    std::vector<int> present_actions() const;
    /// Largest present value. Throws PreconditionError when nothing is present.
    double max() const;
    /// Actions whose value equals max().
    std::vector<int> best_actions() const;

private:
    std::vector<std::optional<double>> values_;
};

enum class SelectionMode { Explore, Exploit, Biased };

/// Builds [M] for `input`. When some action is unrepresented, covering classifiers
/// are inserted for the missing actions, the population is trimmed back to N and
/// [M] is rebuilt, until every action appears.
MatchSet generate_match_set(Population& pop, const BitString& input, Time t, int num_actions,
                            const Parameters& params, Rng& rng);

/// Match set without covering; used on test problems.
MatchSet collect_matching(const Population& pop, const BitString& input);

/// values[a] = sum(p * F) / sum(F) over members advocating a (F is macro fitness).
PredictionArray compute_prediction_array(const Population& pop, const MatchSet& match,
                                         int num_actions);

int select_action(const PredictionArray& pa, SelectionMode mode, double p_explore, Rng& rng);

/// Members of [M] with `action`, stamped with time t.
ActionSet generate_action_set(Population& pop, const MatchSet& match, int action, Time t,
                              const Parameters& params);

/// Reward for single-step or terminal steps, otherwise r + gamma * max(next).
double compute_target(double reward, const PredictionArray* next, double gamma);

/// Reinforces every member of [A] toward `target`: experience, error, prediction,
/// action-set size (plain running average for the first 1/beta updates), then
/// accuracy-based fitness.
void update_action_set(Population& pop, const ActionSet& as, double target,
                       const Parameters& params);

/// Steady-state niche GA on [A] when the numerosity-weighted mean ts is older
/// than theta_ga. Offspring are inserted (or subsumed by a parent) and the
/// population is trimmed back to N.
void run_ga(Population& pop, const ActionSet& as, const BitString& input, Time t,
            int num_actions, const Parameters& params, Rng& rng);

/// Roulette deletion on vote asSize * num (scaled up for experienced low-fitness
/// classifiers) until the total numerosity is at most N.
void delete_from_population(Population& pop, const Parameters& params, Rng& rng);

/// Deletion vote of one classifier given the population's mean micro fitness.
double deletion_vote(const Classifier& cl, double mean_fitness, const Parameters& params);

/// exp > theta_sub and epsilon < epsilon0.
bool could_subsume(const Classifier& cl, const Parameters& params);
bool subsumes(const Classifier& general, const Classifier& specific, const Parameters& params);

/// The most general accurate, experienced member of [A] absorbs every member it
/// is more general than. Absorbed members leave [A] and the population.
void action_set_subsumption(Population& pop, ActionSet& as, const Parameters& params);

/// Two-point crossover of two equal-length conditions; positions [from, to) are swapped.
void two_point_crossover(TernaryCondition& a, TernaryCondition& b, std::size_t from,
                         std::size_t to);

/// Niche mutation: each position flips between # and the input bit with probability mu.
void niche_mutation(TernaryCondition& cond, const BitString& input, double mu, Rng& rng);

/// XCS learner: owns a population, its clock and its random stream, and runs
/// the explore/exploit step protocol on top of the free functions above.
class Xcs {
public:
    Xcs(Parameters params, std::size_t input_bits, int num_actions, std::uint64_t seed);

    struct Step {
        int action = 0;
        PredictionArray prediction;
        ActionSet action_set;
    };

    /// Advances the clock, forms [M] (with covering), the prediction array, an
    /// action, and the stamped [A].
    Step explore_step(const BitString& input, SelectionMode mode);

    /// Greedy choice on the current population. No covering, no stamping, no
    /// updates. Picks uniformly at random when nothing matches.
    int exploit_step(const BitString& input, PredictionArray* prediction = nullptr);

    /// Update (plus action-set subsumption when enabled).
    void reinforce(ActionSet& as, double target);
    /// GA on [A] using the input that formed it.
    void discover(const ActionSet& as, const BitString& input);

    /// Turns crossover and mutation off (condensation) or restores them.
    void set_condensation(bool on);
    bool condensing() const noexcept { return condensing_; }

    Time time() const noexcept { return time_; }
    const Parameters& parameters() const noexcept { return params_; }
    Population& population() noexcept { return pop_; }
    const Population& population() const noexcept { return pop_; }
    std::size_t input_bits() const noexcept { return input_bits_; }
    int num_actions() const noexcept { return num_actions_; }
    Rng& rng() noexcept { return rng_; }

private:
    Parameters params_;
    Parameters learning_params_;
    std::size_t input_bits_;
    int num_actions_;
    Population pop_;
    Rng rng_;
    Time time_ = 0;
    bool condensing_ = false;
};

}  // namespace xcsniche

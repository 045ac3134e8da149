#include "xcsniche/engine.hpp"

#include <algorithm>
#include <cmath>

#include "xcsniche/error.hpp"
#include "xcsniche/niche.hpp"

namespace xcsniche {

// ---------------------------------------------------------------------------
// Prediction array

bool PredictionArray::any() const noexcept {
    return std::any_of(values_.begin(), values_.end(), [](const auto& v) { return v.has_value(); });
}

std::vector<int> PredictionArray::present_actions() const {
    std::vector<int> out;
    for (int a = 0; a < size(); ++a) {
        if ((*this)[a]) out.push_back(a);
    }
    return out;
}

double PredictionArray::max() const {
    std::optional<double> best;
    for (const auto& v : values_) {
        if (v && (!best || *v > *best)) best = v;
    }
    if (!best) throw PreconditionError("prediction array is empty");
    return *best;
}

std::vector<int> PredictionArray::best_actions() const {
    const double m = max();
    std::vector<int> out;
    for (int a = 0; a < size(); ++a) {
        if ((*this)[a] && *(*this)[a] == m) out.push_back(a);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Performance component

MatchSet collect_matching(const Population& pop, const BitString& input) {
    MatchSet m;
    for (const auto& cl : pop) {
        if (condition_matches(cl.condition, input)) m.members.push_back(cl.id);
    }
    return m;
}

MatchSet generate_match_set(Population& pop, const BitString& input, Time t, int num_actions,
                            const Parameters& params, Rng& rng) {
    if (params.N < static_cast<std::size_t>(num_actions)) {
        throw PreconditionError("N must be at least the number of actions");
    }
    std::vector<char> present(static_cast<std::size_t>(num_actions));
    while (true) {
        MatchSet m;
        std::fill(present.begin(), present.end(), 0);
        for (const auto& cl : pop) {
            if (condition_matches(cl.condition, input)) {
                m.members.push_back(cl.id);
                present[static_cast<std::size_t>(cl.action)] = 1;
            }
        }
        if (std::all_of(present.begin(), present.end(), [](char c) { return c != 0; })) return m;

        for (int a = 0; a < num_actions; ++a) {
            if (!present[static_cast<std::size_t>(a)]) {
                pop.insert_unique(create_covering_classifier(input, a, t, params, rng));
            }
        }
        delete_from_population(pop, params, rng);
    }
}

PredictionArray compute_prediction_array(const Population& pop, const MatchSet& match,
                                         int num_actions) {
    std::vector<double> weighted(static_cast<std::size_t>(num_actions), 0.0);
    std::vector<double> fitness(static_cast<std::size_t>(num_actions), 0.0);
    std::vector<double> plain(static_cast<std::size_t>(num_actions), 0.0);
    std::vector<int> count(static_cast<std::size_t>(num_actions), 0);
    for (ClassifierId id : match.members) {
        const auto slot = pop.find(id);
        if (!slot) continue;
        const Classifier& cl = pop[*slot];
        const auto a = static_cast<std::size_t>(cl.action);
        weighted[a] += cl.p * cl.F;
        fitness[a] += cl.F;
        plain[a] += cl.p;
        ++count[a];
    }
    PredictionArray pa(num_actions);
    for (int a = 0; a < num_actions; ++a) {
        const auto i = static_cast<std::size_t>(a);
        if (count[i] == 0) continue;
        // fitness can underflow to zero in degenerate runs; fall back to the plain mean
        pa.set(a, fitness[i] > 0.0 ? weighted[i] / fitness[i] : plain[i] / count[i]);
    }
    return pa;
}

int select_action(const PredictionArray& pa, SelectionMode mode, double p_explore, Rng& rng) {
    const auto present = pa.present_actions();
    if (present.empty()) throw PreconditionError("cannot select an action from an empty prediction array");
    if (mode == SelectionMode::Biased) {
        mode = rng.chance(p_explore) ? SelectionMode::Explore : SelectionMode::Exploit;
    }
    if (mode == SelectionMode::Explore) return present[rng.below(present.size())];
    const auto best = pa.best_actions();
    return best.size() == 1 ? best.front() : best[rng.below(best.size())];
}

ActionSet generate_action_set(Population& pop, const MatchSet& match, int action, Time t,
                              const Parameters& params) {
    ActionSet as;
    as.action = action;
    for (ClassifierId id : match.members) {
        const auto slot = pop.find(id);
        if (slot && pop[*slot].action == action) as.members.push_back(id);
    }
    if (as.members.empty()) {
        throw PreconditionError("no match-set classifier advocates action " + std::to_string(action));
    }
    stamp_action_set(pop, as.members, t, params.L_max());
    return as;
}

double compute_target(double reward, const PredictionArray* next, double gamma) {
    if (next == nullptr || !next->any()) return reward;
    return reward + gamma * next->max();
}

// ---------------------------------------------------------------------------
// Reinforcement component

namespace {

std::vector<std::size_t> resolve(const Population& pop, const std::vector<ClassifierId>& ids) {
    std::vector<std::size_t> slots;
    slots.reserve(ids.size());
    for (ClassifierId id : ids) {
        if (auto slot = pop.find(id)) slots.push_back(*slot);
    }
    return slots;
}

void running_update(double& value, double target, double rate, double exp) {
    value += (exp < 1.0 / rate) ? (target - value) / exp : rate * (target - value);
}

double accuracy(const Classifier& cl, const Parameters& params) {
    if (cl.epsilon < params.epsilon0) return 1.0;
    return params.alpha * std::pow(cl.epsilon / params.epsilon0, -params.nu);
}

}  // namespace

void update_action_set(Population& pop, const ActionSet& as, double target,
                       const Parameters& params) {
    const auto slots = resolve(pop, as.members);
    if (slots.empty()) return;

    double set_numerosity = 0.0;
    double set_fitness = 0.0;
    for (std::size_t s : slots) {
        set_numerosity += pop[s].num;
        set_fitness += pop[s].F;
    }

    for (std::size_t s : slots) {
        Classifier& cl = pop[s];
        cl.exp += 1;
        const double exp = static_cast<double>(cl.exp);
        running_update(cl.epsilon, std::abs(target - cl.p), params.beta, exp);
        if (params.useGradient && set_fitness > 0.0) {
            const double scale = cl.F / set_fitness;
            const double rate = (exp < 1.0 / params.beta) ? 1.0 / exp : params.beta;
            cl.p += rate * scale * (target - cl.p);
        } else {
            running_update(cl.p, target, params.beta, exp);
        }
        running_update(cl.asSize, set_numerosity, params.beta, exp);
    }

    double accuracy_sum = 0.0;
    std::vector<double> kappa(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        kappa[i] = accuracy(pop[slots[i]], params) * pop[slots[i]].num;
        accuracy_sum += kappa[i];
    }
    if (!(accuracy_sum > 0.0)) return;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        Classifier& cl = pop[slots[i]];
        cl.F += params.beta * (kappa[i] / accuracy_sum - cl.F);
    }
}

// ---------------------------------------------------------------------------
// Discovery component

bool could_subsume(const Classifier& cl, const Parameters& params) {
    return static_cast<double>(cl.exp) > params.theta_sub && cl.epsilon < params.epsilon0;
}

bool subsumes(const Classifier& general, const Classifier& specific, const Parameters& params) {
    return general.action == specific.action && could_subsume(general, params) &&
           is_more_general(general.condition, specific.condition);
}

double deletion_vote(const Classifier& cl, double mean_fitness, const Parameters& params) {
    double vote = cl.asSize * cl.num;
    const double micro_fitness = cl.F / cl.num;
    if (static_cast<double>(cl.exp) > params.theta_del && micro_fitness < params.delta * mean_fitness) {
        vote *= mean_fitness / micro_fitness;
    }
    return vote;
}

void delete_from_population(Population& pop, const Parameters& params, Rng& rng) {
    std::vector<double> votes;
    while (pop.numerosity() > params.N) {
        double fitness_sum = 0.0;
        for (const auto& cl : pop) fitness_sum += cl.F;
        const double mean_fitness = fitness_sum / static_cast<double>(pop.numerosity());

        votes.resize(pop.size());
        double vote_sum = 0.0;
        for (std::size_t i = 0; i < pop.size(); ++i) {
            votes[i] = deletion_vote(pop[i], mean_fitness, params);
            vote_sum += votes[i];
        }
        const double point = rng.uniform() * vote_sum;
        double acc = 0.0;
        std::size_t victim = pop.size() - 1;
        for (std::size_t i = 0; i < pop.size(); ++i) {
            acc += votes[i];
            if (acc > point) {
                victim = i;
                break;
            }
        }
        pop.add_numerosity(victim, -1);
    }
}

void action_set_subsumption(Population& pop, ActionSet& as, const Parameters& params) {
    // ties on generality go to the earliest member
    std::optional<ClassifierId> subsumer;
    std::size_t best_hashes = 0;
    for (std::size_t s : resolve(pop, as.members)) {
        const Classifier& cl = pop[s];
        if (!could_subsume(cl, params)) continue;
        const std::size_t hashes = cl.condition.dont_care_count();
        if (!subsumer || hashes > best_hashes) {
            subsumer = cl.id;
            best_hashes = hashes;
        }
    }
    if (!subsumer) return;

    std::vector<ClassifierId> kept;
    for (ClassifierId id : as.members) {
        const auto slot = pop.find(id);
        if (!slot) continue;
        const auto general_slot = *pop.find(*subsumer);
        if (id != *subsumer &&
            is_more_general(pop[general_slot].condition, pop[*slot].condition)) {
            const int absorbed = pop[*slot].num;
            pop.remove(*slot);
            pop.add_numerosity(*pop.find(*subsumer), absorbed);
        } else {
            kept.push_back(id);
        }
    }
    as.members = std::move(kept);
}

void two_point_crossover(TernaryCondition& a, TernaryCondition& b, std::size_t from,
                         std::size_t to) {
    if (a.size() != b.size()) throw PreconditionError("crossover on conditions of different length");
    for (std::size_t i = from; i < to && i < a.size(); ++i) {
        const Symbol sa = a.at(i);
        a.set(i, b.at(i));
        b.set(i, sa);
    }
}

void niche_mutation(TernaryCondition& cond, const BitString& input, double mu, Rng& rng) {
    for (std::size_t i = 0; i < cond.size(); ++i) {
        if (!rng.chance(mu)) continue;
        if (cond.at(i) == Symbol::DontCare) {
            cond.set(i, input[i] ? Symbol::One : Symbol::Zero);
        } else {
            cond.set(i, Symbol::DontCare);
        }
    }
}

namespace {

std::size_t roulette_by_fitness(const Population& pop, const std::vector<std::size_t>& slots,
                                Rng& rng) {
    double total = 0.0;
    for (std::size_t s : slots) total += pop[s].F;
    const double point = rng.uniform() * total;
    double acc = 0.0;
    for (std::size_t s : slots) {
        acc += pop[s].F;
        if (acc > point) return s;
    }
    return slots.back();
}

Classifier make_offspring(const Classifier& parent, Time t) {
    Classifier child;
    child.condition = parent.condition;
    child.action = parent.action;
    child.p = parent.p;
    child.epsilon = parent.epsilon;
    child.F = parent.F / parent.num;
    child.exp = 0;
    child.ts = t;
    child.asSize = parent.asSize;
    child.num = 1;
    child.ats = 0;
    return child;
}

}  // namespace

void run_ga(Population& pop, const ActionSet& as, const BitString& input, Time t,
            int num_actions, const Parameters& params, Rng& rng) {
    const auto slots = resolve(pop, as.members);
    if (slots.empty()) return;

    double ts_sum = 0.0;
    double num_sum = 0.0;
    for (std::size_t s : slots) {
        ts_sum += static_cast<double>(pop[s].ts) * pop[s].num;
        num_sum += pop[s].num;
    }
    if (static_cast<double>(t) - ts_sum / num_sum <= params.theta_ga) return;
    for (std::size_t s : slots) pop[s].ts = t;

    // copies survive the deletions triggered by inserting the first child
    const Classifier parent1 = pop[roulette_by_fitness(pop, slots, rng)];
    const Classifier parent2 = pop[roulette_by_fitness(pop, slots, rng)];
    Classifier child1 = make_offspring(parent1, t);
    Classifier child2 = make_offspring(parent2, t);

    if (rng.chance(params.chi)) {
        std::size_t from = rng.below(input.size() + 1);
        std::size_t to = rng.below(input.size() + 1);
        if (from > to) std::swap(from, to);
        two_point_crossover(child1.condition, child2.condition, from, to);
    }
    const double p = (child1.p + child2.p) / 2.0;
    const double eps = (child1.epsilon + child2.epsilon) / 2.0;
    const double f = (child1.F + child2.F) / 2.0;
    for (Classifier* c : {&child1, &child2}) {
        c->p = p;
        c->epsilon = eps;
        c->F = f;
    }

    for (Classifier* c : {&child1, &child2}) {
        c->F *= 0.1;
        niche_mutation(c->condition, input, params.mu, rng);
        if (num_actions > 1 && rng.chance(params.mu)) {
            const int other = static_cast<int>(rng.below(static_cast<std::size_t>(num_actions - 1)));
            c->action = other >= c->action ? other + 1 : other;
        }
    }

    for (Classifier* c : {&child1, &child2}) {
        bool absorbed = false;
        if (params.doGASubsumption) {
            for (const Classifier* parent : {&parent1, &parent2}) {
                if (!subsumes(*parent, *c, params)) continue;
                if (auto slot = pop.find(parent->id)) {
                    pop.add_numerosity(*slot, 1);
                    absorbed = true;
                    break;
                }
            }
        }
        if (!absorbed) pop.insert(std::move(*c));
        delete_from_population(pop, params, rng);
    }
}

// ---------------------------------------------------------------------------
// Xcs

Xcs::Xcs(Parameters params, std::size_t input_bits, int num_actions, std::uint64_t seed)
    : params_(params), learning_params_(params), input_bits_(input_bits),
      num_actions_(num_actions), rng_(seed) {
    params_.validate();
    if (num_actions < 1) throw PreconditionError("need at least one action");
    if (input_bits > kMaxInputBits) throw PreconditionError("input too long");
}

Xcs::Step Xcs::explore_step(const BitString& input, SelectionMode mode) {
    if (input.size() != input_bits_) throw PreconditionError("input length mismatch");
    ++time_;
    const MatchSet match = generate_match_set(pop_, input, time_, num_actions_, params_, rng_);
    Step step{0, compute_prediction_array(pop_, match, num_actions_), {}};
    step.action = select_action(step.prediction, mode, params_.p_explore, rng_);
    step.action_set = generate_action_set(pop_, match, step.action, time_, params_);
    return step;
}

int Xcs::exploit_step(const BitString& input, PredictionArray* prediction) {
    if (input.size() != input_bits_) throw PreconditionError("input length mismatch");
    const MatchSet match = collect_matching(pop_, input);
    const PredictionArray pa = compute_prediction_array(pop_, match, num_actions_);
    if (prediction) *prediction = pa;
    if (!pa.any()) return static_cast<int>(rng_.below(static_cast<std::size_t>(num_actions_)));
    const int action = select_action(pa, SelectionMode::Exploit, 0.0, rng_);
    return action;
}

void Xcs::reinforce(ActionSet& as, double target) {
    update_action_set(pop_, as, target, params_);
    if (params_.doASSubsumption) action_set_subsumption(pop_, as, params_);
}

void Xcs::discover(const ActionSet& as, const BitString& input) {
    run_ga(pop_, as, input, time_, num_actions_, params_, rng_);
}

void Xcs::set_condensation(bool on) {
    condensing_ = on;
    params_.chi = on ? 0.0 : learning_params_.chi;
    params_.mu = on ? 0.0 : learning_params_.mu;
}

}  // namespace xcsniche
